"""Lowest-weight vectors, holographic embeddings, Clebsch-Gordan tables,
and the q-Rankin-Cohen brackets with their adjoint characterization.

For each level n the plane carries a unique (up to scale) vector killed by
the lowering generator; raising it with powers of (x + q^lam y) embeds a
copy of the weight lam+lam'+2n module.  The q-Rankin-Cohen bracket is the
q-Fischer adjoint of that embedding and is given by an explicit bilinear
q-differential formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .actions import (
    Gen,
    antipode_act,
    contragredient_act,
    fischer_gram,
    fischer_gram_plane,
    fischer_inner,
    fischer_inner_tensor,
    one_op_matrix,
    plane_basis,
    plane_op_matrix,
    tensor_act,
    weight_basis,
    zbasis,
)
from .linalg import OpMatrix, kernel_dim, rank
from .plane import OnePoly, QPlanePoly, TXPoly, UniPoly, qp_mul, qp_pow_linear, qshift_factor
from .qpolys import dq_deriv, little_qjacobi, qhahn
from .reports import Report, failure
from .scalars import LAM, LAMP, ONE, Scalar, WeightExpr, ZERO, qbinom, qmono, qpoch, qpow


@dataclass(frozen=True)
class LowestWeightVector:
    """A plane vector killed by Delta(F) with Delta(K) eigenvalue
    q^(lam+lam'+2n); both properties are re-verified at construction."""

    n: int
    poly: QPlanePoly


def _bracket_coeff(n: int, k: int) -> Scalar:
    """C(n,k) (-1)^k q^(k(lam'+2n-k-1)) [lam+k]_(n-k) [lam'+n-k]_k.

    The Pochhammer ratio [lam]_n [lam']_n / ([lam]_k [lam']_(n-k)) is taken
    in product form, which keeps the coefficient denominator-free.
    """
    sign = ONE if k % 2 == 0 else -ONE
    return (
        qbinom(n, k)
        * sign
        * qpow(k * (LAMP + (2 * n - k - 1)))
        * qpoch(LAM + k, n - k)
        * qpoch(LAMP + (n - k), k)
    )


@lru_cache(maxsize=None)
def lowest_weight_vector(n: int) -> LowestWeightVector:
    """sum_k C(n,k) (-1)^k q^(k(lam'+2n-k-1)) [lam]_n [lam']_n
    / ([lam]_k [lam']_(n-k)) x^k y^(n-k)."""
    if n < 0:
        raise ValueError("level must be nonnegative")
    poly = QPlanePoly({(k, n - k): _bracket_coeff(n, k) for k in range(n + 1)})
    if not tensor_act(Gen.F, poly).is_zero():
        raise ArithmeticError(f"level-{n} vector is not killed by F")
    if tensor_act(Gen.K, poly) != poly.scale(qpow(LAM + LAMP + 2 * n)):
        raise ArithmeticError(f"level-{n} vector is not a K eigenvector")
    return LowestWeightVector(n, poly)


def holographic(n: int, k: int, picture: str = "plane"):
    """Image of z^k under the level-n embedding of C[z].

    "plane":  (x + q^lam y)^k * P_n, normal-ordered;
    "tx":     t^(k+n) j_n(X) with q-Jacobi parameters (lam-1, lam'-1).
    """
    if n < 0 or k < 0:
        raise ValueError("need n, k >= 0")
    if picture == "plane":
        return qp_mul(qp_pow_linear(qpow(LAM), k), lowest_weight_vector(n).poly)
    if picture == "tx":
        return TXPoly.from_xpoly(k + n, little_qjacobi(n))
    raise ValueError(f"unknown picture: {picture!r}")


def _default_eq(a, b) -> bool:
    return a == b


def cg_expand_check(k: int, N: int, eq=None, poison: bool = False, mode: str = "symbolic") -> Report:
    """Clebsch-Gordan expansion of the level-k vectors over monomials.

    Plane picture:
        (x+q^lam y)^(N-k) P_k
          = [lam]_k q^(-lam k) sum_l C(N,l) q^((lam+l)(N-l)) Q_k(q^(-2l)) x^l y^(N-l)
    X picture:
        j_k(X) = sum_l C(N,l) q^(-l(N-l)) Q_k(q^(-2l))
                 prod_{s=0}^{N-l-1}(1 - q^(-2s) X) X^l
    """
    eq = eq or _default_eq
    params = {"k": k, "N": N}
    grid = qhahn(k, N)

    lhs_plane = holographic(k, N - k, picture="plane")
    if poison:
        key = min(lhs_plane.terms)
        bumped = dict(lhs_plane.terms)
        bumped[key] = bumped[key] + ONE
        lhs_plane = QPlanePoly(bumped)
    pref = qpoch(LAM, k) * qpow(-k * LAM)
    rhs_plane = QPlanePoly(
        {
            (l, N - l): pref * qbinom(N, l) * qpow((LAM + l) * (N - l)) * grid.value(l)
            for l in range(N + 1)
        }
    )
    if not eq(lhs_plane, rhs_plane):
        return failure("cg-plane", params, lhs_plane, rhs_plane, mode)

    lhs_x = little_qjacobi(k)
    rhs_x = UniPoly.zero("X")
    for l in range(N + 1):
        c = qbinom(N, l) * qmono(-l * (N - l)) * grid.value(l)
        prod = qshift_factor(N - l)
        rhs_x = rhs_x + UniPoly({d + l: w * c for d, w in prod.terms.items()}, "X")
    if not eq(lhs_x, rhs_x):
        return failure("cg-x", params, lhs_x, rhs_x, mode)
    return Report("cg-expand", params, mode)


def cg_table(N: int) -> OpMatrix:
    """(N+1)x(N+1) table: row k holds the monomial coordinates of
    (x + q^lam y)^(N-k) P_k over x^l y^(N-l), l = 0..N."""
    rows = []
    for k in range(N + 1):
        vec = holographic(k, N - k, picture="plane")
        rows.append([vec.terms.get((l, N - l), ZERO) for l in range(N + 1)])
    return OpMatrix(tuple(range(N + 1)), tuple(range(N + 1)), rows)


def qrc(n: int, f: OnePoly, g: OnePoly) -> OnePoly:
    """The level-n q-Rankin-Cohen bracket:

    sum_k C(n,k) (-1)^k q^(k(lam'+2n-k-1)) [lam]_n [lam']_n
        / ([lam]_k [lam']_(n-k)) * f^(k)(z) g^(n-k)(q^(lam+2k) z)

    with f^(k) the k-th iterated D_(q^2) derivative, and the argument shift
    acting on the degree-m coefficient as u^m q^(2km).
    """
    if n < 0:
        raise ValueError("bracket level must be nonnegative")
    fs = [f]
    gs = [g]
    for _ in range(n):
        fs.append(dq_deriv(fs[-1], "q2"))
        gs.append(dq_deriv(gs[-1], "q2"))
    total = UniPoly.zero(f.var)
    for k in range(n + 1):
        gk = gs[n - k].dilate(qpow(LAM + 2 * k))
        total = total + (fs[k] * gk).scale(_bracket_coeff(n, k))
    return total


def holographic_matrix(n: int, D: int) -> OpMatrix:
    """Matrix of the level-n embedding from degrees <= D into the plane
    truncation of total degree <= D + n."""
    cols = zbasis(D)
    rows = plane_basis(D + n)
    images = [dict(holographic(n, j, picture="plane").terms) for j in cols]
    return OpMatrix.from_images(cols, rows, images)


def qrc_matrix(n: int, cols, rows) -> OpMatrix:
    """Matrix of the level-n bracket from plane monomials to C[z]."""
    images = []
    for (a, b) in cols:
        img = qrc(n, UniPoly.monomial(a), UniPoly.monomial(b))
        images.append(dict(img.terms))
    return OpMatrix.from_images(cols, rows, images)


def qrc_adjoint_oracle(n: int, D: int, eq=None, poison: bool = False, mode: str = "symbolic") -> Report:
    """Check that the bracket matrix is exactly the q-Fischer adjoint of the
    level-n embedding, and the pairing identity

    <Psi(z^j), x^a y^b> = <z^j, qrc(x^a, y^b)>   for all indices in range.
    """
    eq = eq or _default_eq
    params = {"n": n, "D": D}
    cols = zbasis(D)
    rows = plane_basis(D + n)
    M = holographic_matrix(n, D)
    adj = M.adjoint(fischer_gram_plane(rows), fischer_gram(cols))
    Mq = qrc_matrix(n, rows, cols)
    if poison:
        bumped = [r[:] for r in Mq.a]
        bumped[0][0] = bumped[0][0] + ONE
        Mq = OpMatrix(Mq.rows, Mq.cols, bumped)
    if not eq(adj, Mq):
        return failure("qrc-adjoint", params, adj, Mq, mode)
    for j in cols:
        psi_j = holographic(n, j, picture="plane")
        for (a, b) in rows:
            lhs = fischer_inner_tensor(psi_j, QPlanePoly.monomial(a, b))
            rhs = fischer_inner(UniPoly.monomial(j), qrc(n, UniPoly.monomial(a), UniPoly.monomial(b)))
            if not eq(lhs, rhs):
                return failure("qrc-pairing", {**params, "j": j, "a": a, "b": b}, lhs, rhs, mode)
    return Report("qrc-adjoint-oracle", params, mode)


def qrc_intertwining_check(n: int, D: int, eq=None, poison: bool = False, mode: str = "symbolic") -> Report:
    """Verify through matrices that the bracket intertwines the dual actions:

    qrc o (tensor-dual g) = (dual action at weight lam+lam'+2n of g) o qrc

    where the tensor-dual action of g is the Fischer adjoint of the tensor
    action of S(g), and the target carries the contragredient action at the
    shifted weight.
    """
    eq = eq or _default_eq
    params = {"n": n, "D": D}
    mu = LAM + LAMP + 2 * n
    T = D + n
    pl = {d: plane_basis(d) for d in (T - 1, T, T + 1)}
    zb = {d: zbasis(d) for d in (D - 1, D, D + 1)}
    gram_pl = {d: fischer_gram_plane(pl[d]) for d in pl}
    gram_z = {d: fischer_gram(zb[d]) for d in zb}
    mq = {d: qrc_matrix(n, pl[d + n], zb[d]) for d in (D - 1, D, D + 1)}

    shifts = {Gen.K: 0, Gen.E: 1, Gen.F: -1}
    first = True
    for g, s in shifts.items():
        A = plane_op_matrix(lambda P: antipode_act(tensor_act, g, P), pl[T], pl[T + s])
        Astar = A.adjoint(gram_pl[T + s], gram_pl[T])
        lhs = mq[D] @ Astar
        B = one_op_matrix(
            lambda P: contragredient_act(g, P, weight=mu), zb[D + s], zb[D]
        )
        rhs = B @ mq[D + s]
        if poison and first:
            bumped = [r[:] for r in lhs.a]
            bumped[0][0] = bumped[0][0] + ONE
            lhs = OpMatrix(lhs.rows, lhs.cols, bumped)
            first = False
        if not eq(lhs, rhs):
            return failure("qrc-intertwine", {**params, "g": g.value}, lhs, rhs, mode)
    return Report("qrc-intertwine", params, mode)


def lowest_weight_space_dim(n: int, D: int) -> int:
    """Dimension of {v : Delta(F) v = 0, Delta(K) v = q^(lam+lam'+2n) v}
    inside the plane truncation of total degree <= D."""
    ev = qpow(LAM + LAMP + 2 * n)
    eigen = [
        (k, l)
        for (k, l) in plane_basis(D)
        if qpow(LAM + LAMP + (2 * k + 2 * l)) == ev
    ]
    if not eigen:
        return 0
    target = weight_basis(n - 1) if n > 0 else ()
    rows = []
    for (k, l) in eigen:
        img = tensor_act(Gen.F, QPlanePoly.monomial(k, l))
        rows.append([img.terms.get(t, ZERO) for t in target])
    # the kernel of the map sending the i-th eigenbasis vector to rows[i]
    return len(eigen) - rank(rows)


def holographic_basis_check(D: int, eq=None, poison: bool = False, mode: str = "symbolic") -> Report:
    """The vectors (x+q^lam y)^k P_n with n + k <= D are a basis of the
    degree-<= D plane truncation: per weight block N the (N+1) vectors of
    level n = 0..N have full rank."""
    eq = eq or _default_eq
    for N in range(D + 1):
        wb = weight_basis(N)
        rows = []
        for n in range(N + 1):
            vec = holographic(n, N - n, picture="plane")
            rows.append([vec.terms.get(t, ZERO) for t in wb])
        r = rank(rows)
        if poison:
            r += 1
            poison = False
        if not eq(r, N + 1):
            return failure("holographic-basis", {"D": D, "N": N}, r, N + 1, mode)
    return Report("holographic-basis", {"D": D}, mode)
