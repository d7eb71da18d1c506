"""Generator actions on the three polynomial models.

Four families are realized, all linear over Q(q, u, v):

* ``verma_act``           lowest-weight module on C[z] (weight ``lam`` by
  default; any affine weight may be passed),
* ``tensor_act``          coproduct action on the quantum plane,
* ``tx_act``              the same module transported to C[t,tX],
* ``contragredient_act``  dual module on C[z] (a highest-weight module of
  weight -lam), matching the Fischer adjoint of the antipode action.

The Casimir element (q-q^-1)^2 FE + qK + q^-1 K^-1 is provided per model,
and operators restrict to explicit truncations as OpMatrix values with
adjoints taken for the q-Fischer pairings.
"""

from __future__ import annotations

from enum import Enum

from .errors import TruncationLeak
from .linalg import OpMatrix
from .plane import OnePoly, QPlanePoly, TXPoly, UniPoly, qp_pow_linear, qp_mul
from .qpolys import jacobi_diff_op
from .scalars import (
    LAM,
    LAMP,
    ONE,
    Q_MINUS_QINV,
    Scalar,
    WeightExpr,
    qfact,
    qmono,
    qnum,
    qpow,
)


class Gen(Enum):
    K = "K"
    KINV = "Kinv"
    E = "E"
    F = "F"


def verma_act(g: Gen, P: OnePoly, weight: WeightExpr = LAM) -> OnePoly:
    """K z^n = q^(w+2n) z^n,  E z^n = z^(n+1),  F z^n = -[w+n-1][n] z^(n-1)."""
    out: dict = {}
    for n, c in P.terms.items():
        if g is Gen.K:
            out[n] = c * qpow(weight + 2 * n)
        elif g is Gen.KINV:
            out[n] = c * qpow(-(weight + 2 * n))
        elif g is Gen.E:
            out[n + 1] = c
        elif n > 0:
            _acc(out, n - 1, -c * qnum(weight + (n - 1)) * qnum(n))
    return UniPoly(out, P.var)


def tensor_act(g: Gen, P: QPlanePoly) -> QPlanePoly:
    """Coproduct action on normal-ordered x^k y^l:

    K:  q^(lam+lam'+2k+2l) x^k y^l
    E:  x^(k+1) y^l + q^(lam+2k) x^k y^(l+1)
    F:  -q^(-lam'-2l) [lam+k-1][k] x^(k-1) y^l  -  [lam'+l-1][l] x^k y^(l-1)
    """
    out: dict = {}
    for (k, l), c in P.terms.items():
        if g is Gen.K:
            _acc(out, (k, l), c * qpow(LAM + LAMP + (2 * k + 2 * l)))
        elif g is Gen.KINV:
            _acc(out, (k, l), c * qpow(-(LAM + LAMP + (2 * k + 2 * l))))
        elif g is Gen.E:
            _acc(out, (k + 1, l), c)
            _acc(out, (k, l + 1), c * qpow(LAM + 2 * k))
        else:
            if k > 0:
                _acc(out, (k - 1, l), -c * qpow(-(LAMP + 2 * l)) * qnum(LAM + (k - 1)) * qnum(k))
            if l > 0:
                _acc(out, (k, l - 1), -c * qnum(LAMP + (l - 1)) * qnum(l))
    return QPlanePoly(out)


def tensor_left_kinv(P: QPlanePoly) -> QPlanePoly:
    """K^-1 acting on the first tensor factor only: x^k y^l -> q^(-lam-2k) x^k y^l."""
    return QPlanePoly({(k, l): c * qpow(-(LAM + 2 * k)) for (k, l), c in P.terms.items()})


def tx_act(g: Gen, P: TXPoly) -> TXPoly:
    """Transported action on C[t,tX].

    K and E act on t alone (weight lam+lam'); F is the t-difference quotient
    plus (1/t) times the q-Jacobi difference operator in X.  The two parts
    cancel exactly on the boundary j = i, so the result stays in C[t,tX].
    """
    if g is Gen.K:
        return P.dilate_t(qmono(2)).scale(qpow(LAM + LAMP))
    if g is Gen.KINV:
        return P.dilate_t(qmono(-2)).scale(qpow(-(LAM + LAMP)))
    if g is Gen.E:
        return P.shift_t(1)
    out: dict = {}
    for i, xpoly in P.t_slices().items():
        if i > 0:
            c = -qnum(LAM + LAMP + (i - 1)) * qnum(i)
            for j, w in xpoly.terms.items():
                _acc(out, (i - 1, j), w * c)
        theta = jacobi_diff_op(xpoly)
        for j, w in theta.terms.items():
            _acc(out, (i - 1, j), w)
    return TXPoly(out)


def casimir_verma(P: OnePoly, weight: WeightExpr = LAM) -> OnePoly:
    """(q-q^-1)^2 FE + qK + q^-1 K^-1 on C[z]; acts as q^(w-1)+q^(1-w)."""
    fe = verma_act(Gen.F, verma_act(Gen.E, P, weight), weight)
    return (
        fe.scale(Q_MINUS_QINV * Q_MINUS_QINV)
        + verma_act(Gen.K, P, weight).scale(qmono(1))
        + verma_act(Gen.KINV, P, weight).scale(qmono(-1))
    )


def casimir_plane(P: QPlanePoly) -> QPlanePoly:
    """The coproduct Casimir on the quantum plane, via the defining element."""
    fe = tensor_act(Gen.F, tensor_act(Gen.E, P))
    return (
        fe.scale(Q_MINUS_QINV * Q_MINUS_QINV)
        + tensor_act(Gen.K, P).scale(qmono(1))
        + tensor_act(Gen.KINV, P).scale(qmono(-1))
    )


def casimir_tx(P: TXPoly) -> TXPoly:
    """Closed form in the (t, X) picture:

    Delta(C) = (q-q^-1)^2 Theta_X + q^(lam+lam'-1) + q^(1-lam-lam').
    """
    const = qpow(LAM + LAMP - 1) + qpow(-(LAM + LAMP) + 1)
    out = P.scale(const)
    qd2 = Q_MINUS_QINV * Q_MINUS_QINV
    for i, xpoly in P.t_slices().items():
        theta = jacobi_diff_op(xpoly)
        add = TXPoly({(i, j): w * qd2 for j, w in theta.terms.items()})
        out = out + add
    return out


def contragredient_act(g: Gen, P: OnePoly, weight: WeightExpr = LAM) -> OnePoly:
    """Dual action on C[z] for the q-Fischer identification:

    K z^n = q^(-w-2n) z^n,  E z^n = -[n] q^(-w-n-1) z^(n-1),
    F z^n = [w+n] q^(w+n+2) z^(n+1).
    """
    out: dict = {}
    for n, c in P.terms.items():
        if g is Gen.K:
            out[n] = c * qpow(-(weight + 2 * n))
        elif g is Gen.KINV:
            out[n] = c * qpow(weight + 2 * n)
        elif g is Gen.E:
            if n > 0:
                _acc(out, n - 1, -c * qnum(n) * qpow(-(weight + (n + 1))))
        else:
            _acc(out, n + 1, c * qnum(weight + n) * qpow(weight + (n + 2)))
    return UniPoly(out, P.var)


def antipode_act(act, g: Gen, P, *args):
    """Action of the antipode image S(g), composed from generator actions:

    S(K) = K^-1,  S(E) = -K^-1 E,  S(F) = -F K.
    """
    if g is Gen.K:
        return act(Gen.KINV, P, *args)
    if g is Gen.KINV:
        return act(Gen.K, P, *args)
    if g is Gen.E:
        return -act(Gen.KINV, act(Gen.E, P, *args), *args)
    return -act(Gen.F, act(Gen.K, P, *args), *args)


def _acc(d: dict, key, c: Scalar) -> None:
    s = d.get(key)
    if s is None:
        d[key] = c
    else:
        d[key] = s + c


# -- q-Fischer pairings ----------------------------------------------------


def fischer_norm(n: int) -> Scalar:
    """<z^n, z^n> = q^(n(n-1)/2) [n]!."""
    return qmono(n * (n - 1) // 2) * qfact(n)


def fischer_inner(P: OnePoly, Q: OnePoly) -> Scalar:
    """Bilinear pairing with <z^n, z^m> = q^(n(n-1)/2) [n]! delta_(n,m)."""
    total = Scalar(0)
    for n, c in P.terms.items():
        d = Q.terms.get(n)
        if d is not None:
            total = total + c * d * fischer_norm(n)
    return total


def fischer_inner_tensor(P: QPlanePoly, Q: QPlanePoly) -> Scalar:
    """Product pairing <x^a y^b, x^c y^d> = <x^a,x^c> <y^b,y^d>."""
    total = Scalar(0)
    for (a, b), c in P.terms.items():
        d = Q.terms.get((a, b))
        if d is not None:
            total = total + c * d * fischer_norm(a) * fischer_norm(b)
    return total


# -- truncations and matrices ----------------------------------------------


def zbasis(D: int) -> tuple:
    return tuple(range(D + 1))


def plane_basis(D: int) -> tuple:
    return tuple((k, l) for d in range(D + 1) for k in range(d, -1, -1) for l in [d - k])


def weight_basis(N: int) -> tuple:
    """Monomials x^l y^(N-l) spanning the weight-N piece of the plane."""
    return tuple((l, N - l) for l in range(N + 1))


def tx_basis(D: int) -> tuple:
    return tuple((i, j) for i in range(D + 1) for j in range(i + 1))


def one_op_matrix(fn, cols, rows) -> OpMatrix:
    """Matrix of an operator on C[z] over monomial degree labels."""
    images = [dict(fn(UniPoly.monomial(n)).terms) for n in cols]
    return OpMatrix.from_images(cols, rows, images)


def plane_op_matrix(fn, cols, rows) -> OpMatrix:
    images = [dict(fn(QPlanePoly.monomial(k, l)).terms) for (k, l) in cols]
    return OpMatrix.from_images(cols, rows, images)


def tx_op_matrix(fn, cols, rows) -> OpMatrix:
    images = [dict(fn(TXPoly.monomial(i, j)).terms) for (i, j) in cols]
    return OpMatrix.from_images(cols, rows, images)


def fischer_gram(labels) -> dict:
    return {n: fischer_norm(n) for n in labels}


def fischer_gram_plane(labels) -> dict:
    return {(a, b): fischer_norm(a) * fischer_norm(b) for (a, b) in labels}


_GENERIC_SHIFT = {Gen.K: 0, Gen.KINV: 0, Gen.E: 1, Gen.F: -1}


def truncate_operator(action: str, D: int, g: Gen = None, weight: WeightExpr = LAM,
                      rows_degree: int = None) -> OpMatrix:
    """Matrix of a named action on a degree truncation.

    ``action`` is one of "verma", "contragredient", "tensor", "tx" (these
    need ``g``), or "mult-z" / "dq2" on C[z].  The codomain bound defaults
    to the smallest degree that holds the image; pass ``rows_degree`` to pin
    it (a leak then raises TruncationLeak).
    """
    if action in ("verma", "contragredient", "tensor", "tx"):
        if g is None:
            raise ValueError("generator actions need g")
        shift = _GENERIC_SHIFT[g]
        if action == "contragredient":
            shift = -shift
    elif action == "mult-z":
        shift = 1
    elif action == "dq2":
        shift = -1
    else:
        raise ValueError(f"unknown action: {action!r}")
    rd = rows_degree if rows_degree is not None else max(D + shift, 0)

    if action == "verma":
        return one_op_matrix(lambda P: verma_act(g, P, weight), zbasis(D), zbasis(rd))
    if action == "contragredient":
        return one_op_matrix(lambda P: contragredient_act(g, P, weight), zbasis(D), zbasis(rd))
    if action == "tensor":
        return plane_op_matrix(lambda P: tensor_act(g, P), plane_basis(D), plane_basis(rd))
    if action == "tx":
        return tx_op_matrix(lambda P: tx_act(g, P), tx_basis(D), tx_basis(rd))
    if action == "mult-z":
        from .plane import UniPoly as _U

        return one_op_matrix(lambda P: _U({n + 1: c for n, c in P.terms.items()}), zbasis(D), zbasis(rd))
    from .qpolys import dq_deriv

    return one_op_matrix(lambda P: dq_deriv(P, "q2"), zbasis(D), zbasis(rd))


def ev_map(P: OnePoly) -> QPlanePoly:
    """Substitution z -> (x + q^lam y), the degree-preserving embedding of
    C[z] into the plane whose adjoint evaluates the second slot at q^lam z."""
    out = QPlanePoly({})
    for n, c in P.terms.items():
        out = out + qp_pow_linear(qpow(LAM), n).scale(c)
    return out


def right_mult_x(P: QPlanePoly) -> QPlanePoly:
    """Right multiplication by x: x^n y^m -> q^(2m) x^(n+1) y^m."""
    return QPlanePoly({(n + 1, m): c * qmono(2 * m) for (n, m), c in P.terms.items()})


def right_mult_y(P: QPlanePoly) -> QPlanePoly:
    """Right multiplication by y: x^n y^m -> x^n y^(m+1)."""
    return QPlanePoly({(n, m + 1): c for (n, m), c in P.terms.items()})


def right_mult(P: QPlanePoly, M: QPlanePoly) -> QPlanePoly:
    """Right multiplication r_M in the quantum plane."""
    return qp_mul(P, M)
