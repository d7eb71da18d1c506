"""Little q-Jacobi polynomials, their q-difference operator, and the q-Hahn
layer (grid values, difference equation, recurrence support, bispectral
algebra in two realizations).

Parameter convention: the session weights enter through
``alpha = lam - 1`` and ``beta = lam' - 1``; the q-Hahn parameters are the
q-powers a = q^(2 alpha) = u^2 q^-2 and b = q^(2 beta) = v^2 q^-2.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IndexOutOfRange
from .linalg import OpMatrix, solve_square
from .plane import UniPoly, XPoly, _sum_bucket, qshift_factor
from .reports import Report, failure
from .scalars import (
    LAM,
    LAMP,
    ONE,
    Q_MINUS_QINV,
    Scalar,
    WeightExpr,
    ZERO,
    qbinom,
    qfact,
    qmono,
    qnum,
    qpoch,
    qpow,
)

ALPHA = LAM - 1
BETA = LAMP - 1


def dq_deriv(P: UniPoly, variant: str = "q2") -> UniPoly:
    """q-derivative difference quotients.

    variant "q2":    z^n -> q^(n-1) [n] z^(n-1)
    variant "qinv2": z^n -> q^(1-n) [n] z^(n-1)
    variant "q":     z^n -> (1 + q + ... + q^(n-1)) z^(n-1)
    """
    out = {}
    for n, c in P.terms.items():
        if n == 0:
            continue
        if variant == "q2":
            f = qmono(n - 1) * qnum(n)
        elif variant == "qinv2":
            f = qmono(1 - n) * qnum(n)
        elif variant == "q":
            f = sum((qmono(i) for i in range(1, n)), ONE)
        else:
            raise ValueError(f"unknown q-derivative variant: {variant!r}")
        out[n - 1] = c * f
    return UniPoly(out, P.var)


def little_qjacobi(n: int, alpha: WeightExpr = ALPHA, beta: WeightExpr = BETA) -> XPoly:
    """Hypergeometric-sum form:

    j_n(X) = sum_k [-n]_k [n+alpha+beta+1]_k / [alpha+1]_k * q^(k(beta+1)) X^k / [k]!
    """
    terms = {}
    for k in range(n + 1):
        # [-n]_k / [k]! is a polynomial; dividing first keeps the genuine
        # denominator down to [alpha+1]_k
        c = (
            (qpoch(-n, k) / qfact(k))
            * qpoch(alpha + beta + (n + 1), k)
            / qpoch(alpha + 1, k)
            * qpow(k * (beta + 1))
        )
        if not c.is_zero():
            terms[k] = c
    return UniPoly(terms, "X")


def _beta_shift_factor(m: int, beta: WeightExpr) -> UniPoly:
    """prod_{s=1}^{m} (1 - q^(2(beta+s)) X)."""
    out = UniPoly.one("X")
    for s in range(1, m + 1):
        out = out * UniPoly({0: ONE, 1: -qpow(2 * (beta + s))}, var="X")
    return out


def little_qjacobi_alt(
    n: int, form: str = "rodrigues", alpha: WeightExpr = ALPHA, beta: WeightExpr = BETA
) -> XPoly:
    """Finite product expansions equivalent to ``little_qjacobi``.

    form "rodrigues":
        [beta+1]_n sum_k C(n,k) (-1)^k q^(k(alpha+beta+1+k)) / ([alpha+1]_k [beta+1]_(n-k))
            * prod_{s=0}^{n-k-1} (1 - q^(-2s) X) * X^k
    form "remark":
        [beta+1]_n sum_k C(n,k) (-1)^k q^(k(beta-alpha+1-k)) / ([alpha+1]_k [beta+1]_(n-k))
            * prod_{s=1}^{n-k} (1 - q^(2(beta+s)) X) * X^k
    """
    pairs = []
    for k in range(n + 1):
        sign = ONE if k % 2 == 0 else -ONE
        # [beta+1]_n / [beta+1]_(n-k) collapses to the product [beta+1+n-k]_k
        base = (
            qbinom(n, k)
            * sign
            * (qpoch(beta + 1, n) / qpoch(beta + 1, n - k))
            / qpoch(alpha + 1, k)
        )
        if form == "rodrigues":
            c = base * qpow(k * (alpha + beta + (1 + k)))
            prod = qshift_factor(n - k)
        elif form == "remark":
            c = base * qpow(k * (beta - alpha + (1 - k)))
            prod = _beta_shift_factor(n - k, beta)
        else:
            raise ValueError(f"unknown form: {form!r}")
        for d, w in prod.terms.items():
            pairs.append((d + k, w * c))
    return UniPoly(_sum_bucket(pairs), "X")


def jacobi_diff_op_scaled(P: UniPoly, alpha: WeightExpr = ALPHA, beta: WeightExpr = BETA) -> UniPoly:
    """The denominator-free multiple q^(alpha+beta+1) (q-q^-1)^2 Theta of the
    q-difference operator below:

    q^(2 alpha) (q^(2(beta+1)) X - 1) (f(q^2 X)-f(X))/X - (X-1) (f(X)-f(q^-2 X))/X

    Both difference quotients are exactly divisible by X; a remainder would
    mean a transcription bug and raises ArithmeticError.
    """
    d_up = (P.dilate(qmono(2)) - P).divide_by_var()
    d_dn = (P - P.dilate(qmono(-2))).divide_by_var()
    bx = UniPoly({1: qpow(2 * (beta + 1)), 0: -ONE}, var="X")
    xm1 = UniPoly({1: ONE, 0: -ONE}, var="X")
    return (bx * d_up).scale(qpow(2 * alpha)) - (xm1 * d_dn)


def jacobi_diff_op(P: UniPoly, alpha: WeightExpr = ALPHA, beta: WeightExpr = BETA) -> UniPoly:
    """The second-order q-difference operator with the little q-Jacobi
    polynomials as eigenvectors (eigenvalue [alpha+beta+n+1][n] on degree n):

    q^-(alpha+beta+1)/(q-q^-1)^2 * ( q^(2 alpha) (q^(2(beta+1)) X - 1) (f(q^2 X)-f(X))/X
                                     - (X - 1) (f(X)-f(q^-2 X))/X )
    """
    inner = jacobi_diff_op_scaled(P, alpha, beta)
    return inner.scale(qpow(-(alpha + beta + 1)) / (Q_MINUS_QINV * Q_MINUS_QINV))


@dataclass(frozen=True)
class GridFunction:
    """Values of a q-Hahn polynomial on the grid X = q^(-2l), l = 0..N."""

    N: int
    k: int
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.N + 1:
            raise ValueError("grid must have exactly N+1 values")

    def value(self, l: int) -> Scalar:
        return self.values[l]

    def to_json(self):
        return {"N": self.N, "k": self.k, "values": [c.to_json() for c in self.values]}


def qhahn_value(
    k: int, N: int, x: int, alpha: WeightExpr = ALPHA, beta: WeightExpr = BETA
) -> Scalar:
    """The finite q-Hahn sum evaluated at the grid point X = q^(-2x):

    sum_i C(k,i) q^(i(beta+1+N-x)) (-1)^i [k+alpha+beta+1]_i [-x]_i
          / ([alpha+1]_i [-N]_i)

    The sum makes sense for any integer x, which is how the grid is
    extended beyond 0..N for the difference-equation check.
    """
    total = ZERO
    for i in range(k + 1):
        lo = qpoch(-x, i)
        if lo.is_zero():
            break
        sign = ONE if i % 2 == 0 else -ONE
        total = total + (
            qbinom(k, i)
            * qpow(i * (beta + (1 + N - x)))
            * sign
            * qpoch(alpha + beta + (k + 1), i)
            * lo
            / (qpoch(alpha + 1, i) * qpoch(-N, i))
        )
    return total


def qhahn(k: int, N: int, alpha: WeightExpr = ALPHA, beta: WeightExpr = BETA) -> GridFunction:
    if N < 1 or k < 0 or k > N:
        raise IndexOutOfRange(f"need 0 <= k <= N and N >= 1, got k={k}, N={N}")
    return GridFunction(N, k, tuple(qhahn_value(k, N, l, alpha, beta) for l in range(N + 1)))


def qhahn_top_closed_form(
    N: int, l: int, alpha: WeightExpr = ALPHA, beta: WeightExpr = BETA
) -> Scalar:
    """Closed form of the top family member k = N on the grid:

    Q_N(q^(-2l)) = (-1)^l q^(l(alpha+beta+N+1)) [beta+1]_N / ([alpha+1]_l [beta+1]_(N-l))
    """
    sign = ONE if l % 2 == 0 else -ONE
    return (
        sign
        * qpow(l * (alpha + beta + (N + 1)))
        * qpoch(beta + 1, N)
        / (qpoch(alpha + 1, l) * qpoch(beta + 1, N - l))
    )


def _default_eq(a, b) -> bool:
    return a == b


def qhahn_diffop_check(k: int, N: int, eq=None, poison: bool = False, mode: str = "symbolic") -> Report:
    """Verify the three-term q-difference equation on the whole grid:

    B(X) Q(q^-2 X) + M(X) Q(X) + D(X) Q(q^2 X) = (q^-2k + a b q^(2k+2)) Q(X)

    at X = q^(-2l) for l = 0..N, with
    B(X) = (1 - q^-2N /X)(1 - a q^2 /X),
    D(X) = a q^2 (1 - 1/X)(b - q^-2(N+1) /X),
    M(X) = -B(X) - D(X) + 1 + a b q^2.
    """
    eq = eq or _default_eq
    params = {"k": k, "N": N}
    a = qpow(2 * ALPHA)
    b = qpow(2 * BETA)
    ab_q2 = a * b * qmono(2)
    eigen = qmono(-2 * k) + a * b * qmono(2 * k + 2)
    vals = {x: qhahn_value(k, N, x) for x in range(-1, N + 2)}
    if poison:
        vals[0] = vals[0] + ONE
    for l in range(N + 1):
        xinv = qmono(2 * l)
        B = (ONE - qmono(-2 * N) * xinv) * (ONE - a * qmono(2) * xinv)
        D = a * qmono(2) * (ONE - xinv) * (b - qmono(-2 * (N + 1)) * xinv)
        M = -B - D + ONE + ab_q2
        lhs = B * vals[l + 1] + M * vals[l] + D * vals[l - 1]
        rhs = eigen * vals[l]
        if not eq(lhs, rhs):
            return failure("qhahn-diffop", {**params, "l": l}, lhs, rhs, mode)
    return Report("qhahn-diffop", params, mode)


def qhahn_recurrence_entries(N: int, poison: bool = False) -> list:
    """Expand X * Q_k over the basis {Q_j} by an exact linear solve.

    Returns, for k = 0..N-1, the full coefficient vector (length N+1).
    Raises SingularBasis if the grid vectors are linearly dependent.
    """
    grids = [qhahn(k, N).values for k in range(N + 1)]
    if poison:
        grids[0] = (grids[0][0] + ONE,) + grids[0][1:]
    # column j of the system is the grid vector of Q_j
    a = [[grids[j][l] for j in range(N + 1)] for l in range(N + 1)]
    targets = [[qmono(-2 * l) * grids[k][l] for l in range(N + 1)] for k in range(N)]
    return solve_square(a, targets)


def qhahn_tridiagonal_check(N: int, eq=None, poison: bool = False, mode: str = "symbolic") -> Report:
    """Check that X * Q_k expands with support in {k-1, k, k+1} only,
    for k = 0..N-1 (so the k = 0 row has no lower term)."""
    eq = eq or _default_eq
    coeffs = qhahn_recurrence_entries(N, poison=poison)
    recovered = {}
    for k, vec in enumerate(coeffs):
        for j, c in enumerate(vec):
            inside = abs(j - k) <= 1
            if not inside and not eq(c, ZERO):
                return failure(
                    "qhahn-tridiagonal", {"N": N, "k": k, "j": j}, c, ZERO, mode
                )
        recovered[str(k)] = {
            "A": str(vec[k + 1]),
            "N": str(vec[k]),
            "C": str(vec[k - 1]) if k > 0 else "0",
        }
    return Report("qhahn-tridiagonal", {"N": N, "recovered": recovered}, mode)


def transported_basis(N: int) -> list:
    """X-polynomials carrying the weight-N monomial basis into the (t, X)
    picture (the common t^N factor dropped):

    e_l = prod_{s=0}^{N-l-1} (1 - q^(-2s) X) * X^l,   l = 0..N.
    """
    out = []
    for l in range(N + 1):
        prod = qshift_factor(N - l)
        out.append(UniPoly({d + l: c for d, c in prod.terms.items()}, "X"))
    return out


def _x_op_matrix(fn, N: int) -> OpMatrix:
    labels = tuple(range(N + 1))
    images = []
    for j in labels:
        img = fn(UniPoly.monomial(j, var="X"))
        images.append(dict(img.terms))
    return OpMatrix.from_images(labels, labels, images)


def _qcomm_over_qdiff(A: OpMatrix, B: OpMatrix) -> OpMatrix:
    """(q A B - q^-1 B A) / (q - q^-1)."""
    return ((A @ B).scale(qmono(1)) - (B @ A).scale(qmono(-1))).scale(Q_MINUS_QINV.inv())


def qhahn_algebra_check(
    realization: str, N: int, eq=None, poison: bool = False, mode: str = "symbolic"
) -> Report:
    """Check the three bispectral-algebra relations for the pair (U, V),
    plus the expected spectra, in one of two realizations.

    "txpicture": U = q^-2N X + (1-X) T_(q^-2) and
                 V = q^(alpha+beta+1) (q-q^-1)^2 Theta_X + q^(2alpha+2beta+2) + 1
                 acting on X-polynomials of degree <= N.
    "tensor":    U = q^lam (Kinv (x) 1) and V = q^(lam+lam'-1) Delta(C)
                 restricted to the weight-N monomial span.
    """
    eq = eq or _default_eq
    params = {"realization": realization, "N": N}
    a = qpow(2 * ALPHA)
    b = qpow(2 * BETA)
    one_q2 = ONE + qmono(2)

    if realization == "txpicture":
        def u_apply(f):
            return UniPoly({1: qmono(-2 * N)}, "X") * f + (
                UniPoly({0: ONE, 1: -ONE}, "X") * f.dilate(qmono(-2))
            )

        v_const = qpow(2 * ALPHA + 2 * BETA + 2) + ONE

        def v_apply(f):
            return jacobi_diff_op_scaled(f) + f.scale(v_const)

        U = _x_op_matrix(u_apply, N)
        V = _x_op_matrix(v_apply, N)
        # spectra: U is diagonal on the transported basis, V on the q-Jacobi family
        for l, e in enumerate(transported_basis(N)):
            if not eq(u_apply(e), e.scale(qmono(-2 * l))):
                return failure("qhahn-algebra-specU", {**params, "l": l}, u_apply(e), e.scale(qmono(-2 * l)), mode)
        for k in range(N + 1):
            jk = little_qjacobi(k)
            ev = qmono(-2 * k) + a * b * qmono(2 * k + 2)
            if not eq(v_apply(jk), jk.scale(ev)):
                return failure("qhahn-algebra-specV", {**params, "k": k}, v_apply(jk), jk.scale(ev), mode)
    elif realization == "tensor":
        from .actions import (
            casimir_plane,
            plane_op_matrix,
            tensor_left_kinv,
            weight_basis,
        )
        from .brackets import holographic

        basis = weight_basis(N)

        def u_apply(P):
            return tensor_left_kinv(P).scale(qpow(LAM))

        def v_apply(P):
            return casimir_plane(P).scale(qpow(LAM + LAMP - 1))

        U = plane_op_matrix(u_apply, basis, basis)
        V = plane_op_matrix(v_apply, basis, basis)
        for i, (k, l) in enumerate(basis):
            for j in range(N + 1):
                want = qmono(-2 * k) if i == j else ZERO
                if not eq(U.a[i][j], want):
                    return failure("qhahn-algebra-specU", {**params, "l": k}, U.a[i][j], want, mode)
        for k in range(N + 1):
            w = holographic(k, N - k, picture="plane")
            ev = qmono(-2 * k) + a * b * qmono(2 * k + 2)
            if not eq(v_apply(w), w.scale(ev)):
                return failure("qhahn-algebra-specV", {**params, "k": k}, v_apply(w), w.scale(ev), mode)
    else:
        raise ValueError(f"unknown realization: {realization!r}")

    ident = OpMatrix.identity(U.cols)
    x1 = qmono(-2 * N) * (ONE + a + a * qmono(2 + 2 * N) + a * b * qmono(2 + 2 * N))
    x2 = qmono(-2 * N) * (ONE + b + b * qmono(2 + 2 * N) + a * b * qmono(2 + 2 * N))
    W = _qcomm_over_qdiff(V, U)
    lhs2 = _qcomm_over_qdiff(U, W)
    if poison:
        bumped = [row[:] for row in lhs2.a]
        bumped[0][0] = bumped[0][0] + ONE
        lhs2 = OpMatrix(lhs2.rows, lhs2.cols, bumped)
    rhs2 = U.scale(x1) - ident.scale(a * qmono(-2 * N) * one_q2)
    if not eq(lhs2, rhs2):
        return failure("qhahn-algebra-rel2", params, lhs2, rhs2, mode)
    lhs3 = _qcomm_over_qdiff(W, V)
    rhs3 = V.scale(x1) + U.scale(a * b * one_q2 * one_q2) - ident.scale(a * one_q2 * x2)
    if not eq(lhs3, rhs3):
        return failure("qhahn-algebra-rel3", params, lhs3, rhs3, mode)
    return Report("qhahn-algebra", params, mode)
