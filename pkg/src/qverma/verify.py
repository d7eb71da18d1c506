"""Verification suites: every library identity wired to a named, runnable
check that emits Report records.

Two comparison modes:

* symbolic - exact equality over Q(q, u, v) (cross-multiplied fractions);
* point    - exact rational evaluation at >= 3 independent random points
  with numerators/denominators drawn from [2, 97]; a vanishing denominator
  rejects the point and resamples (up to 10 times per trial).

Suite bounds default to the acceptance targets; a SessionConfig can widen
or narrow them.  The ``poison`` flag perturbs a single coefficient in the
first comparison of each suite, as a negative control of the harness.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from . import brackets, qpolys
from .actions import (
    Gen,
    antipode_act,
    casimir_plane,
    casimir_tx,
    casimir_verma,
    contragredient_act,
    ev_map,
    fischer_gram,
    fischer_gram_plane,
    one_op_matrix,
    plane_basis,
    plane_op_matrix,
    right_mult_x,
    right_mult_y,
    tensor_act,
    tx_act,
    tx_basis,
    verma_act,
    weight_basis,
    zbasis,
)
from .brackets import (
    cg_expand_check,
    holographic,
    holographic_basis_check,
    lowest_weight_space_dim,
    lowest_weight_vector,
    qrc,
    qrc_adjoint_oracle,
    qrc_intertwining_check,
)
from .errors import DenominatorVanishes, DomainError, ParseError
from .linalg import OpMatrix
from .plane import QPlanePoly, TXPoly, UniPoly, plane_to_tx, qp_mul, qp_pow_linear, tx_to_plane
from .qpolys import (
    dq_deriv,
    jacobi_diff_op,
    little_qjacobi,
    little_qjacobi_alt,
    qhahn_algebra_check,
    qhahn_diffop_check,
    qhahn_top_closed_form,
    qhahn_tridiagonal_check,
    qhahn_value,
)
from .reports import Report, failure
from .scalars import (
    LAM,
    LAMP,
    LaurentPoly,
    ONE,
    Rat,
    Scalar,
    WeightExpr,
    ZERO,
    qbinom,
    qfact,
    qmono,
    qnum,
    qpow,
)


@dataclass
class SessionConfig:
    """Knobs shared by the CLI and the test harness."""

    mode: str = "symbolic"
    seed: int = 12345
    trials: int = 3
    max_degree: int = 10
    output: str = "json"
    max_n: int = 8
    big_n: int = 8
    poison: bool = False
    numeric: tuple = (1.0001, 2.3, 3.7)  # (q0, lam0, lam0') for the float smoke test

    def validate(self) -> None:
        if self.mode not in ("symbolic", "point"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.output not in ("json", "latex", "csv"):
            raise ValueError(f"unknown output {self.output!r}")
        if self.mode == "point" and self.trials < 3:
            raise ValueError("point mode needs at least 3 trials")
        for bound in (self.max_degree, self.max_n, self.big_n):
            if bound < 0:
                raise ValueError("bounds must be nonnegative")


class Verifier:
    """Equality of Scalars, polynomials and matrices in the chosen mode."""

    def __init__(self, cfg: SessionConfig):
        self.mode = cfg.mode
        self.trials = cfg.trials
        self.rng = random.Random(cfg.seed)

    def equal(self, a, b) -> bool:
        if self.mode == "symbolic":
            return a == b
        pairs = _scalar_pairs(a, b)
        if pairs is None:
            return a == b
        return self._point_equal(pairs)

    def sample_point(self):
        r = self.rng
        return tuple(Rat(r.randint(2, 97), r.randint(2, 97)) for _ in range(3))

    def _point_equal(self, pairs) -> bool:
        done = 0
        while done < self.trials:
            for attempt in range(10):
                pt = self.sample_point()
                try:
                    for x, y in pairs:
                        if x.evaluate(*pt) != y.evaluate(*pt):
                            return False
                except DenominatorVanishes:
                    continue
                break
            else:
                raise DenominatorVanishes("no generic point found in 10 resamples")
            done += 1
        return True


def _scalar_pairs(a, b):
    """Flatten two comparable objects into coefficient pairs, or None when
    the comparison is not Scalar-valued (ints, bools, ...)."""
    if isinstance(a, Scalar) and isinstance(b, Scalar):
        return [(a, b)]
    if isinstance(a, (UniPoly, QPlanePoly, TXPoly)) and type(a) is type(b):
        keys = set(a.terms) | set(b.terms)
        return [(a.terms.get(k, ZERO), b.terms.get(k, ZERO)) for k in keys]
    if isinstance(a, OpMatrix) and isinstance(b, OpMatrix):
        if a.rows != b.rows or a.cols != b.cols:
            return [(ONE, ZERO)]  # structural mismatch: always unequal
        return [(x, y) for ra, rb in zip(a.a, b.a) for x, y in zip(ra, rb)]
    return None


def _perturb(x):
    """Bump a single coefficient by one (the poisoning negative control)."""
    if isinstance(x, bool):
        return not x
    if isinstance(x, int):
        return x + 1
    if isinstance(x, Scalar):
        return x + ONE
    if isinstance(x, (UniPoly, QPlanePoly, TXPoly)):
        terms = dict(x.terms)
        key = min(terms) if terms else (0 if isinstance(x, UniPoly) else (0, 0))
        terms[key] = terms.get(key, ZERO) + ONE
        if isinstance(x, UniPoly):
            return UniPoly(terms, x.var)
        return type(x)(terms)
    if isinstance(x, OpMatrix):
        bumped = [row[:] for row in x.a]
        bumped[0][0] = bumped[0][0] + ONE
        return OpMatrix(x.rows, x.cols, bumped)
    raise TypeError(f"cannot poison {type(x).__name__}")


class SuiteRun:
    """Collects reports for one suite; applies at most one poison bump."""

    def __init__(self, name: str, cfg: SessionConfig):
        self.name = name
        self.cfg = cfg
        self.v = Verifier(cfg)
        self.reports: list = []
        self._poison_left = cfg.poison

    def take_poison(self) -> bool:
        if self._poison_left:
            self._poison_left = False
            return True
        return False

    def expect(self, identity: str, params: dict, lhs, rhs) -> bool:
        if self._poison_left:
            lhs = _perturb(lhs)
            self._poison_left = False
        ok = self.v.equal(lhs, rhs)
        if ok:
            self.reports.append(Report(identity, params, self.cfg.mode))
        else:
            self.reports.append(failure(identity, params, lhs, rhs, self.cfg.mode))
        return ok

    def add(self, report: Report) -> None:
        self.reports.append(report)

    def passed(self) -> bool:
        return all(r.ok() for r in self.reports)


# -- random generators for the structural suites -----------------------------


def _random_scalar(rng: random.Random, allow_zero: bool = False) -> Scalar:
    def poly():
        terms = {}
        for _ in range(rng.randint(1, 3)):
            mono = (rng.randint(-2, 2), rng.randint(-1, 1), rng.randint(-1, 1))
            terms[mono] = Rat(rng.randint(-3, 3), rng.randint(1, 3))
        return LaurentPoly(terms)

    num = poly()
    if not allow_zero:
        while num.is_zero():
            num = poly()
    den = poly()
    while den.is_zero():
        den = poly()
    return Scalar(num, den)


def _random_plane(rng: random.Random, deg: int = 4, nterms: int = 3) -> QPlanePoly:
    terms = {}
    for _ in range(nterms):
        k = rng.randint(0, deg)
        l = rng.randint(0, deg - k)
        terms[(k, l)] = _random_scalar(rng)
    return QPlanePoly(terms)


def _random_tx(rng: random.Random, deg: int = 5, nterms: int = 3) -> TXPoly:
    terms = {}
    for _ in range(nterms):
        i = rng.randint(0, deg)
        j = rng.randint(0, i)
        terms[(i, j)] = _random_scalar(rng)
    return TXPoly(terms)


# -- suites ------------------------------------------------------------------


def suite_field(run: SuiteRun) -> None:
    rng = random.Random(run.cfg.seed ^ 0xF1E1D)
    for i in range(6):
        a, b, c = (_random_scalar(rng) for _ in range(3))
        run.expect("field-add-assoc", {"i": i}, (a + b) + c, a + (b + c))
        run.expect("field-mul-assoc", {"i": i}, (a * b) * c, a * (b * c))
        run.expect("field-distrib", {"i": i}, a * (b + c), a * b + a * c)
        run.expect("field-inverse", {"i": i}, a * a.inv(), ONE)
    for n in range(13):
        for k in range(n + 1):
            run.expect(
                "qbinom-factorial",
                {"n": n, "k": k},
                qbinom(n, k) * qfact(k) * qfact(n - k),
                qfact(n),
            )
    for w in (WeightExpr(1, 0, 0), WeightExpr(0, 1, 2), WeightExpr(2, -1, -3)):
        run.expect("qnum-odd", {"w": str(w)}, qnum(-w), -qnum(w))
    pts = [(Rat(2), Rat(3), Rat(5)), (Rat(3, 2), Rat(7, 3), Rat(5, 4))]
    for i in range(4):
        a, b = _random_scalar(rng), _random_scalar(rng)
        for pt in pts:
            try:
                lhs = (a * b).evaluate(*pt)
                rhs = a.evaluate(*pt) * b.evaluate(*pt)
                lhs2 = (a + b).evaluate(*pt)
                rhs2 = a.evaluate(*pt) + b.evaluate(*pt)
            except DenominatorVanishes:
                continue
            run.expect("eval-mul-hom", {"i": i}, Scalar(LaurentPoly.const(lhs)), Scalar(LaurentPoly.const(rhs)))
            run.expect("eval-add-hom", {"i": i}, Scalar(LaurentPoly.const(lhs2)), Scalar(LaurentPoly.const(rhs2)))


def suite_plane_algebra(run: SuiteRun) -> None:
    rng = random.Random(run.cfg.seed ^ 0xBEEF)
    for i in range(4):
        a, b, c = (_random_plane(rng) for _ in range(3))
        run.expect("qp-mul-assoc", {"i": i}, qp_mul(qp_mul(a, b), c), qp_mul(a, qp_mul(b, c)))
    # grading: product of homogeneous pieces is homogeneous of the sum degree
    for d1 in range(3):
        for d2 in range(3):
            a = QPlanePoly({(k, d1 - k): ONE for k in range(d1 + 1)})
            b = QPlanePoly({(k, d2 - k): qmono(k) for k in range(d2 + 1)})
            prod = qp_mul(a, b)
            degs = {k + l for (k, l) in prod.terms}
            run.expect("qp-grading", {"d1": d1, "d2": d2}, sorted(degs), [d1 + d2])
    # binomial power formula against iterated products
    for c_name, c in (("one", ONE), ("u", qpow(LAM)), ("rand", _random_scalar(rng))):
        lin = QPlanePoly({(1, 0): ONE, (0, 1): c})
        acc = QPlanePoly.one()
        for n in range(7):
            run.expect("qp-pow-linear", {"c": c_name, "n": n}, qp_pow_linear(c, n), acc)
            acc = qp_mul(lin, acc)
    # the plane<->tx isomorphism intertwines t-multiplication
    xq = QPlanePoly({(1, 0): ONE, (0, 1): qpow(LAM)})
    for i in range(4):
        P = _random_tx(rng)
        run.expect(
            "phi-t-mult", {"i": i}, tx_to_plane(P.shift_t(1)), qp_mul(xq, tx_to_plane(P))
        )
    # the inverse lands inside C[t,tX] (the constructor enforces j <= i)
    for i in range(4):
        P = _random_plane(rng)
        img = plane_to_tx(P)
        run.expect(
            "phi-inv-domain", {"i": i}, all(j <= t for (t, j) in img.terms.keys()), True
        )


_ACTIONS = {
    "verma": (verma_act, lambda n: UniPoly.monomial(n), lambda D: range(D + 1)),
    "tensor": (
        tensor_act,
        lambda t: QPlanePoly.monomial(*t),
        lambda D: plane_basis(D),
    ),
    "tx": (tx_act, lambda t: TXPoly.monomial(*t), lambda D: tx_basis(D)),
    "contragredient": (
        contragredient_act,
        lambda n: UniPoly.monomial(n),
        lambda D: range(D + 1),
    ),
}


def suite_relations(run: SuiteRun) -> None:
    D = run.cfg.max_degree
    inv_qd = Scalar(1) / (qmono(1) - qmono(-1))
    for name, (act, mk, basis) in _ACTIONS.items():
        for lbl in basis(D):
            P = mk(lbl)
            ke = act(Gen.K, act(Gen.E, P))
            ek = act(Gen.E, act(Gen.K, P))
            run.expect("rel-KE", {"action": name, "basis": str(lbl)}, ke, ek.scale(qmono(2)))
            kf = act(Gen.K, act(Gen.F, P))
            fk = act(Gen.F, act(Gen.K, P))
            run.expect("rel-KF", {"action": name, "basis": str(lbl)}, kf, fk.scale(qmono(-2)))
            ef = act(Gen.E, act(Gen.F, P)) - act(Gen.F, act(Gen.E, P))
            kdiff = (act(Gen.K, P) - act(Gen.KINV, P)).scale(inv_qd)
            run.expect("rel-EF", {"action": name, "basis": str(lbl)}, ef, kdiff)
            run.expect(
                "rel-Kinv", {"action": name, "basis": str(lbl)}, act(Gen.K, act(Gen.KINV, P)), P
            )
    # Casimir: scalar on the one-variable module, central in the plane
    for n in range(7):
        zn = UniPoly.monomial(n)
        run.expect(
            "casimir-verma-scalar",
            {"n": n},
            casimir_verma(zn),
            zn.scale(qpow(LAM - 1) + qpow(-(LAM - 1))),
        )
    for (k, l) in plane_basis(min(D, 6)):
        P = QPlanePoly.monomial(k, l)
        for g in (Gen.K, Gen.E, Gen.F):
            run.expect(
                "casimir-central",
                {"g": g.value, "k": k, "l": l},
                casimir_plane(tensor_act(g, P)),
                tensor_act(g, casimir_plane(P)),
            )
        run.expect(
            "tensor-K-grading",
            {"k": k, "l": l},
            tensor_act(Gen.K, P),
            P.scale(qpow(LAM + LAMP + 2 * (k + l))),
        )


def suite_lowest_weight(run: SuiteRun) -> None:
    for n in range(run.cfg.max_n + 1):
        P = lowest_weight_vector(n).poly
        run.expect("lowest-weight-F", {"n": n}, tensor_act(Gen.F, P), QPlanePoly({}))
        run.expect(
            "lowest-weight-K",
            {"n": n},
            tensor_act(Gen.K, P),
            P.scale(qpow(LAM + LAMP + 2 * n)),
        )


def suite_phi_bijection(run: SuiteRun) -> None:
    D = 12
    for d in range(D + 1):
        for k in range(d + 1):
            m = QPlanePoly.monomial(k, d - k)
            run.expect("phi-of-inv", {"k": k, "l": d - k}, tx_to_plane(plane_to_tx(m)), m)
    for i in range(D + 1):
        for j in range(i + 1):
            m = TXPoly.monomial(i, j)
            run.expect("inv-of-phi", {"i": i, "j": j}, plane_to_tx(tx_to_plane(m)), m)


def suite_phi_jacobi(run: SuiteRun) -> None:
    from .scalars import qpoch

    for n in range(7):
        for k in range(5):
            lhs = tx_to_plane(holographic(n, k, "tx").scale(qpoch(LAM, n)))
            rhs = holographic(n, k, "plane").scale(qpow(n * LAM))
            run.expect("phi-jacobi", {"n": n, "k": k}, lhs, rhs)


def suite_jacobi_forms(run: SuiteRun) -> None:
    for n in range(11):
        jn = little_qjacobi(n)
        run.expect("jacobi-rodrigues", {"n": n}, little_qjacobi_alt(n, "rodrigues"), jn)
        run.expect("jacobi-remark", {"n": n}, little_qjacobi_alt(n, "remark"), jn)
        eig = qnum(qpolys.ALPHA + qpolys.BETA + (n + 1)) * qnum(n)
        run.expect("jacobi-eigen", {"n": n}, jacobi_diff_op(jn), jn.scale(eig))
        run.expect("jacobi-degree", {"n": n}, jn.degree(), n)


def suite_tx_action(run: SuiteRun) -> None:
    for i in range(9):
        for j in range(i + 1):
            m = TXPoly.monomial(i, j)
            for g in (Gen.K, Gen.E, Gen.F):
                run.expect(
                    "tx-conjugation",
                    {"i": i, "j": j, "g": g.value},
                    tx_act(g, m),
                    plane_to_tx(tensor_act(g, tx_to_plane(m))),
                )
    for n in range(6):
        run.expect(
            "tx-F-kills-jacobi",
            {"n": n},
            tx_act(Gen.F, holographic(n, 0, "tx")),
            TXPoly({}),
        )
    for n in range(run.cfg.max_n + 1):
        for k in range(run.cfg.max_n + 1 - n):
            v = holographic(n, k, "tx")
            ev = qpow(LAM + LAMP + (2 * n - 1)) + qpow(-(LAM + LAMP) + (1 - 2 * n))
            run.expect("casimir-eigen-tx", {"n": n, "k": k}, casimir_tx(v), v.scale(ev))
    rng = random.Random(run.cfg.seed ^ 0xCA51)
    for i in range(3):
        P = _random_tx(rng)
        run.expect(
            "casimir-tx-via-plane",
            {"i": i},
            casimir_tx(P),
            plane_to_tx(casimir_plane(tx_to_plane(P))),
        )


def suite_cg(run: SuiteRun) -> None:
    N_max = run.cfg.big_n
    for N in range(1, N_max + 1):
        for k in range(N + 1):
            run.add(
                cg_expand_check(
                    k,
                    N,
                    eq=run.v.equal,
                    poison=run.take_poison(),
                    mode=run.cfg.mode,
                )
            )
    for N in range(1, N_max + 1):
        for l in range(N + 1):
            run.expect(
                "qhahn-top-closed-form",
                {"N": N, "l": l},
                qhahn_value(N, N, l),
                qhahn_top_closed_form(N, l),
            )


def suite_qhahn(run: SuiteRun) -> None:
    for N in range(1, 7):
        for k in range(N + 1):
            run.add(
                qhahn_diffop_check(
                    k, N, eq=run.v.equal, poison=run.take_poison(), mode=run.cfg.mode
                )
            )
    for N in range(1, 7):
        run.add(qhahn_tridiagonal_check(N, eq=run.v.equal, mode=run.cfg.mode))
    for N in range(1, 7):
        for realization in ("txpicture", "tensor"):
            run.add(
                qhahn_algebra_check(realization, N, eq=run.v.equal, mode=run.cfg.mode)
            )


def suite_adjoints(run: SuiteRun) -> None:
    D = run.cfg.max_degree
    gz = fischer_gram(zbasis(D))
    gz1 = fischer_gram(zbasis(D + 1))
    # multiplication by z and the q^2-derivative are mutual adjoints
    mz = one_op_matrix(
        lambda P: UniPoly({n + 1: c for n, c in P.terms.items()}), zbasis(D), zbasis(D + 1)
    )
    dq = one_op_matrix(lambda P: dq_deriv(P, "q2"), zbasis(D + 1), zbasis(D))
    run.expect("adjoint-mult-z", {"D": D}, mz.adjoint(gz1, gz), dq)
    run.expect("adjoint-involution", {"D": D}, mz.adjoint(gz1, gz).adjoint(gz, gz1), mz)
    # the embedding z -> (x + q^lam y) has the two-slot evaluation as adjoint
    pb = plane_basis(D)
    gp = fischer_gram_plane(pb)
    ev = OpMatrix.from_images(
        zbasis(D), pb, [dict(ev_map(UniPoly.monomial(n)).terms) for n in zbasis(D)]
    )
    ev_star_expected = OpMatrix.from_images(
        pb, zbasis(D), [{a + b: qpow(b * LAM)} for (a, b) in pb]
    )
    run.expect("adjoint-ev", {"D": D}, ev.adjoint(gp, gz), ev_star_expected)
    # right multiplications and their q-derivative adjoints
    pb1 = plane_basis(D + 1)
    gp1 = fischer_gram_plane(pb1)
    rx = plane_op_matrix(right_mult_x, pb, pb1)
    rx_star_expected = OpMatrix.from_images(
        pb1,
        pb,
        [
            {(a - 1, b): qmono(2 * b + a - 1) * qnum(a)} if a > 0 else {}
            for (a, b) in pb1
        ],
    )
    run.expect("adjoint-rx", {"D": D}, rx.adjoint(gp1, gp), rx_star_expected)
    ry = plane_op_matrix(right_mult_y, pb, pb1)
    ry_star_expected = OpMatrix.from_images(
        pb1,
        pb,
        [
            {(a, b - 1): qmono(b - 1) * qnum(b)} if b > 0 else {}
            for (a, b) in pb1
        ],
    )
    run.expect("adjoint-ry", {"D": D}, ry.adjoint(gp1, gp), ry_star_expected)
    # contragredient action = adjoint of the antipode-composed module action
    for g, s in ((Gen.K, 0), (Gen.E, 1), (Gen.F, -1)):
        cols = zbasis(D)
        rows = zbasis(D + s) if s >= 0 else zbasis(D - 1)
        m = one_op_matrix(lambda P: antipode_act(verma_act, g, P), cols, rows)
        duals = m.adjoint(fischer_gram(rows), fischer_gram(cols))
        expected = one_op_matrix(lambda P: contragredient_act(g, P), rows, cols)
        run.expect("contragredient-adjoint", {"g": g.value, "D": D}, duals, expected)


def suite_qrc_oracle(run: SuiteRun) -> None:
    for n in range(6):
        run.add(
            qrc_adjoint_oracle(
                n, 8, eq=run.v.equal, poison=run.take_poison(), mode=run.cfg.mode
            )
        )


def suite_qrc_intertwine(run: SuiteRun) -> None:
    for n in range(5):
        run.add(
            qrc_intertwining_check(
                n, 6, eq=run.v.equal, poison=run.take_poison(), mode=run.cfg.mode
            )
        )


def suite_uniqueness(run: SuiteRun) -> None:
    D = run.cfg.max_degree
    for n in range(run.cfg.max_n + 1):
        run.expect("lowest-weight-dim", {"n": n, "D": D}, lowest_weight_space_dim(n, D), 1)
    run.add(holographic_basis_check(D, eq=run.v.equal, poison=run.take_poison(), mode=run.cfg.mode))


def suite_degree_law(run: SuiteRun) -> None:
    for n in range(6):
        for a in range(5):
            for b in range(5):
                out = qrc(n, UniPoly.monomial(a), UniPoly.monomial(b))
                if a + b < n:
                    run.expect("qrc-zero-law", {"n": n, "a": a, "b": b}, out, UniPoly.zero())
                else:
                    run.expect("qrc-degree-law", {"n": n, "a": a, "b": b}, out.degree(), a + b - n)


def eval_scalar_float(s: Scalar, q0: float, lam0: float, lamp0: float) -> float:
    """Float evaluation with u = q0^lam0 and v = q0^lam0'; smoke tests only."""
    u0 = q0**lam0
    v0 = q0**lamp0

    def ev(poly: LaurentPoly) -> float:
        return sum(
            float(c) * q0**eq * u0**eu * v0**ev_ for (eq, eu, ev_), c in poly.terms.items()
        )

    return ev(s.num) / ev(s.den)


def _classical_qrc(n: int, f: list, g: list, lam0: float, lamp0: float) -> list:
    """Coefficient list of the term-by-term classical limit of the bracket."""

    def deriv(c: list) -> list:
        return [c[m] * m for m in range(1, len(c))]

    def poch(x: float, m: int) -> float:
        out = 1.0
        for s in range(m):
            out *= x + s
        return out

    fs = [list(f)]
    gs = [list(g)]
    for _ in range(n):
        fs.append(deriv(fs[-1]))
        gs.append(deriv(gs[-1]))
    out = [0.0] * (len(f) + len(g))
    for k in range(n + 1):
        coeff = (
            math.comb(n, k)
            * (-1) ** k
            * poch(lam0 + k, n - k)
            * poch(lamp0 + (n - k), k)
        )
        fk, gk = fs[k], gs[n - k]
        for i, ci in enumerate(fk):
            for j, cj in enumerate(gk):
                out[i + j] += coeff * ci * cj
    while out and out[-1] == 0.0:
        out.pop()
    return out


def suite_classical_limit(run: SuiteRun) -> None:
    q0, lam0, lamp0 = run.cfg.numeric
    tol = 1e-3
    cases = []
    for a in range(5):
        for b in range(5 - a):
            cases.append(([0.0] * a + [1.0], [0.0] * b + [1.0], {"a": a, "b": b}))
    cases.append(([1.0, 2.0, 1.0], [0.0, -1.0, 0.0, 1.0], {"f": "1+2z+z^2", "g": "z^3-z"}))
    for n in range(4):
        for fc, gc, tag in cases:
            f = UniPoly({m: Scalar(Rat(int(c))) for m, c in enumerate(fc) if c})
            g = UniPoly({m: Scalar(Rat(int(c))) for m, c in enumerate(gc) if c})
            exact = qrc(n, f, g)
            approx = {m: eval_scalar_float(c, q0, lam0, lamp0) for m, c in exact.terms.items()}
            classical = _classical_qrc(n, fc, gc, lam0, lamp0)
            ok = True
            for m in set(approx) | {m for m, c in enumerate(classical) if c}:
                want = classical[m] if m < len(classical) else 0.0
                got = approx.get(m, 0.0)
                scale = max(abs(want), abs(got), 1e-12)
                if abs(want - got) / scale > tol:
                    ok = False
            run.expect("classical-limit", {"n": n, **tag}, ok, True)


def suite_roundtrip(run: SuiteRun) -> None:
    from .parsing import parse_plane, parse_tx, parse_unipoly

    plane_corpus = [
        "x",
        "y*x",
        "x^2*y + 3*y^2 - 1/2",
        "(q - q^-1)*x*y + u*v^-1",
        "(x + y)^3 - x^3",
        "2*x*y*x",
    ]
    for src in plane_corpus:
        p = parse_plane(src)
        run.expect("roundtrip-plane", {"src": src}, parse_plane(str(p)), p)
    tx_corpus = ["t", "t*X", "t^3*X^2 - 2*t", "(t + t*X)^2", "t^2*(1 - X)"]
    for src in tx_corpus:
        p = parse_tx(src)
        run.expect("roundtrip-tx", {"src": src}, parse_tx(str(p)), p)
    one_corpus = ["z", "z^4 - 2*z + 3/4", "(z - 1)*(z + 1)", "q^2*z^2"]
    for src in one_corpus:
        p = parse_unipoly(src)
        run.expect("roundtrip-one", {"src": src}, parse_unipoly(str(p)), p)
    for bad, dom in (("X", "tx"), ("x*z", "one"), ("w + 1", "plane"), ("x*(", "plane")):
        try:
            if dom == "tx":
                parse_tx(bad)
            elif dom == "one":
                parse_unipoly(bad)
            else:
                parse_plane(bad)
            caught = False
        except (ParseError, DomainError):
            caught = True
        run.expect("parse-rejects", {"src": bad}, caught, True)


SUITES = {
    "field": suite_field,
    "plane-algebra": suite_plane_algebra,
    "relations": suite_relations,
    "lowest-weight": suite_lowest_weight,
    "phi-bijection": suite_phi_bijection,
    "phi-jacobi": suite_phi_jacobi,
    "jacobi-forms": suite_jacobi_forms,
    "tx-action": suite_tx_action,
    "cg": suite_cg,
    "qhahn": suite_qhahn,
    "adjoints": suite_adjoints,
    "qrc-oracle": suite_qrc_oracle,
    "qrc-intertwine": suite_qrc_intertwine,
    "uniqueness": suite_uniqueness,
    "degree-law": suite_degree_law,
    "classical-limit": suite_classical_limit,
    "roundtrip": suite_roundtrip,
}


def run_suite(name: str, cfg: SessionConfig) -> SuiteRun:
    fn = SUITES.get(name)
    if fn is None:
        raise KeyError(f"unknown suite {name!r}")
    run = SuiteRun(name, cfg)
    fn(run)
    return run
