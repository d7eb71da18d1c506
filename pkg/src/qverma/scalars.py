"""Exact arithmetic in Q(q, u, v), the fraction field of Laurent polynomials.

Everything downstream computes over this field.  The three symbols are

* ``q``   the deformation parameter,
* ``u``   the first generic weight, read as a q-power (``u`` behaves like
  ``q**lam`` for an indeterminate weight ``lam``),
* ``v``   the second generic weight, likewise.

Because u, v, q satisfy no algebraic relation, any affine weight
``a*lam + b*lam' + c`` with integer a, b, c has a faithful q-power
``u^a v^b q^c``, and genericity of the weights is automatic.

Coefficients are arbitrary-precision rationals (gmpy2 ``mpq`` when
available, ``fractions.Fraction`` otherwise).  Fractions of Laurent
polynomials are reduced by monomial content and rational content only;
equality is decided by cross-multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from heapq import heapify, heappop, heappush
from math import gcd, lcm

from .errors import DenominatorVanishes

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - gmpy2 is an optional speedup
    Rat = Fraction

# A monomial is the exponent triple (e_q, e_u, e_v); exponents may be negative.
Mono = tuple

_UNIT_MONO: Mono = (0, 0, 0)


def _rat(x) -> Rat:
    if isinstance(x, Rat):
        return x
    if isinstance(x, (int, str, Fraction)):
        return Rat(x)
    raise TypeError(f"not a rational: {x!r}")


class LaurentPoly:
    """Sparse Laurent polynomial in (q, u, v) with rational coefficients.

    Canonical form: no stored zero coefficients, so structural equality of
    the term dicts is polynomial equality.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms:
            self.terms = {m: c for m, c in terms.items() if c != 0}
        else:
            self.terms = {}

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        # internal: caller guarantees no zero coefficients
        p = object.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        c = _rat(c)
        return cls._raw({_UNIT_MONO: c} if c != 0 else {})

    @classmethod
    def mono(cls, e_q: int = 0, e_u: int = 0, e_v: int = 0, coeff=1) -> "LaurentPoly":
        c = _rat(coeff)
        return cls._raw({(e_q, e_u, e_v): c} if c != 0 else {})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None  # mutable-dict backed; not hashable

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({m: -c for m, c in self.terms.items()})

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s == 0:
                    del out[m]
                else:
                    out[m] = s
        return LaurentPoly._raw(out)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        a, b = self.terms, other.terms
        if not a or not b:
            return _P_ZERO
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        for (aq, au, av), ca in a.items():
            for (bq, bu, bv), cb in b.items():
                m = (aq + bq, au + bu, av + bv)
                c = ca * cb
                s = out.get(m)
                if s is None:
                    out[m] = c
                else:
                    s = s + c
                    if s == 0:
                        del out[m]
                    else:
                        out[m] = s
        return LaurentPoly._raw(out)

    def scale(self, c) -> "LaurentPoly":
        c = _rat(c)
        if c == 0 or not self.terms:
            return _P_ZERO
        return LaurentPoly._raw({m: k * c for m, k in self.terms.items()})

    def shift(self, mono: Mono) -> "LaurentPoly":
        dq, du, dv = mono
        if mono == _UNIT_MONO:
            return self
        return LaurentPoly._raw(
            {(mq + dq, mu + du, mv + dv): c for (mq, mu, mv), c in self.terms.items()}
        )

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative power of a LaurentPoly; use Scalar")
        out = _P_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def leading(self) -> tuple:
        """(monomial, coefficient) of the lex-largest monomial on (e_q, e_u, e_v)."""
        m = max(self.terms)
        return m, self.terms[m]

    def evaluate(self, q0, u0, v0):
        """Exact rational value at a point with nonzero coordinates."""
        total = Rat(0)
        for (eq, eu, ev), c in self.terms.items():
            total += c * q0**eq * u0**eu * v0**ev
        return total

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            factors = []
            for sym, e in zip(("q", "u", "v"), mono):
                if e == 1:
                    factors.append(sym)
                elif e != 0:
                    factors.append(f"{sym}^{e}")
            body = "*".join(factors)
            if not body:
                txt = str(c)
            elif c == 1:
                txt = body
            elif c == -1:
                txt = "-" + body
            else:
                txt = f"{c}*{body}"
            parts.append(txt)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def latex(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            factors = []
            for sym, e in zip(("q", "u", "v"), mono):
                if e == 1:
                    factors.append(sym)
                elif e != 0:
                    factors.append(f"{sym}^{{{e}}}")
            body = "".join(factors)
            if not body:
                txt = _latex_rat(c)
            elif c == 1:
                txt = body
            elif c == -1:
                txt = "-" + body
            else:
                txt = _latex_rat(c) + body
            parts.append(txt)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


def _latex_rat(c) -> str:
    n, d = c.numerator, c.denominator
    if d == 1:
        return str(n)
    sign = "-" if n < 0 else ""
    return f"{sign}\\tfrac{{{abs(n)}}}{{{d}}}"


_P_ZERO = LaurentPoly._raw({})
_P_ONE = LaurentPoly._raw({_UNIT_MONO: Rat(1)})


def _content_reduce(num: LaurentPoly, den: LaurentPoly):
    """Divide num and den by the unit content of den (a monomial times a
    rational), leaving den primitive: min exponents zero, integer
    coefficients with gcd one, positive leading coefficient.

    Monomials are units of the Laurent ring, so this is value-preserving,
    and it makes mathematically equal denominators structurally identical,
    which lets the add/mul fast paths fire.  When den exactly divides num
    the fraction collapses to a polynomial.
    """
    keys = den.terms.keys()
    mq = min(k[0] for k in keys)
    mu = min(k[1] for k in keys)
    mv = min(k[2] for k in keys)
    if (mq, mu, mv) != _UNIT_MONO:
        shift = (-mq, -mu, -mv)
        num = num.shift(shift)
        den = den.shift(shift)
    g = 0
    l = 1
    for c in den.terms.values():
        g = gcd(g, int(c.numerator))
        l = lcm(l, int(c.denominator))
    content = Rat(g, l)
    if den.leading()[1] < 0:
        content = -content
    if content != 1:
        inv = 1 / content
        num = num.scale(inv)
        den = den.scale(inv)
    if den.terms == _P_ONE.terms:
        return num, _P_ONE
    quot = _try_exact_div(num, den)
    if quot is not None:
        return quot, _P_ONE
    return num, den


def _try_exact_div(num: LaurentPoly, den: LaurentPoly):
    """Quotient num/den if den divides num exactly, else None.

    Long division by the lex-leading term, with a lazy max-heap over the
    remainder support.  Exactness forces every quotient monomial to stay
    lex-above (min num - min den), so a dip below that corner aborts early;
    a step cap bounds pathological failures.
    """
    if len(den.terms) > 64 or len(num.terms) > 4096:
        return None
    lead_d, cd = den.leading()
    min_n = min(num.terms)
    min_d = min(den.terms)
    low = (min_n[0] - min_d[0], min_n[1] - min_d[1], min_n[2] - min_d[2])
    rest = [(m, c) for m, c in den.terms.items() if m != lead_d]
    r = dict(num.terms)
    heap = [(-m[0], -m[1], -m[2]) for m in r]
    heapify(heap)
    quot: dict = {}
    steps = 0
    cap = 64 + 2 * len(num.terms) + 8 * len(den.terms)
    while r:
        steps += 1
        if steps > cap:
            return None
        lr = None
        while heap:
            neg = heap[0]
            cand = (-neg[0], -neg[1], -neg[2])
            if cand in r:
                lr = cand
                break
            heappop(heap)
        if lr is None:
            return None
        m = (lr[0] - lead_d[0], lr[1] - lead_d[1], lr[2] - lead_d[2])
        if m < low:
            return None
        c = r.pop(lr) / cd
        heappop(heap)
        quot[m] = c
        for dm, dc in rest:
            key = (m[0] + dm[0], m[1] + dm[1], m[2] + dm[2])
            s = r.get(key)
            if s is None:
                r[key] = -c * dc
                heappush(heap, (-key[0], -key[1], -key[2]))
            else:
                s = s - c * dc
                if s == 0:
                    del r[key]
                else:
                    r[key] = s
    return LaurentPoly._raw(quot)


class Scalar:
    """An element of Q(q, u, v): a reduced pair num/den of Laurent polynomials.

    den is never zero; equality is by cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, LaurentPoly):
            num = LaurentPoly.const(num)
        if den is None:
            den = _P_ONE
        elif not isinstance(den, LaurentPoly):
            den = LaurentPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in Scalar")
        if num.is_zero():
            self.num, self.den = _P_ZERO, _P_ONE
            return
        if den.terms == _P_ONE.terms:
            self.num, self.den = num, _P_ONE
            return
        self.num, self.den = _content_reduce(num, den)

    @classmethod
    def _raw(cls, num: LaurentPoly, den: LaurentPoly) -> "Scalar":
        s = object.__new__(cls)
        s.num, s.den = num, den
        return s

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.terms == self.den.terms

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Rat)):
            other = Scalar(LaurentPoly.const(other))
        if not isinstance(other, Scalar):
            return NotImplemented
        if self.num.terms == other.num.terms and self.den.terms == other.den.terms:
            return True
        return self.num * other.den == other.num * self.den

    __hash__ = None

    # -- field operations --------------------------------------------------

    def __add__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den.terms == other.den.terms:
            return Scalar(self.num + other.num, self.den)
        return Scalar(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar._raw(-self.num, self.den)

    def __sub__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        # structural and cross-divisibility cancellations keep fractions
        # small (Pochhammer ratios collapse here)
        a, b, c, d = self.num, self.den, other.num, other.den
        if a.terms == d.terms:
            a, d = _P_ONE, _P_ONE
        if c.terms == b.terms:
            c, b = _P_ONE, _P_ONE
        if len(d.terms) > 1 and len(a.terms) >= len(d.terms):
            q = _try_exact_div(a, d)
            if q is not None:
                a, d = q, _P_ONE
        if len(b.terms) > 1 and len(c.terms) >= len(b.terms):
            q = _try_exact_div(c, b)
            if q is not None:
                c, b = q, _P_ONE
        return Scalar(a * c, b * d)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inv()

    def inv(self) -> "Scalar":
        if self.num.is_zero():
            raise ZeroDivisionError("inverting the zero Scalar")
        return Scalar(self.den, self.num)

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            return self.inv() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- evaluation and io -------------------------------------------------

    def evaluate(self, q0, u0, v0):
        """Exact rational value; raises DenominatorVanishes at a bad point."""
        q0, u0, v0 = _rat(q0), _rat(u0), _rat(v0)
        if q0 == 0 or u0 == 0 or v0 == 0:
            raise ValueError("evaluation point must have nonzero coordinates")
        d = self.den.evaluate(q0, u0, v0)
        if d == 0:
            raise DenominatorVanishes(f"denominator {self.den} vanishes at {(q0, u0, v0)}")
        return self.num.evaluate(q0, u0, v0) / d

    def to_json(self):
        return {
            "num": [[m[0], m[1], m[2], str(c)] for m, c in self.num.sorted_terms()],
            "den": [[m[0], m[1], m[2], str(c)] for m, c in self.den.sorted_terms()],
        }

    @classmethod
    def from_json(cls, obj) -> "Scalar":
        num = LaurentPoly({(e[0], e[1], e[2]): _rat(e[3]) for e in obj["num"]})
        den = LaurentPoly({(e[0], e[1], e[2]): _rat(e[3]) for e in obj["den"]})
        return cls(num, den)

    def __str__(self) -> str:
        if self.den.terms == _P_ONE.terms:
            return str(self.num)
        n = str(self.num)
        if len(self.num.terms) > 1 or n.startswith("-"):
            n = f"({n})"
        return f"{n}/({self.den})"

    def latex(self) -> str:
        if self.den.terms == _P_ONE.terms:
            return self.num.latex()
        return f"\\frac{{{self.num.latex()}}}{{{self.den.latex()}}}"

    def __repr__(self) -> str:
        return f"Scalar({self})"


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Rat, Fraction)):
        return Scalar(LaurentPoly.const(x))
    return NotImplemented


ZERO = Scalar._raw(_P_ZERO, _P_ONE)
ONE = Scalar._raw(_P_ONE, _P_ONE)


def qmono(e_q: int = 0, e_u: int = 0, e_v: int = 0, coeff=1) -> Scalar:
    """The monomial Scalar coeff * q^e_q u^e_u v^e_v."""
    return Scalar(LaurentPoly.mono(e_q, e_u, e_v, coeff))


@dataclass(frozen=True)
class WeightExpr:
    """Affine weight a*lam + b*lam' + c with integer coefficients.

    These are the admissible arguments of q-brackets; pure integers have
    a = b = 0.
    """

    a: int = 0
    b: int = 0
    c: int = 0

    def __add__(self, other):
        if isinstance(other, int):
            return WeightExpr(self.a, self.b, self.c + other)
        if isinstance(other, WeightExpr):
            return WeightExpr(self.a + other.a, self.b + other.b, self.c + other.c)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return WeightExpr(-self.a, -self.b, -self.c)

    def __sub__(self, other):
        if isinstance(other, int):
            return WeightExpr(self.a, self.b, self.c - other)
        if isinstance(other, WeightExpr):
            return WeightExpr(self.a - other.a, self.b - other.b, self.c - other.c)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, k):
        if isinstance(k, int):
            return WeightExpr(self.a * k, self.b * k, self.c * k)
        return NotImplemented

    __rmul__ = __mul__

    def is_constant(self) -> bool:
        return self.a == 0 and self.b == 0

    def __str__(self) -> str:
        parts = []
        if self.a:
            parts.append("lam" if self.a == 1 else f"{self.a}*lam")
        if self.b:
            parts.append("lam'" if self.b == 1 else f"{self.b}*lam'")
        if self.c or not parts:
            parts.append(str(self.c))
        return " + ".join(parts).replace("+ -", "- ")


LAM = WeightExpr(1, 0, 0)
LAMP = WeightExpr(0, 1, 0)


def _as_weight(w) -> WeightExpr:
    if isinstance(w, WeightExpr):
        return w
    if isinstance(w, int):
        return WeightExpr(0, 0, w)
    raise TypeError(f"not a weight: {w!r}")


def qpow(w) -> Scalar:
    """q raised to a weight: q^(a*lam + b*lam' + c) = u^a v^b q^c."""
    w = _as_weight(w)
    return Scalar(LaurentPoly.mono(w.c, w.a, w.b))


_P_QDIFF = LaurentPoly({(1, 0, 0): Rat(1), (-1, 0, 0): Rat(-1)})  # q - q^-1
Q_MINUS_QINV = Scalar._raw(_P_QDIFF, _P_ONE)

_QNUM_CACHE: dict = {}
_QPOCH_CACHE: dict = {}
_QBINOM_CACHE: dict = {}
_QFACT_CACHE: dict = {}


def qnum(w) -> Scalar:
    """Symmetric q-number [w] = (q^w - q^-w) / (q - q^-1) of a weight."""
    w = _as_weight(w)
    hit = _QNUM_CACHE.get(w)
    if hit is not None:
        return hit
    if w.is_constant():
        # integer brackets divide exactly: [n] = q^(n-1) + q^(n-3) + ... + q^(1-n)
        n = w.c
        sign = 1 if n >= 0 else -1
        val = Scalar(
            LaurentPoly({(abs(n) - 1 - 2 * i, 0, 0): Rat(sign) for i in range(abs(n))})
        )
    else:
        num = LaurentPoly.mono(w.c, w.a, w.b) + LaurentPoly.mono(-w.c, -w.a, -w.b, -1)
        val = Scalar(num, _P_QDIFF)
    _QNUM_CACHE[w] = val
    return val


def qpoch(w, n: int) -> Scalar:
    """Bracket Pochhammer [w]_n = [w][w+1]...[w+n-1]; empty product is 1."""
    if n < 0:
        raise ValueError("qpoch needs n >= 0")
    w = _as_weight(w)
    key = (w, n)
    hit = _QPOCH_CACHE.get(key)
    if hit is not None:
        return hit
    val = qpoch(w, n - 1) * qnum(w + (n - 1)) if n else ONE
    _QPOCH_CACHE[key] = val
    return val


def qfact(n: int) -> Scalar:
    """q-factorial [n]! = [1]_n."""
    if n < 0:
        raise ValueError("qfact needs n >= 0")
    hit = _QFACT_CACHE.get(n)
    if hit is not None:
        return hit
    val = qfact(n - 1) * qnum(n) if n else ONE
    _QFACT_CACHE[n] = val
    return val


def qbinom(n: int, k: int) -> Scalar:
    """Symmetric q-binomial [n]! / ([k]! [n-k]!); zero outside 0 <= k <= n.

    Computed denominator-free through the Pascal-type recursion
    C(n,k) = q^k C(n-1,k) + q^(k-n) C(n-1,k-1).
    """
    if n < 0:
        raise ValueError("qbinom needs n >= 0")
    if k < 0 or k > n:
        return ZERO
    k = min(k, n - k)
    hit = _QBINOM_CACHE.get((n, k))
    if hit is None:
        hit = ONE if k == 0 else Scalar._raw(_gauss_poly(n, k), _P_ONE)
        _QBINOM_CACHE[(n, k)] = hit
    return hit


_GAUSS_CACHE: dict = {}


def _gauss_poly(n: int, k: int) -> LaurentPoly:
    if k == 0 or k == n:
        return _P_ONE
    key = (n, k)
    hit = _GAUSS_CACHE.get(key)
    if hit is None:
        hit = _gauss_poly(n - 1, k).shift((k, 0, 0)) + _gauss_poly(n - 1, k - 1).shift(
            (k - n, 0, 0)
        )
        _GAUSS_CACHE[key] = hit
    return hit


def scalar_eval(s: Scalar, point):
    """Exact value of a Scalar at a rational point (q0, u0, v0)."""
    q0, u0, v0 = point
    return s.evaluate(q0, u0, v0)


def scalar_sum(items) -> Scalar:
    """Sum of Scalars, batching by denominator.

    Pairwise chained addition of fractions with different denominators
    grows cross-multiplied terms quadratically; here the summands are
    grouped by structural denominator, and when one denominator is a
    common multiple of all the others the whole sum is assembled over it
    in a single pass.  Used by the series-style formulas whose terms have
    nested Pochhammer denominators.
    """
    groups: dict = {}
    for s in items:
        if s.num.is_zero():
            continue
        key = tuple(sorted(s.den.terms.items()))
        g = groups.get(key)
        if g is None:
            groups[key] = [s.den, s.num]
        else:
            g.append(s.num)
    if not groups:
        return ZERO
    partial = []
    for den, *nums in groups.values():
        total = nums[0]
        for p in nums[1:]:
            total = total + p
        partial.append((den, total))
    if len(partial) == 1:
        den, num = partial[0][0], partial[0][1]
        return Scalar(num, den)
    # fold in ascending denominator size: in the nested-Pochhammer case each
    # denominator divides the next, so every step multiplies the carried
    # numerator by a small ratio only
    partial.sort(key=lambda p: len(p[0].terms))
    den, num = partial[0]
    for d2, n2 in partial[1:]:
        f = _try_exact_div(d2, den)
        if f is not None:
            num = num * f + n2
            den = d2
        else:
            num = num * d2 + n2 * den
            den = den * d2
    return Scalar(num, den)
