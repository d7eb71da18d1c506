"""Polynomial spaces: C[z], the quantum plane C_q[x,y], and C[t,tX].

The quantum plane has two generators with the exchange rule yx = q^2 xy.
Elements are kept normal-ordered: a stored key (k, l) always means
x^k y^l in that order.

C[t,tX] is the subspace of commutative polynomials in (t, X) spanned by
t^i X^j with j <= i.  The linear maps ``tx_to_plane`` and ``plane_to_tx``
are mutually inverse vector-space isomorphisms between the two pictures;
they are linear only, not multiplicative.
"""

from __future__ import annotations

from .errors import DomainError
from .scalars import ONE, Scalar, qbinom, qmono, qpow, scalar_sum, LAM


def _clean(terms: dict) -> dict:
    return {k: c for k, c in terms.items() if not c.is_zero()}


def _sum_bucket(pairs) -> dict:
    """Accumulate (key, Scalar) pairs, summing per key with LCD batching."""
    bucket: dict = {}
    for k, c in pairs:
        bucket.setdefault(k, []).append(c)
    out = {}
    for k, items in bucket.items():
        total = items[0] if len(items) == 1 else scalar_sum(items)
        if not total.is_zero():
            out[k] = total
    return out


def _add_into(acc: dict, key, c: Scalar) -> None:
    s = acc.get(key)
    if s is None:
        acc[key] = c
    else:
        s = s + c
        if s.is_zero():
            del acc[key]
        else:
            acc[key] = s


def _coef_str(c: Scalar, body: str) -> str:
    txt = str(c)
    if txt == "1":
        return body
    if txt == "-1":
        return "-" + body
    if ("+" in txt[1:]) or ("-" in txt[1:]) or ("/" in txt):
        txt = f"({txt})"
    return f"{txt}*{body}"


def _join(parts) -> str:
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


class UniPoly:
    """Sparse polynomial in one variable with Scalar coefficients."""

    __slots__ = ("terms", "var")

    def __init__(self, terms=None, var: str = "z"):
        self.terms = _clean(terms) if terms else {}
        self.var = var

    @classmethod
    def monomial(cls, n: int, c: Scalar = ONE, var: str = "z") -> "UniPoly":
        return cls({n: c}, var)

    @classmethod
    def zero(cls, var: str = "z") -> "UniPoly":
        return cls({}, var)

    @classmethod
    def one(cls, var: str = "z") -> "UniPoly":
        return cls({0: ONE}, var)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max(self.terms) if self.terms else -1

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(c == other.terms[k] for k, c in self.terms.items())

    __hash__ = None

    def __add__(self, other: "UniPoly") -> "UniPoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, c)
        return UniPoly(out, self.var)

    def __neg__(self) -> "UniPoly":
        return UniPoly({k: -c for k, c in self.terms.items()}, self.var)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        pairs = [
            (k1 + k2, c1 * c2)
            for k1, c1 in self.terms.items()
            for k2, c2 in other.terms.items()
        ]
        out = object.__new__(UniPoly)
        out.terms = _sum_bucket(pairs)
        out.var = self.var
        return out

    def scale(self, c: Scalar) -> "UniPoly":
        if c.is_zero():
            return UniPoly({}, self.var)
        return UniPoly({k: x * c for k, x in self.terms.items()}, self.var)

    def __pow__(self, n: int) -> "UniPoly":
        out = UniPoly.one(self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def dilate(self, c: Scalar) -> "UniPoly":
        """Argument scaling f(z) -> f(c z)."""
        return UniPoly({k: x * c**k for k, x in self.terms.items()}, self.var)

    def divide_by_var(self) -> "UniPoly":
        """Exact division by the variable; the constant term must be absent."""
        if 0 in self.terms:
            raise ArithmeticError(f"{self.var}-division with nonzero constant term")
        return UniPoly({k - 1: c for k, c in self.terms.items()}, self.var)

    def coeff(self, n: int) -> Scalar:
        return self.terms.get(n, Scalar(0))

    def to_json(self):
        return [[n, c.to_json()] for n, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, obj, var: str = "z") -> "UniPoly":
        return cls({int(n): Scalar.from_json(c) for n, c in obj}, var)

    def __str__(self) -> str:
        parts = []
        for n in sorted(self.terms, reverse=True):
            body = "1" if n == 0 else (self.var if n == 1 else f"{self.var}^{n}")
            c = self.terms[n]
            if n == 0:
                txt = str(c)
                if ("+" in txt[1:]) or ("-" in txt[1:]) or ("/" in txt):
                    txt = f"({txt})"
                parts.append(txt)
            else:
                parts.append(_coef_str(c, body))
        return _join(parts)

    def latex(self) -> str:
        parts = []
        for n in sorted(self.terms, reverse=True):
            body = "" if n == 0 else (self.var if n == 1 else f"{self.var}^{{{n}}}")
            c = self.terms[n]
            txt = c.latex()
            if "+" in txt[1:] or "-" in txt[1:]:
                txt = f"\\left({txt}\\right)"
            parts.append((txt + body) if body else txt)
        return _join(parts)

    def __repr__(self) -> str:
        return f"UniPoly({self})"


# C[z] and C[X] share the representation; the aliases mark intent.
OnePoly = UniPoly
XPoly = UniPoly


class QPlanePoly:
    """Normal-ordered element of the quantum plane: sum of c * x^k y^l."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = _clean(terms) if terms else {}

    @classmethod
    def monomial(cls, k: int, l: int, c: Scalar = ONE) -> "QPlanePoly":
        if k < 0 or l < 0:
            raise ValueError("plane monomials need nonnegative exponents")
        return cls({(k, l): c})

    @classmethod
    def one(cls) -> "QPlanePoly":
        return cls({(0, 0): ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max(k + l for k, l in self.terms) if self.terms else -1

    def __eq__(self, other) -> bool:
        if not isinstance(other, QPlanePoly):
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(c == other.terms[k] for k, c in self.terms.items())

    __hash__ = None

    def __add__(self, other: "QPlanePoly") -> "QPlanePoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, c)
        return QPlanePoly(out)

    def __neg__(self) -> "QPlanePoly":
        return QPlanePoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "QPlanePoly") -> "QPlanePoly":
        return self + (-other)

    def scale(self, c: Scalar) -> "QPlanePoly":
        if c.is_zero():
            return QPlanePoly({})
        return QPlanePoly({k: x * c for k, x in self.terms.items()})

    def to_json(self):
        return [[k, l, c.to_json()] for (k, l), c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, obj) -> "QPlanePoly":
        return cls({(int(k), int(l)): Scalar.from_json(c) for k, l, c in obj})

    def __str__(self) -> str:
        parts = []
        for (k, l) in sorted(self.terms, key=lambda t: (t[0] + t[1], t[0]), reverse=True):
            factors = []
            if k:
                factors.append("x" if k == 1 else f"x^{k}")
            if l:
                factors.append("y" if l == 1 else f"y^{l}")
            body = "*".join(factors) if factors else "1"
            c = self.terms[(k, l)]
            if body == "1":
                txt = str(c)
                if ("+" in txt[1:]) or ("-" in txt[1:]) or ("/" in txt):
                    txt = f"({txt})"
                parts.append(txt)
            else:
                parts.append(_coef_str(c, body))
        return _join(parts)

    def latex(self) -> str:
        parts = []
        for (k, l) in sorted(self.terms, key=lambda t: (t[0] + t[1], t[0]), reverse=True):
            body = ""
            if k:
                body += "x" if k == 1 else f"x^{{{k}}}"
            if l:
                body += "y" if l == 1 else f"y^{{{l}}}"
            txt = self.terms[(k, l)].latex()
            if "+" in txt[1:] or "-" in txt[1:]:
                txt = f"\\left({txt}\\right)"
            parts.append((txt + body) if body else txt)
        return _join(parts)

    def __repr__(self) -> str:
        return f"QPlanePoly({self})"


def qp_mul(P: QPlanePoly, Q: QPlanePoly) -> QPlanePoly:
    """Normal-ordered product; moving y^l past x^k' costs q^(2 l k')."""
    pairs = []
    for (k1, l1), c1 in P.terms.items():
        for (k2, l2), c2 in Q.terms.items():
            c = c1 * c2
            if l1 and k2:
                c = c * qmono(2 * l1 * k2)
            pairs.append(((k1 + k2, l1 + l2), c))
    out = object.__new__(QPlanePoly)
    out.terms = _sum_bucket(pairs)
    return out


def qp_pow(P: QPlanePoly, n: int) -> QPlanePoly:
    out = QPlanePoly.one()
    for _ in range(n):
        out = qp_mul(out, P)
    return out


def qp_pow_linear(c: Scalar, n: int) -> QPlanePoly:
    """(x + c y)^n expanded by the q-binomial theorem for yx = q^2 xy:

    sum_k  qbinom(n, k) q^(k(n-k)) c^(n-k) x^k y^(n-k).
    """
    out: dict = {}
    cp = ONE
    for k in range(n, -1, -1):
        out[(k, n - k)] = qbinom(n, k) * qmono(k * (n - k)) * cp
        cp = cp * c
    return QPlanePoly(_clean(out))


class TXPoly:
    """Element of C[t,tX]: sum of c * t^i X^j with j <= i."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        terms = _clean(terms) if terms else {}
        for (i, j) in terms:
            if j > i or j < 0:
                raise DomainError(f"t^{i} X^{j} is outside C[t,tX]")
        self.terms = terms

    @classmethod
    def monomial(cls, i: int, j: int, c: Scalar = ONE) -> "TXPoly":
        return cls({(i, j): c})

    @classmethod
    def one(cls) -> "TXPoly":
        return cls({(0, 0): ONE})

    @classmethod
    def from_xpoly(cls, t_degree: int, P: UniPoly) -> "TXPoly":
        """t^d * P(X) as an element of C[t,tX]."""
        return cls({(t_degree, j): c for j, c in P.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, TXPoly):
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(c == other.terms[k] for k, c in self.terms.items())

    __hash__ = None

    def __add__(self, other: "TXPoly") -> "TXPoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, c)
        return TXPoly(out)

    def __neg__(self) -> "TXPoly":
        return TXPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "TXPoly") -> "TXPoly":
        return self + (-other)

    def scale(self, c: Scalar) -> "TXPoly":
        if c.is_zero():
            return TXPoly({})
        return TXPoly({k: x * c for k, x in self.terms.items()})

    def shift_t(self, d: int = 1) -> "TXPoly":
        """Multiplication by t^d."""
        return TXPoly({(i + d, j): c for (i, j), c in self.terms.items()})

    def dilate_t(self, c: Scalar) -> "TXPoly":
        """P(t, X) -> P(c t, X)."""
        return TXPoly({(i, j): x * c**i for (i, j), x in self.terms.items()})

    def t_slices(self) -> dict:
        """Split into {t-degree: X-polynomial} slices."""
        out: dict = {}
        for (i, j), c in self.terms.items():
            out.setdefault(i, {})[j] = c
        return {i: UniPoly(d, var="X") for i, d in out.items()}

    def to_json(self):
        return [[i, j, c.to_json()] for (i, j), c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, obj) -> "TXPoly":
        return cls({(int(i), int(j)): Scalar.from_json(c) for i, j, c in obj})

    def __str__(self) -> str:
        parts = []
        for (i, j) in sorted(self.terms, reverse=True):
            factors = []
            if i:
                factors.append("t" if i == 1 else f"t^{i}")
            if j:
                factors.append("X" if j == 1 else f"X^{j}")
            body = "*".join(factors) if factors else "1"
            c = self.terms[(i, j)]
            if body == "1":
                txt = str(c)
                if ("+" in txt[1:]) or ("-" in txt[1:]) or ("/" in txt):
                    txt = f"({txt})"
                parts.append(txt)
            else:
                parts.append(_coef_str(c, body))
        return _join(parts)

    def latex(self) -> str:
        parts = []
        for (i, j) in sorted(self.terms, reverse=True):
            body = ""
            if i:
                body += "t" if i == 1 else f"t^{{{i}}}"
            if j:
                body += "X" if j == 1 else f"X^{{{j}}}"
            txt = self.terms[(i, j)].latex()
            if "+" in txt[1:] or "-" in txt[1:]:
                txt = f"\\left({txt}\\right)"
            parts.append((txt + body) if body else txt)
        return _join(parts)

    def __repr__(self) -> str:
        return f"TXPoly({self})"


_QSHIFT_CACHE: list = []


def qshift_factor(p: int) -> UniPoly:
    """prod_{s=0}^{p-1} (1 - q^(-2s) X) as an X-polynomial."""
    while len(_QSHIFT_CACHE) <= p:
        m = len(_QSHIFT_CACHE)
        if m == 0:
            _QSHIFT_CACHE.append(UniPoly.one("X"))
        else:
            factor = UniPoly({0: ONE, 1: -qmono(-2 * (m - 1))}, var="X")
            _QSHIFT_CACHE.append(_QSHIFT_CACHE[m - 1] * factor)
    return _QSHIFT_CACHE[p]


def tx_to_plane(P: TXPoly) -> QPlanePoly:
    """The linear isomorphism sending t^n (tX)^m to (x + q^lam y)^n x^m.

    A key (i, j) is the generator pair (n, m) = (i - j, j).
    """
    u = qpow(LAM)
    pairs = []
    for (i, j), c in P.terms.items():
        n, m = i - j, j
        img = qp_pow_linear(u, n)
        if m:
            img = qp_mul(img, QPlanePoly.monomial(m, 0))
        for key, w in img.terms.items():
            pairs.append((key, w * c))
    out = object.__new__(QPlanePoly)
    out.terms = _sum_bucket(pairs)
    return out


def plane_to_tx(P: QPlanePoly) -> TXPoly:
    """Inverse of ``tx_to_plane``:

    x^k y^p  ->  q^(-p(lam+2k)) t^(k+p) prod_{s=0}^{p-1}(1 - q^(-2s) X) X^k.
    """
    pairs = []
    for (k, p), c in P.terms.items():
        pref = c * qpow(-p * (LAM + 2 * k))
        for d, w in qshift_factor(p).terms.items():
            pairs.append(((k + p, k + d), pref * w))
    return TXPoly(_sum_bucket(pairs))
