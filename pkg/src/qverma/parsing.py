"""Minimal expression parser for polynomial inputs.

Grammar (no implicit multiplication):

    expr   := term (('+'|'-') term)*
    term   := unary (('*'|'/') unary)*
    unary  := ('-'|'+')* power
    power  := atom (('^'|'**') ['-'] INT)?
    atom   := INT | NAME | '(' expr ')'

NAME is a single letter.  Admissible letters depend on the target space:
x, y (quantum plane, normal-ordered on evaluation), t, X (the C[t,tX]
subspace, membership checked after evaluation), z (one variable), and
q, u, v (coefficient symbols, always allowed).  Division requires a
coefficient-valued divisor.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, ParseError
from .plane import QPlanePoly, TXPoly, UniPoly, qp_mul
from .scalars import ONE, Rat, Scalar, qmono


@dataclass(frozen=True)
class Num:
    value: object


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-', '*', '/'
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


def _tokenize(text: str) -> list:
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            out.append(("num", int(text[i:j])))
            i = j
        elif ch.isalpha():
            if i + 1 < len(text) and text[i + 1].isalpha():
                raise ParseError(f"unexpected name at {i}: names are single letters")
            out.append(("name", ch))
            i += 1
        elif text.startswith("**", i):
            out.append(("op", "^"))
            i += 2
        elif ch in "+-*/^()":
            out.append(("op", ch))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r} at position {i}")
    return out


class _Parser:
    def __init__(self, tokens: list):
        self.toks = tokens
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect_op(self, op: str) -> None:
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, found {val!r}")

    def parse(self):
        node = self.expr()
        if self.pos != len(self.toks):
            raise ParseError(f"trailing input at token {self.pos}")
        return node

    def expr(self):
        node = self.term()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                node = BinOp(val, node, self.term())
            else:
                return node

    def term(self):
        node = self.unary()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                node = BinOp(val, node, self.unary())
            else:
                return node

    def unary(self):
        negate = False
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                if val == "-":
                    negate = not negate
            else:
                break
        node = self.power()
        return Neg(node) if negate else node

    def power(self):
        node = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            sign = 1
            kind, val = self.peek()
            if kind == "op" and val == "-":
                self.take()
                sign = -1
            kind, val = self.take()
            if kind != "num":
                raise ParseError("exponent must be an integer literal")
            return Pow(node, sign * val)
        return node

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return Num(Rat(val))
        if kind == "name":
            return Var(val)
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        raise ParseError(f"unexpected token {val!r}")


def parse_expr(text: str):
    """Text to abstract syntax; raises ParseError on malformed input."""
    if not text or not text.strip():
        raise ParseError("empty expression")
    return _Parser(_tokenize(text)).parse()


_COEFF_SYMBOLS = {"q": (1, 0, 0), "u": (0, 1, 0), "v": (0, 0, 1)}


class _Algebra:
    """Evaluation hooks shared by the three target spaces."""

    def const(self, value):
        raise NotImplementedError

    def var(self, name: str):
        raise NotImplementedError

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        raise NotImplementedError

    def as_coeff(self, a):
        """The Scalar content of a coefficient-valued element, else None."""
        raise NotImplementedError

    def scale(self, a, c: Scalar):
        return a.scale(c)


def _evaluate(node, alg: _Algebra):
    if isinstance(node, Num):
        return alg.const(Scalar(node.value))
    if isinstance(node, Var):
        if node.name in _COEFF_SYMBOLS:
            return alg.const(qmono(*_COEFF_SYMBOLS[node.name]))
        return alg.var(node.name)
    if isinstance(node, Neg):
        return alg.neg(_evaluate(node.arg, alg))
    if isinstance(node, Pow):
        base = _evaluate(node.base, alg)
        n = node.exponent
        if n < 0:
            c = alg.as_coeff(base)
            if c is None:
                raise ParseError("negative powers only apply to coefficients")
            if c.is_zero():
                raise ParseError("zero has no negative power")
            return alg.const(c**n)
        out = alg.const(ONE)
        for _ in range(n):
            out = alg.mul(out, base)
        return out
    if isinstance(node, BinOp):
        a = _evaluate(node.left, alg)
        b = _evaluate(node.right, alg)
        if node.op == "+":
            return alg.add(a, b)
        if node.op == "-":
            return alg.add(a, alg.neg(b))
        if node.op == "*":
            return alg.mul(a, b)
        c = alg.as_coeff(b)
        if c is None:
            raise ParseError("division only by coefficient-valued expressions")
        if c.is_zero():
            raise ParseError("division by zero")
        return alg.scale(a, c.inv())
    raise ParseError(f"cannot evaluate node {node!r}")


class _PlaneAlgebra(_Algebra):
    def const(self, value: Scalar):
        return QPlanePoly({(0, 0): value})

    def var(self, name: str):
        if name == "x":
            return QPlanePoly.monomial(1, 0)
        if name == "y":
            return QPlanePoly.monomial(0, 1)
        raise ParseError(f"symbol {name!r} is not a plane variable")

    def mul(self, a, b):
        return qp_mul(a, b)

    def as_coeff(self, a):
        if not a.terms:
            return Scalar(0)
        if set(a.terms) == {(0, 0)}:
            return a.terms[(0, 0)]
        return None


class _FreeTX:
    """Commutative (t, X) polynomial without the j <= i constraint; the
    constraint is checked once on the final parse result."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: c for k, c in (terms or {}).items() if not c.is_zero()}

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            out[k] = c if s is None else s + c
        return _FreeTX(out)

    def __neg__(self):
        return _FreeTX({k: -c for k, c in self.terms.items()})

    def scale(self, c: Scalar):
        return _FreeTX({k: x * c for k, x in self.terms.items()})


class _TXAlgebra(_Algebra):
    def const(self, value: Scalar):
        return _FreeTX({(0, 0): value})

    def var(self, name: str):
        if name == "t":
            return _FreeTX({(1, 0): ONE})
        if name == "X":
            return _FreeTX({(0, 1): ONE})
        raise ParseError(f"symbol {name!r} is not a (t, X) variable")

    def mul(self, a, b):
        out: dict = {}
        for (i1, j1), c1 in a.terms.items():
            for (i2, j2), c2 in b.terms.items():
                key = (i1 + i2, j1 + j2)
                c = c1 * c2
                s = out.get(key)
                out[key] = c if s is None else s + c
        return _FreeTX(out)

    def as_coeff(self, a):
        if not a.terms:
            return Scalar(0)
        if set(a.terms) == {(0, 0)}:
            return a.terms[(0, 0)]
        return None


class _OneAlgebra(_Algebra):
    def __init__(self, allowed: tuple):
        self.allowed = allowed
        self.seen: str | None = None

    def const(self, value: Scalar):
        return UniPoly({0: value})

    def var(self, name: str):
        if name not in self.allowed:
            raise ParseError(f"symbol {name!r} is not admissible here")
        if self.seen is None:
            self.seen = name
        elif self.seen != name:
            raise DomainError(
                f"one-variable input mixes {self.seen!r} and {name!r}"
            )
        return UniPoly.monomial(1)

    def mul(self, a, b):
        return a * b

    def as_coeff(self, a):
        if not a.terms:
            return Scalar(0)
        if set(a.terms) == {0}:
            return a.terms[0]
        return None


def parse_plane(text: str) -> QPlanePoly:
    """Parse a quantum-plane expression; products are normal-ordered."""
    return _evaluate(parse_expr(text), _PlaneAlgebra())


def parse_tx(text: str) -> TXPoly:
    """Parse a (t, X) expression; raises DomainError outside C[t,tX]."""
    free = _evaluate(parse_expr(text), _TXAlgebra())
    return TXPoly(dict(free.terms))


def parse_unipoly(text: str, allowed: tuple = ("z", "x", "y"), var: str = "z") -> UniPoly:
    """Parse a one-variable polynomial; any single admissible letter maps to
    the canonical variable."""
    out = _evaluate(parse_expr(text), _OneAlgebra(allowed))
    return UniPoly(dict(out.terms), var)
