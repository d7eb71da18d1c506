"""Dense exact linear algebra over Q(q, u, v).

Operators on finite graded pieces of the polynomial modules are stored as
``OpMatrix`` values: a rectangular array of Scalars together with the
ordered basis labels of the domain (cols) and codomain (rows).
"""

from __future__ import annotations

from .errors import DenominatorVanishes, SingularBasis, TruncationLeak
from .scalars import ONE, Rat, ZERO, Scalar

# rational sample points used to certify full rank before falling back to
# symbolic elimination (specializing can only lower the rank, so reaching
# the dimension cap at any point proves generic full rank)
_CERT_POINTS = (
    (Rat(3, 2), Rat(5, 3), Rat(7, 5)),
    (Rat(7, 3), Rat(11, 4), Rat(13, 6)),
    (Rat(23, 9), Rat(31, 7), Rat(17, 11)),
    (Rat(5, 4), Rat(19, 8), Rat(29, 13)),
)


class OpMatrix:
    """Matrix of a linear map span(cols) -> span(rows) over Q(q, u, v)."""

    __slots__ = ("rows", "cols", "a")

    def __init__(self, rows, cols, entries):
        self.rows = tuple(rows)
        self.cols = tuple(cols)
        if len(entries) != len(self.rows) or any(len(r) != len(self.cols) for r in entries):
            raise ValueError("entry array does not match basis sizes")
        self.a = entries

    @classmethod
    def from_images(cls, cols, rows, images) -> "OpMatrix":
        """Build from per-column coordinate dicts {row_label: Scalar}.

        Raises TruncationLeak if an image touches a label outside ``rows``.
        """
        rows = tuple(rows)
        index = {lbl: i for i, lbl in enumerate(rows)}
        a = [[ZERO] * len(cols) for _ in rows]
        for j, img in enumerate(images):
            for lbl, c in img.items():
                if c.is_zero():
                    continue
                i = index.get(lbl)
                if i is None:
                    raise TruncationLeak(
                        f"image component {lbl} falls outside the truncation"
                    )
                a[i][j] = c
        return cls(rows, cols, a)

    @classmethod
    def identity(cls, labels) -> "OpMatrix":
        labels = tuple(labels)
        n = len(labels)
        return cls(labels, labels, [[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    def shape(self):
        return len(self.rows), len(self.cols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OpMatrix):
            return NotImplemented
        if self.rows != other.rows or self.cols != other.cols:
            return False
        return all(
            x == y for ra, rb in zip(self.a, other.a) for x, y in zip(ra, rb)
        )

    __hash__ = None

    def __add__(self, other: "OpMatrix") -> "OpMatrix":
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("basis mismatch in matrix addition")
        return OpMatrix(
            self.rows,
            self.cols,
            [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(self.a, other.a)],
        )

    def __sub__(self, other: "OpMatrix") -> "OpMatrix":
        return self + other.scale(-ONE)

    def scale(self, c: Scalar) -> "OpMatrix":
        return OpMatrix(self.rows, self.cols, [[x * c for x in r] for r in self.a])

    def __matmul__(self, other: "OpMatrix") -> "OpMatrix":
        if self.cols != other.rows:
            raise ValueError("basis mismatch in matrix product")
        n, m, p = len(self.rows), len(other.cols), len(self.cols)
        out = []
        for i in range(n):
            ai = self.a[i]
            row = []
            for j in range(m):
                s = ZERO
                for k in range(p):
                    x = ai[k]
                    if not x.is_zero():
                        y = other.a[k][j]
                        if not y.is_zero():
                            s = s + x * y
                row.append(s)
            out.append(row)
        return OpMatrix(self.rows, other.cols, out)

    def adjoint(self, gram_rows: dict, gram_cols: dict) -> "OpMatrix":
        """Adjoint w.r.t. diagonal bilinear pairings on rows and cols.

        The result M* maps span(rows) -> span(cols) and satisfies
        <M a, b>_rows = <a, M* b>_cols entrywise.
        """
        out = []
        for i, cl in enumerate(self.cols):
            gi = gram_cols[cl]
            row = []
            for j, rl in enumerate(self.rows):
                row.append(self.a[j][i] * gram_rows[rl] / gi)
            out.append(row)
        return OpMatrix(self.cols, self.rows, out)

    def entry(self, row_label, col_label) -> Scalar:
        return self.a[self.rows.index(row_label)][self.cols.index(col_label)]

    def to_json(self):
        return {
            "rows": [list(r) if isinstance(r, tuple) else r for r in self.rows],
            "cols": [list(c) if isinstance(c, tuple) else c for c in self.cols],
            "entries": [[x.to_json() for x in row] for row in self.a],
        }

    def __repr__(self) -> str:
        return f"OpMatrix({len(self.rows)}x{len(self.cols)})"


def rank(rows: list) -> int:
    """Exact rank of a list of Scalar row vectors.

    Fast path: evaluate at rational sample points; a specialization can
    only lower the rank, so any point realizing the full dimension cap
    certifies the generic rank exactly.  Otherwise fall back to symbolic
    Gaussian elimination over Q(q, u, v).
    """
    if not rows or not rows[0]:
        return 0
    cap = min(len(rows), len(rows[0]))
    for pt in _CERT_POINTS:
        try:
            m = [[c.evaluate(*pt) for c in row] for row in rows]
        except DenominatorVanishes:
            continue
        if _rat_rank(m) == cap:
            return cap
    return _symbolic_rank(rows)


def _rat_rank(m: list) -> int:
    nrows, ncols = len(m), len(m[0])
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        for i in range(r + 1, nrows):
            f = m[i][c]
            if f != 0:
                f = f * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == nrows:
            break
    return r


def _symbolic_rank(rows: list) -> int:
    work = [list(r) for r in rows]
    ncols = len(work[0])
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(work)):
            if not work[i][c].is_zero():
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = work[r][c].inv()
        for i in range(r + 1, len(work)):
            f = work[i][c]
            if f.is_zero():
                continue
            f = f * inv
            work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        r += 1
        if r == len(work):
            break
    return r


def solve_square(a: list, bs: list) -> list:
    """Solve A x = b for each b in bs (A square, lists of Scalar rows).

    Returns the list of solution vectors; raises SingularBasis when A is
    singular.
    """
    n = len(a)
    m = len(bs)
    aug = [list(a[i]) + [bs[j][i] for j in range(m)] for i in range(n)]
    for c in range(n):
        piv = None
        for i in range(c, n):
            if not aug[i][c].is_zero():
                piv = i
                break
        if piv is None:
            raise SingularBasis("singular system in exact solve")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = aug[c][c].inv()
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c:
                f = aug[i][c]
                if not f.is_zero():
                    aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [[aug[i][n + j] for i in range(n)] for j in range(m)]


def kernel_dim(rows: list, ncols: int) -> int:
    """Dimension of the kernel of the matrix whose rows are given."""
    if not rows:
        return ncols
    return ncols - rank(rows)
