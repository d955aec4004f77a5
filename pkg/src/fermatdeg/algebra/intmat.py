"""Exact integer matrices with Hermite and Smith normal forms.

Everything here is pure Python over ``int``; no floating point.  The HNF is
row-style: the returned ``H`` has the same row span as the input, pivots are
positive, entries above a pivot lie in ``[0, pivot)`` and zero rows sit at the
bottom.  This makes ``H`` a canonical representative of the row lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


@dataclass(frozen=True)
class IntegerMatrix:
    """Immutable row-major integer matrix."""

    nrows: int
    ncols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.nrows < 0 or self.ncols < 0:
            raise ValueError("negative dimension")
        if len(self.entries) != self.nrows * self.ncols:
            raise ValueError("entry count does not match shape")
        for e in self.entries:
            if not isinstance(e, int) or isinstance(e, bool):
                raise TypeError(f"non-integer entry {e!r}")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: int | None = None) -> "IntegerMatrix":
        rows = [tuple(int(x) for x in r) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for an empty matrix")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "IntegerMatrix":
        return cls(nrows, ncols, (0,) * (nrows * ncols))

    @classmethod
    def diagonal(cls, diag: Sequence[int], nrows: int | None = None, ncols: int | None = None):
        nrows = len(diag) if nrows is None else nrows
        ncols = len(diag) if ncols is None else ncols
        rows = [[0] * ncols for _ in range(nrows)]
        for i, d in enumerate(diag):
            rows[i][i] = int(d)
        return cls.from_rows(rows, ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.ncols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.ncols:(i + 1) * self.ncols]

    def col(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.ncols] if self.ncols else ()

    def rows(self) -> list[tuple[int, ...]]:
        return [self.row(i) for i in range(self.nrows)]

    def tolist(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.nrows)]

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix.from_rows([self.col(j) for j in range(self.ncols)], self.nrows)

    @property
    def T(self) -> "IntegerMatrix":
        return self.transpose()

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = [other.col(j) for j in range(other.ncols)]
        out = []
        for i in range(self.nrows):
            r = self.row(i)
            out.append([sum(a * b for a, b in zip(r, c)) for c in cols])
        return IntegerMatrix.from_rows(out, other.ncols)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product M v."""
        if len(v) != self.ncols:
            raise ValueError("length mismatch")
        return tuple(sum(a * b for a, b in zip(self.row(i), v)) for i in range(self.nrows))

    def hstack(self, *others: "IntegerMatrix") -> "IntegerMatrix":
        mats = (self,) + others
        if any(m.nrows != self.nrows for m in mats):
            raise ValueError("row count mismatch")
        rows = [sum((m.row(i) for m in mats), ()) for i in range(self.nrows)]
        return IntegerMatrix.from_rows(rows, sum(m.ncols for m in mats))

    def submatrix(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None):
        rows = range(self.nrows) if rows is None else rows
        cols = range(self.ncols) if cols is None else cols
        return IntegerMatrix.from_rows([[self[i, j] for j in cols] for i in rows], len(cols))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_diagonal(self) -> bool:
        return all(self[i, j] == 0 for i in range(self.nrows) for j in range(self.ncols) if i != j)

    def determinant(self) -> int:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        return _bareiss_det([list(r) for r in self.rows()])

    def rank(self) -> int:
        return matrix_rank(self)

    def __repr__(self):
        return f"IntegerMatrix({self.tolist()!r})"


def _bareiss_det(a: list[list[int]]) -> int:
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def matrix_rank(M: IntegerMatrix) -> int:
    """Rank over Q by fraction-free elimination (independent of the HNF code)."""
    a = [list(r) for r in M.rows()]
    rank, col = 0, 0
    nr, nc = M.nrows, M.ncols
    while rank < nr and col < nc:
        piv = next((i for i in range(rank, nr) if a[i][col]), None)
        if piv is None:
            col += 1
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, nr):
            f = a[i][col]
            if f:
                a[i] = [p * x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
        col += 1
    return rank


def hermite_normal_form(M: IntegerMatrix) -> tuple[IntegerMatrix, IntegerMatrix]:
    """Row-style HNF.  Returns (H, U) with H = U @ M and U unimodular."""
    m, n = M.nrows, M.ncols
    A = [list(r) for r in M.rows()]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    r = 0
    for j in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            b = A[i][j]
            if b == 0:
                continue
            a = A[r][j]
            g, x, y = _xgcd(a, b)
            ag, bg = a // g, b // g
            Ar, Ai, Ur, Ui = A[r], A[i], U[r], U[i]
            A[r] = [x * s + y * t for s, t in zip(Ar, Ai)]
            A[i] = [ag * t - bg * s for s, t in zip(Ar, Ai)]
            U[r] = [x * s + y * t for s, t in zip(Ur, Ui)]
            U[i] = [ag * t - bg * s for s, t in zip(Ur, Ui)]
        p = A[r][j]
        if p == 0:
            continue
        if p < 0:
            A[r] = [-x for x in A[r]]
            U[r] = [-x for x in U[r]]
            p = -p
        for i in range(r):
            q = A[i][j] // p
            if q:
                A[i] = [s - q * t for s, t in zip(A[i], A[r])]
                U[i] = [s - q * t for s, t in zip(U[i], U[r])]
        r += 1
    return IntegerMatrix.from_rows(A, n), IntegerMatrix.from_rows(U, m)


def hnf_rows(rows: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """Nonzero rows of the HNF of the given generators, without the transform."""
    A = [list(r) for r in rows if any(r)]
    m = len(A)
    r = 0
    for j in range(ncols):
        if r == m:
            break
        for i in range(r + 1, m):
            b = A[i][j]
            if b == 0:
                continue
            a = A[r][j]
            g, x, y = _xgcd(a, b)
            ag, bg = a // g, b // g
            Ar, Ai = A[r], A[i]
            A[r] = [x * s + y * t for s, t in zip(Ar, Ai)]
            A[i] = [ag * t - bg * s for s, t in zip(Ar, Ai)]
        p = A[r][j]
        if p == 0:
            continue
        if p < 0:
            A[r] = [-x for x in A[r]]
            p = -p
        for i in range(r):
            q = A[i][j] // p
            if q:
                A[i] = [s - q * t for s, t in zip(A[i], A[r])]
        r += 1
    return [tuple(row) for row in A[:r]]


def smith_normal_form(M: IntegerMatrix) -> tuple[IntegerMatrix, IntegerMatrix, IntegerMatrix]:
    """Return (D, S, T) with D = S @ M @ T diagonal, d1 | d2 | ..., S and T unimodular."""
    m, n = M.nrows, M.ncols
    A = [list(r) for r in M.rows()]
    S = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    T = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        S[i], S[k] = S[k], S[i]

    def swap_cols(j, k):
        for row in A:
            row[j], row[k] = row[k], row[j]
        for row in T:
            row[j], row[k] = row[k], row[j]

    def add_row(dst, src, c):  # row_dst += c * row_src
        A[dst] = [s + c * t for s, t in zip(A[dst], A[src])]
        S[dst] = [s + c * t for s, t in zip(S[dst], S[src])]

    def add_col(dst, src, c):
        for row in A:
            row[dst] += c * row[src]
        for row in T:
            row[dst] += c * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = A[i][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            if best is None:
                break
            _, i0, j0 = best
            swap_rows(t, i0)
            swap_cols(t, j0)
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    clean = clean and A[t][j] == 0
            if not clean:
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            S[t] = [-x for x in S[t]]
        if best is None:
            break
    return (IntegerMatrix.from_rows(A, n), IntegerMatrix.from_rows(S, m),
            IntegerMatrix.from_rows(T, n))


def elementary_divisors(M: IntegerMatrix) -> list[int]:
    D, _, _ = smith_normal_form(M)
    return [D[i, i] for i in range(min(D.nrows, D.ncols)) if D[i, i]]


def rational_row_reduce(M: IntegerMatrix) -> list[list[Fraction]]:
    """Reduced row echelon form over Q (used only as a cross-check)."""
    a = [[Fraction(x) for x in r] for r in M.rows()]
    r = 0
    for j in range(M.ncols):
        piv = next((i for i in range(r, M.nrows) if a[i][j]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][j]
        a[r] = [x / p for x in a[r]]
        for i in range(M.nrows):
            if i != r and a[i][j]:
                f = a[i][j]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return a[:r]
