"""Exact rational scalars and dense rational matrices.

Rationals are :class:`fractions.Fraction`; matrices are small immutable
row-major containers.  Rank uses Bareiss fraction-free elimination on the
integer matrix obtained by clearing row denominators.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

Rational = Fraction


class InconsistentSystem(ValueError):
    """Raised by :func:`solve_linear` when ``a x = b`` has no solution."""


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: every quantity in this package is exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    num, sep, den = text.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed rational {text!r}") from None
    if d == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(n, d)


def format_rational(q) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class RationalMatrix:
    """Immutable dense matrix of Fractions, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(to_rational(e) for e in entries)
        if len(entries) != rows * cols:
            raise ValueError(
                f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}"
            )
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, [e for r in rows for e in r])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, [int(i == j) for i in range(n) for j in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def tolists(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            self.cols, self.rows,
            [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)],
        )

    T = property(transpose)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = [other.column(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.extend(sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in ocols)
        return RationalMatrix(self.rows, other.cols, out)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        v = [to_rational(x) for x in v]
        return tuple(
            sum((a * b for a, b in zip(self.row(i), v) if a and b), Fraction(0))
            for i in range(self.rows)
        )

    def hstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return RationalMatrix.from_rows(
            [self.row(i) + other.row(i) for i in range(self.rows)], self.cols + other.cols
        )

    def with_column(self, v: Sequence) -> "RationalMatrix":
        if len(v) != self.rows:
            raise ValueError("vector length mismatch")
        return RationalMatrix.from_rows(
            [self.row(i) + (to_rational(v[i]),) for i in range(self.rows)], self.cols + 1
        )

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix.from_rows([[self[i, j] for j in cols] for i in rows], len(cols))

    def scale_rows(self, factors: Sequence) -> "RationalMatrix":
        return RationalMatrix.from_rows(
            [[to_rational(factors[i]) * e for e in self.row(i)] for i in range(self.rows)], self.cols
        )

    def scale_columns(self, factors: Sequence) -> "RationalMatrix":
        fs = [to_rational(f) for f in factors]
        return RationalMatrix.from_rows(
            [[e * fs[j] for j, e in enumerate(self.row(i))] for i in range(self.rows)], self.cols
        )

    def support(self) -> frozenset:
        return frozenset(
            (i, j) for i in range(self.rows) for j in range(self.cols) if self.entries[i * self.cols + j]
        )

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(e) for e in self.row(i)) for i in range(self.rows))
        return f"RationalMatrix({self.rows}x{self.cols}: [{body}])"


def _as_matrix(m) -> RationalMatrix:
    if isinstance(m, RationalMatrix):
        return m
    return RationalMatrix.from_rows(m)


def _integer_rows(m: RationalMatrix) -> list[list[int]]:
    """Scale each row by the lcm of its denominators (rank-preserving)."""
    out = []
    for i in range(m.rows):
        r = m.row(i)
        den = lcm(*(e.denominator for e in r)) if r else 1
        out.append([int(e * den) for e in r])
    return out


def bareiss_echelon(a: list[list[int]]) -> list[tuple[int, int]]:
    """In-place fraction-free elimination of an integer matrix.

    Returns the pivot positions ``(row, col)``.  Pivots are chosen as the
    first nonzero entry scanning columns left to right, rows top to bottom.
    Every division performed is exact (Sylvester's identity).
    """
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c]), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        prow = a[r]
        for i in range(r + 1, nrows):
            row = a[i]
            f = row[c]
            for j in range(c + 1, ncols):
                row[j] = (piv * row[j] - f * prow[j]) // prev
            row[c] = 0
        prev = piv
        pivots.append((r, c))
        r += 1
    return pivots


def rank(m) -> int:
    """Exact rank over the rationals."""
    m = _as_matrix(m)
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(bareiss_echelon(_integer_rows(m)))


def rref(m) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form with Fraction arithmetic; returns (rows, pivot columns)."""
    m = _as_matrix(m)
    a = m.tolists()
    pivcols = []
    r = 0
    for c in range(m.cols):
        p = next((i for i in range(r, m.rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [e * inv for e in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivcols.append(c)
        r += 1
        if r == m.rows:
            break
    return a, pivcols


def nullspace(m) -> list[tuple[Fraction, ...]]:
    """Basis of the right null space, one vector per free column."""
    m = _as_matrix(m)
    a, pivcols = rref(m)
    free = [j for j in range(m.cols) if j not in pivcols]
    basis = []
    for fj in free:
        v = [Fraction(0)] * m.cols
        v[fj] = Fraction(1)
        for r, pc in enumerate(pivcols):
            v[pc] = -a[r][fj]
        basis.append(tuple(v))
    return basis


def solve_linear(a, b: Sequence) -> tuple[Fraction, ...]:
    """One exact solution of ``a x = b``.

    Free variables are set to zero when the solution is not unique; callers
    needing uniqueness must compare ``rank(a)`` with the column count.
    Raises :class:`InconsistentSystem` when no solution exists.
    """
    a = _as_matrix(a)
    if len(b) != a.rows:
        raise ValueError("right-hand side length mismatch")
    aug, pivcols = rref(a.with_column(b))
    if a.cols in pivcols:
        raise InconsistentSystem("linear system is inconsistent")
    x = [Fraction(0)] * a.cols
    for r, pc in enumerate(pivcols):
        x[pc] = aug[r][a.cols]
    return tuple(x)


def in_column_span(m, v: Sequence) -> bool:
    """True iff ``v`` is a linear combination of the columns of ``m``."""
    m = _as_matrix(m)
    if len(v) != m.rows:
        raise ValueError("vector length must equal the row count")
    return rank(m.with_column(v)) == rank(m)


def determinant(m) -> Fraction:
    m = _as_matrix(m)
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    dens = [lcm(*(e.denominator for e in m.row(i))) for i in range(n)]
    a = [[int(e * dens[i]) for e in m.row(i)] for i in range(n)]
    sign = 1
    prev = 1
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        piv = a[c][c]
        for i in range(c + 1, n):
            f = a[i][c]
            for j in range(c + 1, n):
                a[i][j] = (piv * a[i][j] - f * a[c][j]) // prev
            a[i][c] = 0
        prev = piv
    den = 1
    for d in dens:
        den *= d
    return Fraction(sign * a[n - 1][n - 1], den)
