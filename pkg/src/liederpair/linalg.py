"""Exact dense linear algebra over the rationals.

Scalars are ``fractions.Fraction`` (arbitrary precision, always normalized,
positive denominator).  Matrices are dense and row-major.  Everything here is
deterministic: rank by fraction-free Bareiss elimination on integer-cleared
rows, kernel bases and particular solutions by reduced row echelon form with
free columns taken in increasing index order and free variables set to 0 and 1
respectively.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def rat(x) -> Fraction:
    """Parse a rational from an int, Fraction, or a string "p" / "p/q"."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if "/" in s:
            p, q = s.split("/", 1)
            den = int(q)
            if den == 0:
                raise ValueError(f"zero denominator in rational {x!r}")
            return Fraction(int(p), den)
        return Fraction(int(s))
    raise TypeError(f"cannot interpret {x!r} as a rational")


def rat_str(x: Fraction) -> str:
    """Canonical string form: "p" when the denominator is 1, else "p/q"."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


ZERO = Fraction(0)
ONE = Fraction(1)


def vec_add(u, v):
    return [a + b for a, b in zip(u, v)]


def vec_sub(u, v):
    return [a - b for a, b in zip(u, v)]


def vec_scale(c, u):
    return [c * a for a in u]


def vec_is_zero(u) -> bool:
    return all(a == 0 for a in u)


def zero_vec(n):
    return [ZERO] * n


class Matrix:
    """Dense rows x cols matrix of Fractions."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data):
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError("matrix data does not match declared shape")
        self.rows = rows
        self.cols = cols
        self.data = [[rat(x) for x in r] for r in data]

    @classmethod
    def from_rows(cls, data) -> "Matrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        return cls(rows, cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [[ZERO] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        m = cls.zeros(n, n)
        for i in range(n):
            m.data[i][i] = ONE
        return m

    @classmethod
    def diagonal(cls, entries) -> "Matrix":
        n = len(entries)
        m = cls.zeros(n, n)
        for i, e in enumerate(entries):
            m.data[i][i] = rat(e)
        return m

    @classmethod
    def from_columns(cls, columns, rows: int | None = None) -> "Matrix":
        if not columns:
            if rows is None:
                raise ValueError("need an explicit row count for a 0-column matrix")
            return cls.zeros(rows, 0)
        r = len(columns[0])
        return cls(r, len(columns), [[columns[j][i] for j in range(len(columns))] for i in range(r)])

    def __getitem__(self, key):
        i, j = key
        return self.data[i][j]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __repr__(self) -> str:
        body = "; ".join(" ".join(rat_str(x) for x in row) for row in self.data)
        return f"Matrix({self.rows}x{self.cols}: {body})"

    def copy(self) -> "Matrix":
        return Matrix(self.rows, self.cols, [row[:] for row in self.data])

    def row(self, i):
        return self.data[i][:]

    def column(self, j):
        return [self.data[i][j] for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, [vec_add(a, b) for a, b in zip(self.data, other.data)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, [vec_sub(a, b) for a, b in zip(self.data, other.data)])

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        c = rat(c)
        return Matrix(self.rows, self.cols, [vec_scale(c, row) for row in self.data])

    def __mul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = Matrix.zeros(self.rows, other.cols)
        for i in range(self.rows):
            row = self.data[i]
            for j in range(other.cols):
                out.data[i][j] = sum((row[k] * other.data[k][j] for k in range(self.cols)), ZERO)
        return out

    def apply(self, v):
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise ValueError(f"vector length {len(v)} does not match {self.rows}x{self.cols}")
        return [sum((row[k] * v[k] for k in range(self.cols)), ZERO) for row in self.data]

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ValueError("row counts differ")
        return Matrix(self.rows, self.cols + other.cols, [a + b for a, b in zip(self.data, other.data)])

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise ValueError("column counts differ")
        return Matrix(self.rows + other.rows, self.cols, [r[:] for r in self.data] + [r[:] for r in other.data])

    @staticmethod
    def block(grid) -> "Matrix":
        """Assemble a matrix from a 2D grid of blocks (each row of blocks hstacked)."""
        rows = None
        for block_row in grid:
            acc = block_row[0]
            for b in block_row[1:]:
                acc = acc.hstack(b)
            rows = acc if rows is None else rows.vstack(acc)
        return rows

    def _same_shape(self, other: "Matrix"):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    # -- elimination ------------------------------------------------------

    def rank(self) -> int:
        """Rank over Q by fraction-free (Bareiss) elimination.

        Rows are cleared to integers first (multiplying a row by the lcm of
        its denominators does not change the rank), so every intermediate
        division below is an exact integer division.
        """
        a = []
        for row in self.data:
            l = 1
            for x in row:
                l = l * x.denominator // gcd(l, x.denominator)
            a.append([int(x * l) for x in row])
        nrows, ncols = self.rows, self.cols
        prev = 1
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
            if piv is None:
                continue
            if piv != r:
                a[r], a[piv] = a[piv], a[r]
            ar = a[r]
            for i in range(r + 1, nrows):
                # every row must be rescaled, even on a zero entry, or the
                # Sylvester-identity divisions below stop being exact
                ai = a[i]
                aic = ai[c]
                for j in range(c + 1, ncols):
                    ai[j] = (ai[j] * ar[c] - aic * ar[j]) // prev
                ai[c] = 0
            prev = ar[c]
            r += 1
        return r

    def rref(self):
        """Reduced row echelon form; returns (matrix, pivot column list)."""
        a = [row[:] for row in self.data]
        nrows, ncols = self.rows, self.cols
        pivots = []
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            inv = ONE / a[r][c]
            a[r] = [x * inv for x in a[r]]
            for i in range(nrows):
                if i != r and a[i][c] != 0:
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
            pivots.append(c)
            r += 1
        return Matrix(nrows, ncols, a), pivots

    def kernel_basis(self):
        """Canonical basis of the right kernel.

        One vector per free column, in increasing column order; each has a 1
        in its free slot and the back-solved pivot entries elsewhere.
        """
        red, pivots = self.rref()
        pivot_set = set(pivots)
        basis = []
        for free in range(self.cols):
            if free in pivot_set:
                continue
            v = zero_vec(self.cols)
            v[free] = ONE
            for r, pc in enumerate(pivots):
                v[pc] = -red.data[r][free]
            basis.append(v)
        return basis

    def solve(self, b):
        """A particular solution x of self @ x = b (free variables 0), or None."""
        if len(b) != self.rows:
            raise ValueError(f"right-hand side length {len(b)} does not match {self.rows} rows")
        aug = Matrix(self.rows, self.cols + 1, [row + [rat(x)] for row, x in zip(self.data, b)])
        red, pivots = aug.rref()
        if pivots and pivots[-1] == self.cols:
            return None
        x = zero_vec(self.cols)
        for r, pc in enumerate(pivots):
            x[pc] = red.data[r][self.cols]
        return x

    def column_space_contains(self, v) -> bool:
        return self.solve(v) is not None

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("only square matrices can be inverted")
        aug = self.hstack(Matrix.identity(self.rows))
        red, pivots = aug.rref()
        if pivots[: self.rows] != list(range(self.rows)):
            raise ValueError("matrix is singular")
        return Matrix(self.rows, self.rows, [row[self.rows :] for row in red.data])
