"""Small dense matrices over any exact field (Fraction, RatFunc, CycloNum).

Columns are images of basis vectors: ``M[:, k]`` holds the coordinates of the
image of the k-th basis vector, so ``(M @ N)`` acts as "apply N, then M".
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

import numpy as np

__all__ = ["Matrix", "SingularMatrix"]


class SingularMatrix(ZeroDivisionError):
    """Raised when inverting or solving with a singular matrix."""


def _is_zero(x) -> bool:
    return x == 0


class Matrix:
    """Immutable dense matrix with exact entries.

    >>> from fractions import Fraction
    >>> m = Matrix([[1, 2], [3, 4]]).map(Fraction)
    >>> m.inverse() @ m == Matrix.identity(2, Fraction(1))
    True
    >>> m.det()
    Fraction(-2, 1)
    """

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Sequence]):
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, n: int, one=1, zero=None) -> "Matrix":
        zero = one - one if zero is None else zero
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, m: int, n: int, zero=0) -> "Matrix":
        return cls([[zero] * n for _ in range(m)])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> "Matrix":
        return cls(list(zip(*cols))) if cols else cls([])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        if isinstance(i, slice) or isinstance(j, slice):
            rows = self.rows[i] if isinstance(i, slice) else [self.rows[i]]
            return Matrix([r[j] if isinstance(j, slice) else [r[j]] for r in rows])
        return self.rows[i][j]

    def column(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def columns(self) -> list[list]:
        return [self.column(j) for j in range(self.ncols)]

    def map(self, f: Callable) -> "Matrix":
        return Matrix([[f(x) for x in r] for r in self.rows])

    @property
    def T(self) -> "Matrix":
        return Matrix(list(zip(*self.rows))) if self.rows else self

    def conj(self) -> "Matrix":
        return self.map(lambda x: x.conj() if hasattr(x, "conj") else x)

    @property
    def H(self) -> "Matrix":
        return self.conj().T

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix":
        return self.map(lambda x: -x)

    def scale(self, c) -> "Matrix":
        return self.map(lambda x: c * x)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = other.columns()
            return Matrix([[_dot(r, c) for c in cols] for r in self.rows])
        return [_dot(r, other) for r in self.rows]

    def __pow__(self, k: int) -> "Matrix":
        if k < 0:
            return self.inverse() ** (-k)
        one = self._one()
        result = Matrix.identity(self.nrows, one)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s)
        )

    __hash__ = None

    def is_zero(self) -> bool:
        return all(_is_zero(x) for r in self.rows for x in r)

    def trace(self):
        t = self.rows[0][0]
        for i in range(1, self.nrows):
            t = t + self.rows[i][i]
        return t

    def _one(self):
        x = self.rows[0][0]
        return x ** 0 if not isinstance(x, int) else 1

    def _zero(self):
        x = self.rows[0][0]
        return x - x

    # ---- elimination -------------------------------------------------
    def rref(self) -> tuple["Matrix", list[int]]:
        """Reduced row echelon form and pivot columns."""
        m = [list(r) for r in self.rows]
        pivots: list[int] = []
        row = 0
        for col in range(self.ncols):
            piv = next((i for i in range(row, self.nrows) if not _is_zero(m[i][col])), None)
            if piv is None:
                continue
            m[row], m[piv] = m[piv], m[row]
            inv = 1 / m[row][col]
            m[row] = [x * inv for x in m[row]]
            for i in range(self.nrows):
                if i != row and not _is_zero(m[i][col]):
                    f = m[i][col]
                    m[i] = [a - f * b for a, b in zip(m[i], m[row])]
            pivots.append(col)
            row += 1
            if row == self.nrows:
                break
        return Matrix(m), pivots

    def rank(self) -> int:
        return len(self.rref()[1]) if self.nrows and self.ncols else 0

    def nullspace(self) -> list[list]:
        """Basis of {x : M x = 0} as coordinate lists."""
        red, pivots = self.rref()
        zero, one = self._zero(), self._one()
        free = [j for j in range(self.ncols) if j not in pivots]
        basis = []
        for f in free:
            v = [zero] * self.ncols
            v[f] = one
            for i, p in enumerate(pivots):
                v[p] = -red.rows[i][f]
            basis.append(v)
        return basis

    def left_nullspace(self) -> list[list]:
        """Basis of {x : x^T M = 0}."""
        return self.T.nullspace()

    def solve(self, b: Sequence) -> list:
        """One solution of M x = b; raises SingularMatrix if inconsistent."""
        aug = Matrix([list(r) + [bi] for r, bi in zip(self.rows, b)])
        red, pivots = aug.rref()
        if self.ncols in pivots:
            raise SingularMatrix("inconsistent linear system")
        x = [self._zero()] * self.ncols
        for i, p in enumerate(pivots):
            x[p] = red.rows[i][self.ncols]
        return x

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValueError("only square matrices are invertible")
        n = self.nrows
        one, zero = self._one(), self._zero()
        aug = Matrix([list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(self.rows)])
        red, pivots = aug.rref()
        if pivots[:n] != list(range(n)):
            raise SingularMatrix("matrix is singular")
        return Matrix([r[n:] for r in red.rows])

    def det(self):
        m = [list(r) for r in self.rows]
        n = self.nrows
        d = self._one()
        for c in range(n):
            piv = next((i for i in range(c, n) if not _is_zero(m[i][c])), None)
            if piv is None:
                return self._zero()
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                d = -d
            d = d * m[c][c]
            inv = 1 / m[c][c]
            for i in range(c + 1, n):
                if not _is_zero(m[i][c]):
                    f = m[i][c] * inv
                    m[i] = [a - f * b for a, b in zip(m[i], m[c])]
        return d

    def charpoly(self) -> list:
        """Coefficients (low degree first) of det(x I - M), via Faddeev-LeVerrier."""
        n = self.nrows
        one = self._one()
        coeffs = [None] * (n + 1)
        coeffs[n] = one
        Mk = Matrix.identity(n, one)
        for k in range(1, n + 1):
            AM = self @ Mk
            c = -AM.trace() * (one / k if not isinstance(one, int) else _frac(1, k))
            coeffs[n - k] = c
            Mk = AM + Matrix.identity(n, one).scale(c)
        return coeffs

    def to_complex(self, embed: Callable = complex) -> np.ndarray:
        return np.array([[embed(x) for x in r] for r in self.rows], dtype=complex)

    def __repr__(self):
        return "Matrix(" + ",\n       ".join(repr(list(r)) for r in self.rows) + ")"


def _frac(a, b):
    from fractions import Fraction

    return Fraction(a, b)


def _dot(r, c):
    acc = None
    for a, b in zip(r, c):
        if _is_zero(a) or _is_zero(b):
            continue
        t = a * b
        acc = t if acc is None else acc + t
    if acc is None:
        x = r[0] if r else 0
        return x - x if not isinstance(x, int) else 0
    return acc
