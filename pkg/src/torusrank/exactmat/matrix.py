"""Dense integer matrices with exact (arbitrary-precision) arithmetic."""

from __future__ import annotations

import operator
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

from ..errors import DimensionError

ColVec = tuple[int, ...]


@dataclass(frozen=True)
class Mat:
    """Immutable ``rows x cols`` integer matrix stored row-major.

    Indices are 0-based. Entries are Python ints, so no operation ever
    overflows or rounds.
    """

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise DimensionError(f"matrix shape must be positive, got {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    # construction -------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> Mat:
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise DimensionError("matrix must have at least one row and column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionError("ragged rows")
        return cls(len(rows), width, tuple(_as_int(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> Mat:
        return cls.from_rows(list(zip(*columns)))

    @classmethod
    def identity(cls, n: int) -> Mat:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Mat:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def diag(cls, values: Sequence[int]) -> Mat:
        n = len(values)
        return cls(n, n, tuple(values[i] if i == j else 0 for i in range(n) for j in range(n)))

    # access ---------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"index {ij} out of range for {self.rows}x{self.cols}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> ColVec:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> ColVec:
        return self.entries[j::self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list[ColVec]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self) -> Mat:
        return Mat.from_rows(self.columns())

    # arithmetic -----------------------------------------------------------

    def __matmul__(self, other: Mat) -> Mat:
        return mat_mul(self, other)

    def __add__(self, other: Mat) -> Mat:
        self._check_same_shape(other)
        return Mat(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: Mat) -> Mat:
        self._check_same_shape(other)
        return Mat(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> Mat:
        return Mat(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c: int) -> Mat:
        return Mat(self.rows, self.cols, tuple(c * a for a in self.entries))

    def shift(self, lam: int) -> Mat:
        """Return ``self - lam * I``."""
        if not self.is_square:
            raise DimensionError("shift needs a square matrix")
        n = self.cols
        return Mat(self.rows, self.cols, tuple(
            a - lam if k % (n + 1) == 0 else a for k, a in enumerate(self.entries)
        ))

    def apply(self, v: Sequence[int]) -> ColVec:
        """Matrix-vector product ``self @ v``."""
        if len(v) != self.cols:
            raise DimensionError(f"cannot apply {self.rows}x{self.cols} matrix to vector of dim {len(v)}")
        c = self.cols
        e = self.entries
        return tuple(sum(e[i * c + j] * v[j] for j in range(c) if v[j]) for i in range(self.rows))

    def hstack(self, other: Mat) -> Mat:
        if self.rows != other.rows:
            raise DimensionError("hstack needs equal row counts")
        return Mat.from_rows([self.row(i) + other.row(i) for i in range(self.rows)])

    def submatrix(self, row_idx: Iterable[int], col_idx: Iterable[int]) -> Mat:
        col_idx = list(col_idx)
        return Mat.from_rows([[self[i, j] for j in col_idx] for i in row_idx])

    def is_zero(self) -> bool:
        return not any(self.entries)

    def _check_same_shape(self, other: Mat) -> None:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __str__(self) -> str:
        width = max(len(str(x)) for x in self.entries)
        return "\n".join(" ".join(str(x).rjust(width) for x in self.row(i)) for i in range(self.rows))


def _as_int(x) -> int:
    if isinstance(x, bool):
        raise TypeError(f"matrix entries must be integers, got {x!r}")
    try:
        return operator.index(x)
    except TypeError:
        raise TypeError(f"matrix entries must be integers, got {x!r}") from None


def mat_mul(a: Mat, b: Mat) -> Mat:
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    bcols = b.columns()
    out = []
    for i in range(a.rows):
        r = a.row(i)
        for c in bcols:
            out.append(sum(x * y for x, y in zip(r, c)))
    return Mat(a.rows, b.cols, tuple(out))


def det(a: Mat) -> int:
    """Exact determinant by Bareiss fraction-free elimination with row pivoting."""
    if not a.is_square:
        raise DimensionError(f"determinant of non-square {a.rows}x{a.cols} matrix")
    m = a.to_rows()
    n = a.rows
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                # exact: Sylvester's identity guarantees divisibility
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def gcd_values(values: Iterable[int]) -> int:
    """gcd of absolute values; 0 for an empty or all-zero collection."""
    return reduce(gcd, values, 0)


def gcd_entries(a: Mat) -> int:
    return gcd_values(a.entries)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b = g = gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y
