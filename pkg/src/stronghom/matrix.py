"""Immutable dense integer matrices with exact (unbounded) entries."""

from __future__ import annotations

import operator
from typing import Iterable, Sequence

from . import kernels


class IntMatrix:
    """A ``nrows x ncols`` matrix of Python ints.

    Zero-sized matrices are legal; they carry their shape explicitly so a
    ``0 x 3`` matrix and a ``3 x 0`` matrix are different objects.
    """

    __slots__ = ("_rows", "_shape", "_hash")

    def __init__(self, rows: Iterable[Sequence[int]] = (), shape: tuple[int, int] | None = None):
        data = tuple(tuple(int(x) for x in r) for r in rows)
        if shape is None:
            if not data:
                raise ValueError("shape is required for a matrix without rows")
            shape = (len(data), len(data[0]))
        m, n = shape
        if len(data) != m or any(len(r) != n for r in data):
            raise ValueError(f"rows do not match shape {shape}")
        self._rows = data
        self._shape = (m, n)
        self._hash = None

    @classmethod
    def _raw(cls, data: tuple, shape: tuple[int, int]) -> IntMatrix:
        """Wrap already-validated tuple rows of ints without copying or checks."""
        obj = object.__new__(cls)
        obj._rows = data
        obj._shape = shape
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def zeros(cls, m: int, n: int) -> IntMatrix:
        row = (0,) * n
        return cls._raw((row,) * m, (m, n))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls.scalar(n, 1)

    @classmethod
    def scalar(cls, n: int, k: int) -> IntMatrix:
        z = (0,) * n
        return cls._raw(tuple(z[:i] + (k,) + z[i + 1:] for i in range(n)), (n, n))

    @classmethod
    def diagonal(cls, entries: Sequence[int], shape: tuple[int, int] | None = None) -> IntMatrix:
        if shape is None:
            shape = (len(entries), len(entries))
        m, n = shape
        rows = [[0] * n for _ in range(m)]
        for i, e in enumerate(entries):
            rows[i][i] = e
        return cls(rows, shape)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int) -> IntMatrix:
        cols = [tuple(c) for c in columns]
        return cls._raw(tuple(tuple(int(c[i]) for c in cols) for i in range(nrows)), (nrows, len(cols)))

    @classmethod
    def block(cls, grid: Sequence[Sequence[IntMatrix]]) -> IntMatrix:
        """Assemble a block matrix; block rows share heights, block columns share widths."""
        heights = [row[0].nrows for row in grid]
        widths = [b.ncols for b in grid[0]] if grid else []
        rows: list[list[int]] = []
        for bi, brow in enumerate(grid):
            if len(brow) != len(widths):
                raise ValueError("ragged block grid")
            for b, w in zip(brow, widths):
                if b.shape != (heights[bi], w):
                    raise ValueError(f"block of shape {b.shape}, expected {(heights[bi], w)}")
            for i in range(heights[bi]):
                rows.append(tuple(x for b in brow for x in b._rows[i]))
        return cls._raw(tuple(rows), (sum(heights), sum(widths)))

    @classmethod
    def block_diag(cls, blocks: Sequence[IntMatrix]) -> IntMatrix:
        m = sum(b.nrows for b in blocks)
        n = sum(b.ncols for b in blocks)
        rows = [[0] * n for _ in range(m)]
        r0 = c0 = 0
        for b in blocks:
            for i, row in enumerate(b._rows):
                rows[r0 + i][c0:c0 + b.ncols] = row
            r0 += b.nrows
            c0 += b.ncols
        return cls._raw(tuple(map(tuple, rows)), (m, n))

    @classmethod
    def hstack(cls, blocks: Sequence[IntMatrix], nrows: int | None = None) -> IntMatrix:
        if not blocks:
            if nrows is None:
                raise ValueError("nrows needed for an empty hstack")
            return cls.zeros(nrows, 0)
        m = blocks[0].nrows
        if any(b.nrows != m for b in blocks):
            raise ValueError("hstack needs equal row counts")
        return cls._raw(tuple(tuple(x for b in blocks for x in b._rows[i]) for i in range(m)),
                        (m, sum(b.ncols for b in blocks)))

    @classmethod
    def vstack(cls, blocks: Sequence[IntMatrix], ncols: int | None = None) -> IntMatrix:
        if not blocks:
            if ncols is None:
                raise ValueError("ncols needed for an empty vstack")
            return cls.zeros(0, ncols)
        n = blocks[0].ncols
        if any(b.ncols != n for b in blocks):
            raise ValueError("vstack needs equal column counts")
        return cls._raw(tuple(r for b in blocks for r in b._rows), (sum(b.nrows for b in blocks), n))

    # accessors

    @property
    def shape(self) -> tuple[int, int]:
        return self._shape

    @property
    def nrows(self) -> int:
        return self._shape[0]

    @property
    def ncols(self) -> int:
        return self._shape[1]

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    def row(self, i: int) -> tuple[int, ...]:
        return self._rows[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._rows)

    @property
    def columns(self) -> list[tuple[int, ...]]:
        return [self.col(j) for j in range(self.ncols)]

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    @property
    def T(self) -> IntMatrix:
        m, n = self._shape
        return IntMatrix._raw(tuple(zip(*self._rows)) if m else ((),) * n, (n, m))

    def submatrix(self, rows: range | Sequence[int], cols: range | Sequence[int]) -> IntMatrix:
        return self.select_rows(rows).select_columns(cols)

    def select_columns(self, cols: Sequence[int]) -> IntMatrix:
        cols = list(cols)
        m = self._shape[0]
        if not cols:
            return IntMatrix._raw(((),) * m, (m, 0))
        a, b = cols[0], cols[-1] + 1
        if cols == list(range(a, b)):
            return IntMatrix._raw(tuple(r[a:b] for r in self._rows), (m, b - a))
        if len(cols) == 1:
            return IntMatrix._raw(tuple((r[a],) for r in self._rows), (m, 1))
        pick = operator.itemgetter(*cols)
        return IntMatrix._raw(tuple(pick(r) for r in self._rows), (m, len(cols)))

    def select_rows(self, rows: Sequence[int]) -> IntMatrix:
        rows = list(rows)
        src = self._rows
        return IntMatrix._raw(tuple(src[i] for i in rows), (len(rows), self._shape[1]))

    # arithmetic

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        m, k = self._shape
        k2, n = other._shape
        if k != k2:
            raise ValueError(f"cannot multiply {self._shape} by {other._shape}")
        if m == 0 or n == 0 or k == 0:
            return IntMatrix.zeros(m, n)
        return IntMatrix._raw(tuple(map(tuple, kernels.matmul(self._rows, other._rows, m, k, n))), (m, n))

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.ncols:
            raise ValueError("vector length does not match matrix width")
        return tuple(sum(a * b for a, b in zip(r, v) if a and b) for r in self._rows)

    def _zip(self, other: IntMatrix, op) -> IntMatrix:
        if self._shape != other._shape:
            raise ValueError(f"shape mismatch {self._shape} vs {other._shape}")
        return IntMatrix._raw(tuple(tuple(op(a, b) for a, b in zip(r, s))
                                    for r, s in zip(self._rows, other._rows)), self._shape)

    def __add__(self, other: IntMatrix) -> IntMatrix:
        return self._zip(other, operator.add)

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return self._zip(other, operator.sub)

    def __neg__(self) -> IntMatrix:
        return IntMatrix._raw(tuple(tuple(-x for x in r) for r in self._rows), self._shape)

    def __mul__(self, k: int) -> IntMatrix:
        if not isinstance(k, int):
            return NotImplemented
        return IntMatrix._raw(tuple(tuple(k * x for x in r) for r in self._rows), self._shape)

    __rmul__ = __mul__

    # predicates

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._rows for x in r)

    def is_identity(self) -> bool:
        m, n = self._shape
        return m == n and all(x == (1 if i == j else 0)
                              for i, r in enumerate(self._rows) for j, x in enumerate(r))

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self._shape == other._shape and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._shape, self._rows))
        return self._hash

    def __repr__(self) -> str:
        if self.nrows == 0 or self.ncols == 0:
            return f"IntMatrix(shape={self._shape})"
        return f"IntMatrix({[list(r) for r in self._rows]})"
