"""Bit-packed linear algebra over the two-element field.

Rows are packed little-endian into ``uint64`` words: column ``j`` of a row is
bit ``j % 64`` of word ``j // 64``.  Padding bits past ``cols`` stay zero.

The elimination kernel comes from a compiled extension when one was built and
from a numpy implementation otherwise.  Set ``MEDIALMU_GF2_BACKEND=python`` to
force the fallback.
"""

from __future__ import annotations

import os
from typing import Callable, Iterable, Sequence

import numpy as np

from . import _kernel_py

KERNELS: dict[str, Callable[[np.ndarray, int], list[int]]] = {"python": _kernel_py.rref_inplace}
try:
    from . import _kernel as _kernel_c
except ImportError:  # extension not built
    _kernel_c = None
else:
    KERNELS["compiled"] = _kernel_c.rref_inplace

_requested = os.environ.get("MEDIALMU_GF2_BACKEND", "").strip().lower()
if _requested and _requested not in KERNELS:
    _requested = ""
BACKEND: str = _requested or ("compiled" if "compiled" in KERNELS else "python")

__all__ = [
    "BACKEND",
    "KERNELS",
    "GF2Matrix",
    "row_reduce",
    "rank",
    "nullity",
    "null_space_basis",
]


def _nwords(cols: int) -> int:
    return (cols + 63) >> 6


class GF2Matrix:
    """Dense bit-packed matrix; treat instances as immutable."""

    __slots__ = ("rows", "cols", "_words")

    def __init__(self, rows: int, cols: int, words: np.ndarray | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.rows = rows
        self.cols = cols
        if words is None:
            words = np.zeros((rows, _nwords(cols)), dtype=np.uint64)
        else:
            words = np.ascontiguousarray(words, dtype=np.uint64)
            if words.shape != (rows, _nwords(cols)):
                raise ValueError(f"word array has shape {words.shape}")
            if cols % 64 and rows:
                tail = np.uint64((1 << (cols % 64)) - 1)
                if np.any(words[:, -1] & ~tail):
                    raise ValueError("padding bits must be zero")
        words.flags.writeable = False
        self._words = words

    # -- construction ------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "GF2Matrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "GF2Matrix":
        words = np.zeros((n, _nwords(n)), dtype=np.uint64)
        for i in range(n):
            words[i, i >> 6] = np.uint64(1) << np.uint64(i & 63)
        return cls(n, n, words)

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]] | np.ndarray) -> "GF2Matrix":
        arr = np.asarray(dense, dtype=np.uint8) & 1
        if arr.ndim != 2:
            if arr.size == 0:
                arr = arr.reshape(0, 0)
            else:
                raise ValueError("expected a 2-d array")
        rows, cols = arr.shape
        padded = np.zeros((rows, _nwords(cols) * 64), dtype=np.uint8)
        padded[:, :cols] = arr
        packed = np.packbits(padded, axis=1, bitorder="little")
        words = packed.view("<u8").astype(np.uint64) if rows else np.zeros((0, _nwords(cols)), np.uint64)
        return cls(rows, cols, words.reshape(rows, _nwords(cols)))

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[tuple[int, int]]) -> "GF2Matrix":
        """Sum (mod 2) of unit entries; repeated positions cancel."""
        words = np.zeros((rows, _nwords(cols)), dtype=np.uint64)
        for i, j in entries:
            words[i, j >> 6] ^= np.uint64(1) << np.uint64(j & 63)
        return cls(rows, cols, words)

    # -- access ------------------------------------------------------------

    @property
    def words(self) -> np.ndarray:
        return self._words

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return int((self._words[i, j >> 6] >> np.uint64(j & 63)) & np.uint64(1))

    def to_dense(self) -> np.ndarray:
        if self.rows == 0:
            return np.zeros((0, self.cols), dtype=np.uint8)
        as_bytes = self._words.astype("<u8").view(np.uint8).reshape(self.rows, -1)
        return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, : self.cols]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GF2Matrix):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self._words, other._words)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._words.tobytes()))

    def __repr__(self) -> str:
        return f"GF2Matrix({self.rows}x{self.cols})"

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and np.array_equal(self.to_dense(), self.to_dense().T)

    def matvec(self, v: Sequence[int]) -> np.ndarray:
        vec = np.asarray(v, dtype=np.uint8) & 1
        if vec.shape != (self.cols,):
            raise ValueError(f"vector length {vec.shape} != {self.cols}")
        return (self.to_dense().astype(np.int64) @ vec.astype(np.int64) % 2).astype(np.uint8)

    def permute_rows(self, order: Sequence[int]) -> "GF2Matrix":
        return GF2Matrix(self.rows, self.cols, self._words[list(order)])


def _kernel(backend: str | None) -> Callable[[np.ndarray, int], list[int]]:
    name = backend or BACKEND
    try:
        return KERNELS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(KERNELS)}") from None


def row_reduce(m: GF2Matrix, backend: str | None = None) -> tuple[GF2Matrix, list[int]]:
    """Reduced row-echelon form and strictly increasing pivot columns."""
    work = np.array(m.words, dtype=np.uint64, order="C", copy=True)
    pivots = list(_kernel(backend)(work, m.cols))
    return GF2Matrix(m.rows, m.cols, work), pivots


def rank(m: GF2Matrix, backend: str | None = None) -> int:
    return len(row_reduce(m, backend)[1])


def nullity(m: GF2Matrix, backend: str | None = None) -> int:
    return m.cols - rank(m, backend)


def null_space_basis(m: GF2Matrix, backend: str | None = None) -> list[tuple[int, ...]]:
    """One kernel vector per free column, read off the reduced form."""
    reduced, pivots = row_reduce(m, backend)
    top = reduced.words[: len(pivots)]
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [0] * m.cols
        v[free] = 1
        column = (top[:, free >> 6] >> np.uint64(free & 63)) & np.uint64(1)
        for i in np.flatnonzero(column):
            v[pivots[i]] = 1
        basis.append(tuple(v))
    return basis
