"""Numpy fallback for the GF(2) elimination kernel."""

from __future__ import annotations

import numpy as np


def rref_inplace(words: np.ndarray, ncols: int) -> list[int]:
    """Reduce ``words`` to reduced row-echelon form in place; return pivot columns."""
    nrows = words.shape[0]
    pivots: list[int] = []
    rank = 0
    one = np.uint64(1)
    for col in range(ncols):
        if rank == nrows:
            break
        w = col >> 6
        shift = np.uint64(col & 63)
        hits = np.flatnonzero((words[:, w] >> shift) & one)
        below = hits[hits >= rank]
        if below.size == 0:
            continue
        p = int(below[0])
        if p != rank:
            words[[rank, p], w:] = words[[p, rank], w:]
            hits = np.flatnonzero((words[:, w] >> shift) & one)
        targets = hits[hits != rank]
        if targets.size:
            words[targets, w:] ^= words[rank, w:]
        pivots.append(col)
        rank += 1
    return pivots
