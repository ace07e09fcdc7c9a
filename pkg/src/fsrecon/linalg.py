"""Exact rank computation over the rationals."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

__all__ = ["rational_rank"]


def rational_rank(rows: Sequence[Sequence[int | Fraction]]) -> int:
    """Rank of a matrix given as rows of ints or Fractions.

    Plain Gaussian elimination; the pivot in each column is the candidate
    entry with the largest numerator magnitude, which keeps intermediate
    fractions from blowing up on the integer matrices used here.
    """
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    for col in range(n_cols):
        pivot, best = None, 0
        for r in range(rank, n_rows):
            mag = abs(m[r][col].numerator)
            if m[r][col] != 0 and mag > best:
                pivot, best = r, mag
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [v * inv for v in m[rank]]
        for r in range(n_rows):
            if r != rank and m[r][col]:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == n_rows:
            break
    return rank
