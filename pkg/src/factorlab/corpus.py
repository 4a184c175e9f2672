"""Exhaustive labelled corpora of connected graphs."""

from __future__ import annotations

from typing import Iterator

from .errors import PreconditionError
from .graph import Graph, reach_mask

MAX_CORPUS_ORDER = 7


def generate_connected(n: int) -> Iterator[Graph]:
    """Every connected labelled graph on ``n`` vertices, by edge bitmask ascending.

    Bit ``k`` of the edge mask is the ``k``-th pair in graph6 column order
    ``(0,1), (0,2), (1,2), (0,3), ...``, so the pairs of column ``j`` occupy
    a contiguous block and the highest column is the most significant.
    """
    if not 1 <= n <= MAX_CORPUS_ORDER:
        raise PreconditionError(f"corpus order must be in 1..{MAX_CORPUS_ORDER}, got {n}")
    full = (1 << n) - 1
    trusted = Graph._trusted

    def extend(j: int, nbr: list[int]) -> Iterator[Graph]:
        # Columns are chosen from the top down, so the column-0..j-1 loops vary fastest.
        if j == 0:
            if reach_mask(nbr, 1, full) == full:
                yield trusted(n, tuple(nbr))
            return
        for col in range(1 << j):
            row = list(nbr)
            row[j] |= col
            c = col
            while c:
                low = c & -c
                row[low.bit_length() - 1] |= 1 << j
                c ^= low
            yield from extend(j - 1, row)

    yield from extend(n - 1, [0] * n)


def count_connected_labelled(n: int) -> int:
    """Brute-force count over all 2^(n choose 2) edge sets, independent of the generator."""
    pairs = [(i, j) for j in range(n) for i in range(j)]
    full = (1 << n) - 1
    count = 0
    for mask in range(1 << len(pairs)):
        nbr = [0] * n
        for k, (i, j) in enumerate(pairs):
            if mask >> k & 1:
                nbr[i] |= 1 << j
                nbr[j] |= 1 << i
        if n <= 1 or reach_mask(nbr, 1, full) == full:
            count += 1
    return count
