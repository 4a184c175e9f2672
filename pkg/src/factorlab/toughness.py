"""Exact checks of the component-count conditions ``ω(G−S) ≤ f(S) + slack``.

All checks scan vertex subsets popcount-major, numeric-minor, so the first
violator found is also a smallest one.  Everything is exponential in ``n``
on purpose; the graphs of interest have at most a handful of vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Sequence

from .errors import PreconditionError
from .graph import Graph, count_components, from_mask, iter_bits


@dataclass(frozen=True)
class ConditionVerdict:
    holds: bool
    witness: frozenset[int] | None
    scanned: int

    def __post_init__(self) -> None:
        if self.holds != (self.witness is None):
            raise ValueError("a verdict holds exactly when it carries no witness")


@dataclass(frozen=True)
class Classification:
    eq5: bool
    eq6: bool
    eq8: bool
    eq9: bool


@lru_cache(maxsize=None)
def masks_by_popcount(n: int) -> tuple[tuple[int, ...], ...]:
    """All subsets of ``range(n)`` grouped by size; each group ascending."""
    groups = []
    full = (1 << n) - 1
    for k in range(n + 1):
        group = []
        if k == 0:
            group.append(0)
        else:
            m = (1 << k) - 1
            while m <= full:
                group.append(m)
                # Gosper's hack: next larger integer with the same popcount.
                low = m & -m
                ripple = m + low
                m = (((ripple ^ m) >> 2) // low) | ripple
        groups.append(tuple(group))
    return tuple(groups)


def subsets_in_scan_order(n: int, include_empty: bool = False) -> Iterator[int]:
    for group in masks_by_popcount(n)[0 if include_empty else 1 :]:
        yield from group


def scan_subsets(
    n: int,
    violates: Callable[[int], bool],
    include_empty: bool = False,
) -> ConditionVerdict:
    """First subset mask (scan order) for which ``violates`` is true."""
    scanned = 0
    for mask in subsets_in_scan_order(n, include_empty):
        scanned += 1
        if violates(mask):
            return ConditionVerdict(False, from_mask(mask), scanned)
    return ConditionVerdict(True, None, scanned)


def _check_weights(G: Graph, f: Sequence[int]) -> None:
    if len(f) != G.n:
        raise PreconditionError(f"weight vector has length {len(f)}, graph has {G.n} vertices")
    for v, fv in enumerate(f):
        if fv < 1 or fv % 2 == 0:
            raise PreconditionError(f"f({v}) = {fv} is not a positive odd integer")


def _require_connected(G: Graph) -> None:
    if not G.is_connected():
        raise PreconditionError("graph must be connected")


def _exceeds(nbr: tuple[int, ...], alive: int, bound: int) -> bool:
    # Component count with early exit once it passes ``bound``.
    count = 0
    rest = alive
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            grow = 0
            for v in iter_bits(frontier):
                grow |= nbr[v]
            frontier = grow & alive & ~comp
            comp |= frontier
        count += 1
        if count > bound:
            return True
        rest &= ~comp
    return False


def condition_check(G: Graph, f: Sequence[int] | None = None, slack: int = 0) -> ConditionVerdict:
    """Check ``ω(G−S) ≤ f(S) + slack`` over the relevant subsets.

    ``slack=1`` quantifies over every ``S`` including the empty set, ``slack=0``
    over nonempty ``S`` only.  ``f=None`` means ``f ≡ 1``.
    """
    if slack not in (0, 1):
        raise PreconditionError("slack must be 0 or 1")
    _require_connected(G)
    weights = [1] * G.n if f is None else list(f)
    _check_weights(G, weights)
    n, nbr, full = G.n, G.nbr, G.full_mask

    def violates(mask: int) -> bool:
        bound = slack
        for v in iter_bits(mask):
            bound += weights[v]
        # At most n - |S| components remain.
        if n - mask.bit_count() <= bound:
            return False
        return _exceeds(nbr, full & ~mask, bound)

    return scan_subsets(n, violates, include_empty=slack == 1)


def condition_check_naive(G: Graph, f: Sequence[int] | None = None, slack: int = 0) -> ConditionVerdict:
    """Same contract as :func:`condition_check`, computing every component count in full."""
    _require_connected(G)
    weights = [1] * G.n if f is None else list(f)
    _check_weights(G, weights)

    def violates(mask: int) -> bool:
        omega, _, _ = count_components(G.nbr, G.full_mask & ~mask)
        return omega > sum(weights[v] for v in iter_bits(mask)) + slack

    return scan_subsets(G.n, violates, include_empty=slack == 1)


def is_1_tough(G: Graph) -> ConditionVerdict:
    return condition_check(G, None, slack=0)


def classify(G: Graph, f: Sequence[int]) -> Classification:
    """Verdicts of the four conditions: |S|+1, |S|, f(S)+1 and f(S)."""
    return Classification(
        eq5=condition_check(G, None, 1).holds,
        eq6=condition_check(G, None, 0).holds,
        eq8=condition_check(G, f, 1).holds,
        eq9=condition_check(G, f, 0).holds,
    )


def odd_condition_check(G: Graph) -> ConditionVerdict:
    """``odd(G−S) ≤ |S|`` for all nonempty ``S``."""
    _require_connected(G)
    nbr, full = G.nbr, G.full_mask
    return scan_subsets(
        G.n, lambda mask: count_components(nbr, full & ~mask)[1] > mask.bit_count()
    )


def iso_condition_check(G: Graph) -> ConditionVerdict:
    """``iso(G−S) ≤ |S|`` for all nonempty ``S``."""
    _require_connected(G)
    nbr, full = G.nbr, G.full_mask

    def violates(mask: int) -> bool:
        alive = full & ~mask
        isolated = sum(1 for v in iter_bits(alive) if not nbr[v] & alive)
        return isolated > mask.bit_count()

    return scan_subsets(G.n, violates)
