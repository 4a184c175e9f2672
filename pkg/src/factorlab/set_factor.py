"""Degree-set factors with ``H(v) ∈ {{1,3,…,f(v)}, {0,2,…,2N}}`` and H-criticality.

With ``f ≡ 1`` the two sets are ``{1}`` and ``{0,2}``.  Solving goes through
the parity-factor gadget solver after translating each set into an exact
parity interval.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence

from .errors import PreconditionError
from .graph import FactorSubgraph, Graph, attach_pendant, component_masks, iter_bits, to_mask
from .parity import ParityIntervalSpec, clamp_interval, solve_parity_factor

MAX_ENUMERATION_ORDER = 24


class Side(Enum):
    ODD = 1
    EVEN = 0


@dataclass(frozen=True)
class HAssignment:
    """Which of the two degree sets each vertex uses.

    ``odd_ones`` is the bitmask of vertices on the odd side.  ``odd_cap[v]`` is
    the largest odd degree allowed there; the even side is ``{0, 2, …, even_cap}``
    with ``even_cap = max(odd_cap) + 1``.
    """

    n: int
    odd_ones: int
    odd_cap: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "odd_cap", tuple(self.odd_cap))
        if len(self.odd_cap) != self.n:
            raise PreconditionError("odd_cap length must equal n")
        if self.odd_ones & ~((1 << self.n) - 1):
            raise PreconditionError("odd_ones has bits outside 0..n-1")
        for v, c in enumerate(self.odd_cap):
            if c < 1 or c % 2 == 0:
                raise PreconditionError(f"odd_cap({v}) = {c} is not a positive odd integer")

    @classmethod
    def from_sides(cls, odd_vertices, odd_cap: Sequence[int] | None = None, n: int | None = None) -> "HAssignment":
        if n is None:
            if odd_cap is None:
                raise PreconditionError("need n or odd_cap")
            n = len(odd_cap)
        return cls(n, to_mask(odd_vertices), tuple(odd_cap) if odd_cap is not None else (1,) * n)

    @classmethod
    def from_bitstring(cls, bits: str, odd_cap: Sequence[int] | None = None) -> "HAssignment":
        """``bits[v] == '1'`` puts vertex ``v`` on the odd side."""
        if set(bits) - {"0", "1"}:
            raise PreconditionError(f"assignment {bits!r} is not a bit-string")
        mask = sum(1 << v for v, ch in enumerate(bits) if ch == "1")
        caps = tuple(odd_cap) if odd_cap is not None else (1,) * len(bits)
        return cls(len(bits), mask, caps)

    @property
    def even_cap(self) -> int:
        return max(self.odd_cap, default=1) + 1

    def side(self, v: int) -> Side:
        return Side.ODD if self.odd_ones >> v & 1 else Side.EVEN

    def degree_set(self, v: int) -> range:
        if self.odd_ones >> v & 1:
            return range(1, self.odd_cap[v] + 1, 2)
        return range(0, self.even_cap + 1, 2)

    def odd_count(self) -> int:
        return self.odd_ones.bit_count()

    def bitstring(self) -> str:
        return "".join("1" if self.odd_ones >> v & 1 else "0" for v in range(self.n))

    def with_pendant(self) -> "HAssignment":
        """``H^x``: the new vertex ``n`` gets the set ``{1}``; the even cap is unchanged."""
        return HAssignment(self.n + 1, self.odd_ones | 1 << self.n, self.odd_cap + (1,))


@dataclass(frozen=True)
class CriticalityReport:
    critical: bool
    failures: tuple[int, ...]


def normalize_h(G: Graph, H: HAssignment, even_cap: int | None = None) -> ParityIntervalSpec:
    """Exact parity intervals of ``H`` on ``G``, clamped to the vertex degrees."""
    if H.n != G.n:
        raise PreconditionError("assignment length does not match the graph")
    cap = H.even_cap if even_cap is None else even_cap
    lower, upper, blocked = [], [], []
    for v in range(G.n):
        if H.odd_ones >> v & 1:
            lo, hi = clamp_interval(1, H.odd_cap[v], G.degree(v))
        else:
            lo, hi = clamp_interval(0, cap, G.degree(v))
        if lo > hi:
            blocked.append(v)
        lower.append(lo)
        upper.append(hi)
    return ParityIntervalSpec(tuple(lower), tuple(upper), tuple(blocked))


def solve_h_factor(G: Graph, H: HAssignment, even_cap: int | None = None) -> FactorSubgraph | None:
    return solve_parity_factor(G, normalize_h(G, H, even_cap))


def is_h_critical(G: Graph, H: HAssignment, stop_at_first: bool = False) -> CriticalityReport:
    """Check that ``G^x`` has an ``H^x``-factor for every vertex ``x``.

    The pendant vertex takes degree set ``{1}``; the even cap stays that of
    ``H`` on ``G``.
    """
    if H.n != G.n:
        raise PreconditionError("assignment length does not match the graph")
    Hx = H.with_pendant()
    failures = []
    for x in range(G.n):
        Gx, _ = attach_pendant(G, x)
        if solve_h_factor(Gx, Hx, H.even_cap) is None:
            failures.append(x)
            if stop_at_first:
                break
    return CriticalityReport(not failures, tuple(failures))


def choose_even_side(G: Graph, S: int, want_odd_ones: bool) -> int:
    """The set W (as a mask) from the necessity argument.

    Components of ``G − S`` are split into odd ones (``C_i``) and even ones
    (``D_j``).  With ``b ≥ 1`` even components, W takes the lowest vertex of
    each, dropping the highest-labelled pick if parity demands; with ``b = 0``
    W is empty or the lowest vertex of the first odd component.  The size of
    W is fixed by requiring ``n − |W|`` to be odd when ``want_odd_ones`` and even
    otherwise.
    """
    comps = component_masks(G.nbr, G.full_mask & ~S)
    odd_comps = [c for c in comps if c.bit_count() % 2]
    even_comps = [c for c in comps if not c.bit_count() % 2]
    want = 1 if want_odd_ones else 0
    if even_comps:
        picks = sorted((c & -c).bit_length() - 1 for c in even_comps)
        if (G.n - len(picks)) % 2 != want:
            picks = picks[:-1]
    else:
        if not odd_comps:
            raise PreconditionError("G − S' has no components")
        first = min(odd_comps, key=lambda c: c & -c)
        picks = [] if G.n % 2 == want else [(first & -first).bit_length() - 1]
    W = to_mask(picks)
    assert (G.n - W.bit_count()) % 2 == want
    return W


def counterexample_h(
    G: Graph, S_prime, want_odd_ones: bool, odd_cap: Sequence[int] | None = None
) -> HAssignment:
    """H with the even set on W and the odd set elsewhere; see :func:`choose_even_side`."""
    S = to_mask(S_prime)
    if not S:
        raise PreconditionError("S' must be nonempty")
    if S & ~G.full_mask:
        raise PreconditionError("S' must be a subset of V(G)")
    if not G.is_connected():
        raise PreconditionError("graph must be connected")
    W = choose_even_side(G, S, want_odd_ones)
    caps = tuple(odd_cap) if odd_cap is not None else (1,) * G.n
    return HAssignment(G.n, G.full_mask & ~W, caps)


def enumerate_h(n: int, odd_ones_parity: str, f: Sequence[int] | None = None) -> Iterator[HAssignment]:
    """All assignments whose odd side has the requested parity, in binary-counter order."""
    if n > MAX_ENUMERATION_ORDER:
        raise PreconditionError(f"refusing to enumerate 2^{n} assignments (limit n <= {MAX_ENUMERATION_ORDER})")
    if odd_ones_parity not in ("even", "odd"):
        raise PreconditionError("odd_ones_parity must be 'even' or 'odd'")
    want = 1 if odd_ones_parity == "odd" else 0
    caps = tuple(f) if f is not None else (1,) * n
    if len(caps) != n:
        raise PreconditionError("f length must equal n")
    for mask in range(1 << n):
        if mask.bit_count() % 2 == want:
            yield HAssignment(n, mask, caps)


def check_h_factor(G: Graph, H: HAssignment, F: FactorSubgraph, even_cap: int | None = None) -> bool:
    cap = H.even_cap if even_cap is None else even_cap
    if F.n != G.n or any(not G.has_edge(u, v) for u, v in F.edges):
        return False
    for v, d in enumerate(F.degrees):
        if H.odd_ones >> v & 1:
            if not (d % 2 == 1 and d <= H.odd_cap[v]):
                return False
        elif not (d % 2 == 0 and d <= cap):
            return False
    return True


def odd_side_vertices(H: HAssignment) -> list[int]:
    return list(iter_bits(H.odd_ones))
