"""Parity (g, f)-factors: the Lovász deficiency, an exhaustive oracle, and a solver.

The oracle enumerates all disjoint pairs (S, T) and is deliberately naive.
The solver is independent of it: it reduces the degree constraints to a
perfect matching in a gadget graph and runs the blossom algorithm there.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .errors import PreconditionError
from .graph import FactorSubgraph, Graph, component_masks, from_mask, iter_bits, to_mask
from .matching import blossom_mates


@dataclass(frozen=True)
class ParityPair:
    """Per-vertex bounds ``g(v) ≤ f(v)`` of equal parity; ``g`` may be negative."""

    g: tuple[int, ...]
    f: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "g", tuple(self.g))
        object.__setattr__(self, "f", tuple(self.f))
        if len(self.g) != len(self.f):
            raise PreconditionError("g and f must have the same length")
        for v, (lo, hi) in enumerate(zip(self.g, self.f)):
            if lo > hi:
                raise PreconditionError(f"g({v}) = {lo} exceeds f({v}) = {hi}")
            if (hi - lo) % 2:
                raise PreconditionError(f"g({v}) and f({v}) differ in parity")

    def allows(self, v: int, degree: int) -> bool:
        return self.g[v] <= degree <= self.f[v] and (degree - self.f[v]) % 2 == 0


@dataclass(frozen=True)
class ParityIntervalSpec:
    """Degree set ``{lower, lower+2, ..., upper}`` per vertex.

    Vertices listed in ``infeasible_at`` admit no degree at all; their
    bounds are kept as given (possibly ``lower > upper``) for reporting.
    """

    lower: tuple[int, ...]
    upper: tuple[int, ...]
    infeasible_at: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "lower", tuple(self.lower))
        object.__setattr__(self, "upper", tuple(self.upper))
        object.__setattr__(self, "infeasible_at", tuple(sorted(set(self.infeasible_at))))
        if len(self.lower) != len(self.upper):
            raise PreconditionError("lower and upper must have the same length")
        blocked = set(self.infeasible_at)
        for v, (lo, hi) in enumerate(zip(self.lower, self.upper)):
            if v in blocked:
                continue
            if lo < 0 or hi < 0:
                raise PreconditionError(f"negative bound at vertex {v}")
            if lo > hi:
                raise PreconditionError(f"lower({v}) = {lo} exceeds upper({v}) = {hi}")
            if (hi - lo) % 2:
                raise PreconditionError(f"lower({v}) and upper({v}) differ in parity")

    @property
    def n(self) -> int:
        return len(self.lower)

    @property
    def feasible_shape(self) -> bool:
        return not self.infeasible_at

    def allows(self, v: int, degree: int) -> bool:
        if v in self.infeasible_at:
            return False
        lo, hi = self.lower[v], self.upper[v]
        return lo <= degree <= hi and (degree - lo) % 2 == 0

    def to_pairs(self) -> list[tuple[int, int]]:
        return list(zip(self.lower, self.upper))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "ParityIntervalSpec":
        pairs = list(pairs)
        return cls(tuple(lo for lo, _ in pairs), tuple(hi for _, hi in pairs))


@dataclass(frozen=True)
class EtaBreakdown:
    fS: int
    gT: int
    degT: int
    eST: int
    q: int
    eta: int


def clamp_interval(lo: int, hi: int, degree: int) -> tuple[int, int]:
    """Clip ``{lo, lo+2, ..., hi}`` to ``[0, degree]``; an empty result has ``lo > hi``."""
    parity = hi % 2
    lo = max(lo, parity)
    hi = min(hi, degree)
    if hi % 2 != parity:
        hi -= 1
    return lo, hi


def spec_from_pair(G: Graph, gf: ParityPair) -> ParityIntervalSpec:
    """Exact degree sets of a parity pair on ``G`` (drops the unreachable ends)."""
    lower, upper, blocked = [], [], []
    for v in range(G.n):
        lo, hi = clamp_interval(gf.g[v], gf.f[v], G.degree(v))
        if lo > hi:
            blocked.append(v)
        lower.append(lo)
        upper.append(hi)
    return ParityIntervalSpec(tuple(lower), tuple(upper), tuple(blocked))


def _check_disjoint(G: Graph, S: int, T: int) -> None:
    if S & T:
        raise PreconditionError("S and T must be disjoint")
    if (S | T) & ~G.full_mask:
        raise PreconditionError("S and T must be subsets of V(G)")


def q_count(G: Graph, f: Sequence[int], S: Iterable[int] | int, T: Iterable[int] | int) -> int:
    """Number of components C of G−S−T with f(C) + e_G(C, T) odd."""
    sm, tm = to_mask(S), to_mask(T)
    _check_disjoint(G, sm, tm)
    return _q_mask(G.nbr, G.full_mask & ~(sm | tm), tm, _odd_mask(f))


def _odd_mask(f: Sequence[int]) -> int:
    mask = 0
    for v, fv in enumerate(f):
        if fv % 2:
            mask |= 1 << v
    return mask


def _q_mask(nbr: Sequence[int], alive: int, T: int, fodd: int) -> int:
    q = 0
    for comp in component_masks(nbr, alive):
        parity = (comp & fodd).bit_count()
        for x in iter_bits(T):
            parity += (nbr[x] & comp).bit_count()
        q += parity & 1
    return q


def eta(G: Graph, gf: ParityPair, S: Iterable[int] | int, T: Iterable[int] | int) -> EtaBreakdown:
    """η(S,T) = f(S) − g(T) + Σ_{x∈T} deg(x) − e_G(S,T) − q(S,T), term by term."""
    if len(gf.f) != G.n:
        raise PreconditionError("parity pair length does not match the graph")
    sm, tm = to_mask(S), to_mask(T)
    _check_disjoint(G, sm, tm)
    nbr = G.nbr
    fS = sum(gf.f[v] for v in iter_bits(sm))
    gT = sum(gf.g[v] for v in iter_bits(tm))
    degT = sum(nbr[v].bit_count() for v in iter_bits(tm))
    eST = sum((nbr[v] & tm).bit_count() for v in iter_bits(sm))
    q = _q_mask(nbr, G.full_mask & ~(sm | tm), tm, _odd_mask(gf.f))
    return EtaBreakdown(fS, gT, degT, eST, q, fS - gT + degT - eST - q)


@dataclass(frozen=True)
class ParityVerdict:
    feasible: bool
    witness: tuple[frozenset[int], frozenset[int]] | None = None
    breakdown: EtaBreakdown | None = None


def parity_feasible_oracle(G: Graph, gf: ParityPair) -> ParityVerdict:
    """Scan all 3^n labellings (free / S / T) for a pair with η(S,T) < 0.

    Labellings are visited as a ternary counter with vertex 0 as the least
    significant digit (0 = free, 1 = S, 2 = T); the first violation wins.
    """
    if len(gf.f) != G.n:
        raise PreconditionError("parity pair length does not match the graph")
    if not G.is_connected():
        raise PreconditionError("the parity-factor criterion is stated for connected graphs")
    n, nbr, full = G.n, G.nbr, G.full_mask
    f, g = gf.f, gf.g
    deg = [m.bit_count() for m in nbr]
    fodd = _odd_mask(f)
    for digits in product(range(3), repeat=n):
        sm = tm = 0
        fS = gT = degT = 0
        # product() varies its last slot fastest, so slot i holds vertex n-1-i.
        for i, d in enumerate(digits):
            if d:
                v = n - 1 - i
                if d == 1:
                    sm |= 1 << v
                    fS += f[v]
                else:
                    tm |= 1 << v
                    gT += g[v]
                    degT += deg[v]
        eST = 0
        for v in iter_bits(sm):
            eST += (nbr[v] & tm).bit_count()
        partial = fS - gT + degT - eST
        alive = full & ~(sm | tm)
        # q(S,T) is at most the number of remaining vertices.
        if partial >= alive.bit_count():
            continue
        q = _q_mask(nbr, alive, tm, fodd)
        if partial - q < 0:
            return ParityVerdict(
                False,
                (from_mask(sm), from_mask(tm)),
                EtaBreakdown(fS, gT, degT, eST, q, partial - q),
            )
    return ParityVerdict(True)


def lemma1_residue(G: Graph, gf: ParityPair, S: Iterable[int] | int, T: Iterable[int] | int) -> bool:
    """True iff η(S,T) ≡ f(V(G)) (mod 2)."""
    return (eta(G, gf, S, T).eta - sum(gf.f)) % 2 == 0


# --- constructive solver -----------------------------------------------------


def build_gadget(
    G: Graph, spec: ParityIntervalSpec
) -> tuple[list[list[int]], dict[int, tuple[int, tuple[int, int]]]]:
    """Gadget graph whose perfect matchings correspond to spec-satisfying factors.

    Vertex ``v`` becomes one port per incident edge plus ``deg(v) − lower(v)``
    inner vertices, every port joined to every inner vertex; the first
    ``upper(v) − lower(v)`` inner vertices are additionally paired off.  Each
    edge of ``G`` joins its two ports.  A port left for a port–port edge means
    that edge is in the factor, so ``deg_F(v) = lower(v) + 2·(#inner pairs used)``.

    Returns the adjacency lists and, for each edge of ``G``, the map
    ``port -> (partner port, original edge)``.
    """
    adj: list[list[int]] = []
    port_of: dict[tuple[int, int], int] = {}
    for v in range(G.n):
        deg = G.degree(v)
        lo, hi = spec.lower[v], spec.upper[v]
        ports = list(range(len(adj), len(adj) + deg))
        for u in iter_bits(G.nbr[v]):
            port_of[(v, u)] = len(adj)
            adj.append([])
        inner = list(range(len(adj), len(adj) + deg - lo))
        for _ in inner:
            adj.append(list(ports))
        for p in ports:
            adj[p].extend(inner)
        for k in range(0, hi - lo, 2):
            a, b = inner[k], inner[k + 1]
            adj[a].append(b)
            adj[b].append(a)
    link: dict[int, tuple[int, tuple[int, int]]] = {}
    for u, v in G.edges:
        a, b = port_of[(u, v)], port_of[(v, u)]
        adj[a].append(b)
        adj[b].append(a)
        link[a] = (b, (u, v))
    return adj, link


def solve_parity_factor(G: Graph, spec: ParityIntervalSpec) -> FactorSubgraph | None:
    """A spanning subgraph with every degree in its spec set, or ``None``."""
    if spec.n != G.n:
        raise PreconditionError("spec length does not match the graph")
    if spec.infeasible_at:
        return None
    lower, upper = [], []
    for v in range(G.n):
        lo, hi = clamp_interval(spec.lower[v], spec.upper[v], G.degree(v))
        if lo > hi:
            return None
        lower.append(lo)
        upper.append(hi)
    # Handshake: the degree sum is even, and every degree has the parity of its lower bound.
    if sum(lower) % 2:
        return None
    clamped = ParityIntervalSpec(tuple(lower), tuple(upper))
    adj, link = build_gadget(G, clamped)
    mate = blossom_mates(adj, perfect_only=True)
    if mate is None:
        return None
    edges = [edge for a, (b, edge) in link.items() if mate[a] == b]
    return FactorSubgraph.from_edges(G.n, edges)
