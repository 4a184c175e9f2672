"""Simple undirected graphs on vertices ``0..n-1``.

Adjacency is stored as one neighbour bitmask per vertex, which keeps the
exhaustive subset scans elsewhere in the package cheap.  Vertex sets are
accepted as any iterable of ints; the ``*_mask`` helpers work directly on
bitmasks for inner loops.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import Graph6Error, PreconditionError, UnsupportedSizeError

MAX_GRAPH6_ORDER = 62


def to_mask(vertices: Iterable[int] | int) -> int:
    if isinstance(vertices, int):
        return vertices
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def from_mask(mask: int) -> frozenset[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph.  ``nbr[v]`` is the neighbour bitmask of ``v``."""

    n: int
    nbr: tuple[int, ...]
    _edges: tuple[tuple[int, int], ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self) -> None:
        if len(self.nbr) != self.n:
            raise PreconditionError("neighbour table length must equal n")
        full = (1 << self.n) - 1
        for v, m in enumerate(self.nbr):
            if m & ~full:
                raise PreconditionError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if m >> v & 1:
                raise PreconditionError(f"self-loop at vertex {v}")
            for u in iter_bits(m):
                if not self.nbr[u] >> v & 1:
                    raise PreconditionError(f"asymmetric adjacency between {v} and {u}")
        if not self._edges:
            object.__setattr__(
                self,
                "_edges",
                tuple((u, v) for v in range(self.n) for u in iter_bits(self.nbr[v]) if u < v),
            )

    @classmethod
    def _trusted(cls, n: int, nbr: tuple[int, ...]) -> "Graph":
        # Skips validation; only for generators that build adjacency themselves.
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "nbr", nbr)
        object.__setattr__(
            g, "_edges", tuple((u, v) for v in range(n) for u in iter_bits(nbr[v]) if u < v)
        )
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise PreconditionError("vertex count must be non-negative")
        nbr = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise PreconditionError(f"self-loop at vertex {u}")
            nbr[u] |= 1 << v
            nbr[v] |= 1 << u
        return cls(n, tuple(nbr))

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges as ``(u, v)`` with ``u < v``, sorted by ``(v, u)`` (graph6 column order)."""
        return self._edges

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return self.nbr[v].bit_count()

    def degrees(self) -> list[int]:
        return [m.bit_count() for m in self.nbr]

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.nbr[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and 0 <= v < self.n and bool(self.nbr[u] >> v & 1)

    def is_connected(self) -> bool:
        return self.n <= 1 or reach_mask(self.nbr, 1, self.full_mask) == self.full_mask

    def __str__(self) -> str:
        return encode_graph6(self) if self.n <= MAX_GRAPH6_ORDER else f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class ComponentStats:
    omega: int
    odd: int
    iso: int
    components: tuple[frozenset[int], ...]


# --- bitmask kernels -------------------------------------------------------


def reach_mask(nbr: tuple[int, ...] | list[int], seed: int, alive: int) -> int:
    """Vertices of ``alive`` reachable from the ``seed`` mask."""
    seen = seed & alive
    frontier = seen
    while frontier:
        grow = 0
        for v in iter_bits(frontier):
            grow |= nbr[v]
        frontier = grow & alive & ~seen
        seen |= frontier
    return seen


def component_masks(nbr: tuple[int, ...] | list[int], alive: int) -> list[int]:
    """Connected components of the subgraph induced by ``alive``, lowest vertex first."""
    comps = []
    rest = alive
    while rest:
        comp = reach_mask(nbr, rest & -rest, alive)
        comps.append(comp)
        rest &= ~comp
    return comps


def count_components(nbr: tuple[int, ...] | list[int], alive: int) -> tuple[int, int, int]:
    """``(omega, odd, iso)`` of the subgraph induced by ``alive``."""
    omega = odd = iso = 0
    rest = alive
    while rest:
        comp = reach_mask(nbr, rest & -rest, alive)
        rest &= ~comp
        size = comp.bit_count()
        omega += 1
        if size & 1:
            odd += 1
            if size == 1:
                iso += 1
    return omega, odd, iso


# --- graph operations ------------------------------------------------------


def delete_vertices(G: Graph, S: Iterable[int] | int) -> Graph:
    """``G - S`` with survivors relabelled ``0..n-|S|-1`` in original order."""
    drop = to_mask(S)
    if drop & ~G.full_mask:
        raise PreconditionError("deleted set is not a subset of V(G)")
    keep = [v for v in range(G.n) if not drop >> v & 1]
    index = {v: i for i, v in enumerate(keep)}
    edges = [(index[u], index[v]) for u, v in G.edges if u in index and v in index]
    return Graph.from_edges(len(keep), edges)


def surviving_vertices(G: Graph, S: Iterable[int] | int) -> list[int]:
    """Original labels of ``G - S`` in their new order, for translating witnesses back."""
    drop = to_mask(S)
    return [v for v in range(G.n) if not drop >> v & 1]


def component_stats(G: Graph) -> ComponentStats:
    comps = component_masks(G.nbr, G.full_mask)
    sizes = [c.bit_count() for c in comps]
    return ComponentStats(
        omega=len(comps),
        odd=sum(1 for s in sizes if s % 2),
        iso=sum(1 for s in sizes if s == 1),
        components=tuple(from_mask(c) for c in comps),
    )


def edge_cut_count(G: Graph, X: Iterable[int] | int, Y: Iterable[int] | int) -> int:
    """e_G(X, Y); an edge with both ends in X ∩ Y counts twice."""
    xm, ym = to_mask(X), to_mask(Y)
    total = 0
    for v in iter_bits(xm):
        total += (G.nbr[v] & ym).bit_count()
    return total


def attach_pendant(G: Graph, x: int) -> tuple[Graph, int]:
    """G^x: add vertex ``n`` joined only to ``x``.  Returns the graph and the new id."""
    if not 0 <= x < G.n:
        raise PreconditionError(f"vertex {x} out of range for n={G.n}")
    new = G.n
    nbr = list(G.nbr)
    nbr[x] |= 1 << new
    nbr.append(1 << x)
    return Graph._trusted(G.n + 1, tuple(nbr)), new


# --- graph6 ----------------------------------------------------------------


def encode_graph6(G: Graph) -> str:
    if G.n > MAX_GRAPH6_ORDER:
        raise UnsupportedSizeError(f"graph6 encoding supports n <= {MAX_GRAPH6_ORDER}, got {G.n}")
    bits = []
    for j in range(1, G.n):
        row = G.nbr[j]
        for i in range(j):
            bits.append(row >> i & 1)
    bits.extend([0] * (-len(bits) % 6))
    out = [chr(G.n + 63)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    s = text.strip("\r\n")
    if not s:
        raise Graph6Error("empty graph6 record")
    for pos, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ch!r} outside 63..126", pos)
    n = ord(s[0]) - 63
    if n > MAX_GRAPH6_ORDER:
        raise Graph6Error("multi-byte size field (n >= 63) is not supported", 0)
    nbits = n * (n - 1) // 2
    want = 1 + (nbits + 5) // 6
    if len(s) != want:
        raise Graph6Error(f"record length {len(s)} does not match n={n} (expected {want})",
                          min(len(s), want))
    nbr = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(s[1 + k // 6]) - 63
            if byte >> (5 - k % 6) & 1:
                nbr[i] |= 1 << j
                nbr[j] |= 1 << i
            k += 1
    pad = -nbits % 6
    if pad:
        last = ord(s[-1]) - 63
        if last & ((1 << pad) - 1):
            raise Graph6Error("nonzero padding bits", len(s) - 1)
    return Graph._trusted(n, tuple(nbr))


def parse_edge_list(text: str) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"``; blank lines and ``#`` comments ignored."""
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows or len(rows[0]) != 2:
        raise PreconditionError("edge list must start with a line 'n m'")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise PreconditionError(f"malformed edge list: {exc}") from None
    if len(edges) != m:
        raise PreconditionError(f"edge list declares {m} edges but has {len(edges)}")
    if len({(min(e), max(e)) for e in edges}) != m:
        raise PreconditionError("edge list contains a repeated edge")
    return Graph.from_edges(n, edges)


def format_edge_list(G: Graph) -> str:
    lines = [f"{G.n} {G.m}"] + [f"{u} {v}" for u, v in G.edges]
    return "\n".join(lines) + "\n"


# --- named graphs used across tests and docs ---------------------------------


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for j in range(n) for i in range(j)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with the centre at vertex 0."""
    return complete_bipartite(1, leaves)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


@dataclass(frozen=True)
class FactorSubgraph:
    """A spanning subgraph given by its edge set; the positive certificate of every solver."""

    n: int
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "FactorSubgraph":
        return cls(n, tuple(sorted({(min(u, v), max(u, v)) for u, v in edges})))

    @property
    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def as_graph(self) -> Graph:
        return Graph.from_edges(self.n, self.edges)
