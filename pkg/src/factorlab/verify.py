"""Independent revalidation of certificates.

Nothing here solves anything, and nothing here imports the solvers or the
bitmask kernels: graphs are rebuilt as plain adjacency sets from their edge
lists and every quantity is recounted from scratch.  Each checker returns
``None`` on success or a short reason string on failure.
"""

from __future__ import annotations

from collections import deque
from typing import Any, Iterable, Mapping, Sequence


def _adjacency(n: int, edges: Iterable[Sequence[int]]) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def _components(adj: list[set[int]], alive: set[int]) -> list[set[int]]:
    comps = []
    seen: set[int] = set()
    for s in sorted(alive):
        if s in seen:
            continue
        comp = {s}
        todo = deque([s])
        while todo:
            v = todo.popleft()
            for w in adj[v]:
                if w in alive and w not in comp:
                    comp.add(w)
                    todo.append(w)
        seen |= comp
        comps.append(comp)
    return comps


def check_subgraph(n: int, graph_edges: Iterable[Sequence[int]], factor_edges: Iterable[Sequence[int]]) -> str | None:
    gset = {frozenset(e) for e in graph_edges}
    seen = set()
    for e in factor_edges:
        key = frozenset(e)
        if len(key) != 2:
            return f"degenerate edge {tuple(e)}"
        if key not in gset:
            return f"edge {tuple(e)} is not in the graph"
        if key in seen:
            return f"edge {tuple(e)} repeated"
        seen.add(key)
        if not all(0 <= x < n for x in e):
            return f"edge {tuple(e)} out of range"
    return None


def degrees(n: int, edges: Iterable[Sequence[int]]) -> list[int]:
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    return deg


def check_degree_sets(
    n: int,
    graph_edges: Iterable[Sequence[int]],
    factor_edges: Sequence[Sequence[int]],
    allowed: Sequence[Iterable[int]],
) -> str | None:
    """Every vertex degree of the factor lies in its listed set."""
    graph_edges = list(graph_edges)
    reason = check_subgraph(n, graph_edges, factor_edges)
    if reason:
        return reason
    for v, d in enumerate(degrees(n, factor_edges)):
        if d not in set(allowed[v]):
            return f"vertex {v} has degree {d}, allowed {sorted(set(allowed[v]))}"
    return None


def check_k2cn_factor(
    n: int, graph_edges: Iterable[Sequence[int]], factor_edges: Sequence[Sequence[int]], max_odd_cycles: int | None = None
) -> str | None:
    """Every component is a single edge or a cycle (a connected 2-regular piece)."""
    reason = check_subgraph(n, graph_edges, factor_edges)
    if reason:
        return reason
    adj = _adjacency(n, factor_edges)
    odd_cycles = 0
    for comp in _components(adj, set(range(n))):
        degs = {len(adj[v]) for v in comp}
        if len(comp) == 2 and degs == {1}:
            continue
        if len(comp) >= 3 and degs == {2}:
            odd_cycles += len(comp) % 2
            continue
        return f"component {sorted(comp)} is neither K2 nor a cycle"
    if max_odd_cycles is not None and odd_cycles > max_odd_cycles:
        return f"{odd_cycles} odd cycles (at most {max_odd_cycles} allowed)"
    return None


def check_matching(n: int, graph_edges: Iterable[Sequence[int]], matching: Sequence[Sequence[int]], missing: Sequence[int] = ()) -> str | None:
    """A matching covering exactly the vertices outside ``missing``."""
    reason = check_subgraph(n, graph_edges, matching)
    if reason:
        return reason
    deg = degrees(n, matching)
    for v in range(n):
        want = 0 if v in missing else 1
        if deg[v] != want:
            return f"vertex {v} covered {deg[v]} times, expected {want}"
    return None


def count_components(n: int, graph_edges: Iterable[Sequence[int]], removed: Iterable[int]) -> tuple[int, int, int]:
    """``(omega, odd, iso)`` of ``G − removed``."""
    adj = _adjacency(n, graph_edges)
    alive = set(range(n)) - set(removed)
    comps = _components(adj, alive)
    return len(comps), sum(len(c) % 2 for c in comps), sum(len(c) == 1 for c in comps)


def check_violating_set(
    n: int,
    graph_edges: Iterable[Sequence[int]],
    S: Sequence[int],
    measure: str,
    weights: Sequence[int] | None,
    slack: int,
) -> str | None:
    """``measure(G − S) > weight(S) + slack`` where measure is omega, odd or iso."""
    if len(set(S)) != len(S) or not all(0 <= v < n for v in S):
        return "S is not a vertex subset"
    omega, odd, iso = count_components(n, graph_edges, S)
    observed = {"omega": omega, "odd": odd, "iso": iso}.get(measure)
    if observed is None:
        return f"unknown measure {measure!r}"
    w = [1] * n if weights is None else weights
    bound = sum(w[v] for v in S) + slack
    if observed <= bound:
        return f"{measure}(G-S) = {observed} does not exceed {bound}"
    return None


def recompute_eta(
    n: int, graph_edges: Iterable[Sequence[int]], g: Sequence[int], f: Sequence[int], S: Sequence[int], T: Sequence[int]
) -> dict[str, int]:
    graph_edges = [tuple(e) for e in graph_edges]
    adj = _adjacency(n, graph_edges)
    Sset, Tset = set(S), set(T)
    fS = sum(f[v] for v in Sset)
    gT = sum(g[v] for v in Tset)
    degT = sum(len(adj[v]) for v in Tset)
    eST = sum(1 for u, v in graph_edges for a, b in ((u, v), (v, u)) if a in Sset and b in Tset)
    q = 0
    for comp in _components(adj, set(range(n)) - Sset - Tset):
        fC = sum(f[v] for v in comp)
        eCT = sum(1 for v in comp for w in adj[v] if w in Tset)
        q += (fC + eCT) % 2
    return {"fS": fS, "gT": gT, "degT": degT, "eST": eST, "q": q, "eta": fS - gT + degT - eST - q}


def check_eta_witness(
    n: int,
    graph_edges: Iterable[Sequence[int]],
    g: Sequence[int],
    f: Sequence[int],
    S: Sequence[int],
    T: Sequence[int],
    breakdown: Mapping[str, int] | None = None,
) -> str | None:
    """``η(S, T) < 0`` for the pair ``(g, f)``, which rules out a parity (g, f)-factor."""
    if set(S) & set(T):
        return "S and T overlap"
    for v in range(n):
        if g[v] > f[v] or (f[v] - g[v]) % 2:
            return f"(g, f) invalid at vertex {v}"
    got = recompute_eta(n, graph_edges, g, f, S, T)
    if breakdown is not None and dict(breakdown) != got:
        return f"breakdown {dict(breakdown)} does not re-sum to {got}"
    if got["eta"] >= 0:
        return f"eta = {got['eta']} is not negative"
    return None


def h_degree_sets(assign: str, odd_cap: Sequence[int], even_cap: int) -> list[list[int]]:
    """Literal degree sets of an assignment bit-string."""
    return [
        list(range(1, odd_cap[v] + 1, 2)) if bit == "1" else list(range(0, even_cap + 1, 2))
        for v, bit in enumerate(assign)
    ]


def h_parity_pair(assign: str, odd_cap: Sequence[int], even_cap: int, M: int) -> tuple[list[int], list[int]]:
    """Parity pair with the same factors as the assignment; ``M`` is a large odd integer."""
    f = [odd_cap[v] if bit == "1" else even_cap for v, bit in enumerate(assign)]
    g = [-M if bit == "1" else -M - 1 for bit in assign]
    return g, f


def revalidate(cert: Mapping[str, Any], graph_n: int, graph_edges: Sequence[Sequence[int]]) -> str | None:
    """Check one serialized certificate against the graph it accompanies."""
    kind = cert.get("kind")
    p = cert.get("payload", {})
    if kind == "factor":
        edges = [tuple(e) for e in p["edges"]]
        shape = p["shape"]
        if shape == "k2cn":
            return check_k2cn_factor(graph_n, graph_edges, edges, p.get("max_odd_cycles"))
        if shape == "matching":
            return check_matching(graph_n, graph_edges, edges, p.get("missing", []))
        if shape == "degree_sets":
            return check_degree_sets(graph_n, graph_edges, edges, p["allowed"])
        return f"unknown factor shape {shape!r}"
    if kind == "violating_set":
        return check_violating_set(graph_n, graph_edges, p["S"], p["measure"], p.get("weights"), p["slack"])
    if kind == "eta_witness":
        return check_eta_witness(graph_n, graph_edges, p["g"], p["f"], p["S"], p["T"], p.get("breakdown"))
    if kind in ("failing_h", "critical_failure"):
        n, edges = graph_n, [tuple(e) for e in graph_edges]
        assign = p["assign"]
        odd_cap = list(p["odd_cap"])
        if kind == "critical_failure":
            x = p["x"]
            if not 0 <= x < n:
                return f"pendant anchor {x} out of range"
            edges = edges + [(x, n)]
            n += 1
            assign = assign + "1"
            odd_cap = odd_cap + [1]
        if len(assign) != n:
            return "assignment length does not match the graph"
        w = p["eta_witness"]
        g, f = h_parity_pair(assign, odd_cap, p["even_cap"], p["M"])
        if p["M"] % 2 == 0 or p["M"] < 1:
            return "M must be a positive odd integer"
        return check_eta_witness(n, edges, g, f, w["S"], w["T"], w.get("breakdown"))
    return f"unknown certificate kind {kind!r}"
