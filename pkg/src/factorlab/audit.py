"""Both-direction theorem audits over graph corpora.

Each audit evaluates the factor side (``lhs``) and the set-condition side
(``rhs``) of one equivalence with independent code, and attaches a
certificate that :mod:`factorlab.verify` can recheck without solving.
A disagreement is an implementation bug, never a counterexample.
"""

from __future__ import annotations

import json
import random
from multiprocessing import Pool
from dataclasses import dataclass, field
from typing import IO, Any, Iterable, Iterator, Sequence

from .corpus import generate_connected
from .errors import FactorLabError, PreconditionError
from .graph import FactorSubgraph, Graph, attach_pendant, encode_graph6, from_mask, parse_graph6
from .matching import (
    is_factor_critical,
    k2cn_factor_search,
    near_perfect_matching,
    perfect_matching,
    tutte_witness,
)
from .parity import ParityIntervalSpec, ParityPair, eta, parity_feasible_oracle, solve_parity_factor
from .set_factor import HAssignment, enumerate_h, is_h_critical, solve_h_factor
from .toughness import condition_check, iso_condition_check, subsets_in_scan_order
from .verify import h_degree_sets, revalidate

THEOREMS = ("T1", "T2", "T3", "T4i", "T4ii", "T5i", "T5ii", "L1")
CHECK_GROUPS = {"T4": ("T4i", "T4ii"), "T5": ("T5i", "T5ii")}
F_CHOICES = (1, 3, 5)


@dataclass(frozen=True)
class Certificate:
    kind: str
    payload: dict[str, Any]

    def to_json(self) -> dict[str, Any]:
        return {"kind": self.kind, "payload": self.payload}


@dataclass(frozen=True)
class AuditReport:
    graph: str
    theorem: str
    lhs: bool | None
    rhs: bool | None
    certificate: Certificate | None = None
    params: dict[str, Any] = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict[str, Any]:
        out = {
            "graph": self.graph,
            "theorem": self.theorem,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "agree": self.agree,
            "certificate": None if self.certificate is None else self.certificate.to_json(),
        }
        if self.params:
            out["params"] = self.params
        return out

    def line(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))


# --- certificate builders ----------------------------------------------------


def _edges(F: FactorSubgraph | Iterable[tuple[int, int]]) -> list[list[int]]:
    edges = F.edges if isinstance(F, FactorSubgraph) else sorted(F)
    return [list(e) for e in edges]


def set_certificate(S: Iterable[int], measure: str, slack: int, weights: Sequence[int] | None = None) -> Certificate:
    payload: dict[str, Any] = {"S": sorted(S), "measure": measure, "slack": slack}
    if weights is not None:
        payload["weights"] = list(weights)
    return Certificate("violating_set", payload)


def eta_payload(G: Graph, gf: ParityPair, S: Iterable[int], T: Iterable[int]) -> dict[str, Any]:
    b = eta(G, gf, S, T)
    return {
        "S": sorted(S),
        "T": sorted(T),
        "breakdown": {"fS": b.fS, "gT": b.gT, "degT": b.degT, "eST": b.eST, "q": b.q, "eta": b.eta},
    }


def h_parity(G: Graph, H: HAssignment, even_cap: int) -> tuple[ParityPair, int]:
    """The parity pair ``(−M or −M−1, odd cap or even cap)`` with ``M = 2n+1``."""
    M = 2 * G.n + 1
    f = tuple(H.odd_cap[v] if H.odd_ones >> v & 1 else even_cap for v in range(G.n))
    g = tuple(-M if H.odd_ones >> v & 1 else -M - 1 for v in range(G.n))
    return ParityPair(g, f), M


def failing_h_certificate(G: Graph, H: HAssignment, x: int | None = None) -> Certificate:
    """Negative certificate: an η-witness for the parity pair equivalent to ``H`` (on ``G^x``)."""
    even_cap = H.even_cap
    target, Ht = (G, H) if x is None else (attach_pendant(G, x)[0], H.with_pendant())
    gf, M = h_parity(target, Ht, even_cap)
    verdict = parity_feasible_oracle(target, gf)
    if verdict.feasible:
        raise AssertionError("solver reported no factor but the oracle finds the pair feasible")
    S, T = verdict.witness
    payload = {
        "assign": H.bitstring(),
        "odd_cap": list(H.odd_cap),
        "even_cap": even_cap,
        "M": M,
        "eta_witness": eta_payload(target, gf, S, T),
    }
    if x is None:
        return Certificate("failing_h", payload)
    payload["x"] = x
    return Certificate("critical_failure", payload)


# --- audits ------------------------------------------------------------------


def _require_connected(G: Graph) -> None:
    if not G.is_connected():
        raise PreconditionError("audits are defined for connected graphs")


def audit_classic(G: Graph) -> tuple[AuditReport, AuditReport]:
    """1-factor theorem (T1) and the {K2, Cn}-factor theorem (T2)."""
    _require_connected(G)
    g6 = encode_graph6(G)

    pm = perfect_matching(G) if G.n % 2 == 0 else None
    critical = G.n % 2 == 1 and is_factor_critical(G)
    lhs1 = pm is not None or critical
    tw = tutte_witness(G)
    if not tw.holds:
        cert1 = set_certificate(tw.witness, "odd", 0)
    elif pm is not None:
        cert1 = Certificate("factor", {"shape": "matching", "edges": _edges(pm), "missing": []})
    elif critical:
        nm = near_perfect_matching(G, 0)
        cert1 = Certificate("factor", {"shape": "matching", "edges": _edges(nm), "missing": [0]})
    else:
        cert1 = None
    t1 = AuditReport(g6, "T1", lhs1, tw.holds, cert1)

    if G.n < 2:
        return t1, AuditReport(g6, "T2", None, None, None, {"skipped": "order below 2"})
    F = k2cn_factor_search(G)
    iv = iso_condition_check(G)
    if F is not None:
        cert2 = Certificate("factor", {"shape": "k2cn", "edges": _edges(F)})
    elif not iv.holds:
        cert2 = set_certificate(iv.witness, "iso", 0)
    else:
        cert2 = None
    return t1, AuditReport(g6, "T2", F is not None, iv.holds, cert2)


def _audit_sets(G: Graph, f: Sequence[int], tags: tuple[str, str]) -> tuple[AuditReport, AuditReport]:
    _require_connected(G)
    g6 = encode_graph6(G)
    caps = tuple(f)
    weights = None if all(c == 1 for c in caps) else list(caps)
    params = {} if weights is None else {"f": list(caps)}

    failing = next((H for H in enumerate_h(G.n, "even", caps) if solve_h_factor(G, H) is None), None)
    rhs_i = condition_check(G, caps, slack=1)
    if failing is not None:
        cert_i = failing_h_certificate(G, failing)
    elif not rhs_i.holds:
        cert_i = set_certificate(rhs_i.witness, "omega", 1, weights)
    else:
        cert_i = None
    report_i = AuditReport(g6, tags[0], failing is None, rhs_i.holds, cert_i, params)

    cert_ii = None
    lhs_ii = True
    for H in enumerate_h(G.n, "odd", caps):
        rep = is_h_critical(G, H, stop_at_first=True)
        if not rep.critical:
            lhs_ii = False
            cert_ii = failing_h_certificate(G, H, rep.failures[0])
            break
    rhs_ii = condition_check(G, caps, slack=0)
    if cert_ii is None and not rhs_ii.holds:
        cert_ii = set_certificate(rhs_ii.witness, "omega", 0, weights)
    report_ii = AuditReport(g6, tags[1], lhs_ii, rhs_ii.holds, cert_ii, params)
    return report_i, report_ii


def audit_t4(G: Graph) -> tuple[AuditReport, AuditReport]:
    """H-factors for every even H ⟺ ω(G−S) ≤ |S|+1; H-critical for every odd H ⟺ ω(G−S) ≤ |S|."""
    return _audit_sets(G, (1,) * G.n, ("T4i", "T4ii"))


def audit_t5(G: Graph, f: Sequence[int]) -> tuple[AuditReport, AuditReport]:
    """The weighted version of :func:`audit_t4` with odd caps ``f``."""
    if len(f) != G.n or any(c < 1 or c % 2 == 0 for c in f):
        raise PreconditionError("f must assign a positive odd integer to every vertex")
    return _audit_sets(G, f, ("T5i", "T5ii"))


def random_interval_spec(n: int, rng: random.Random, top: int = 3) -> ParityIntervalSpec:
    """Per vertex a uniform pair ``l ≤ u`` from ``{0..top}`` with ``l ≡ u``."""
    pairs = [(lo, hi) for hi in range(top + 1) for lo in range(hi % 2, hi + 1, 2)]
    return ParityIntervalSpec.from_pairs(rng.choice(pairs) for _ in range(n))


def random_parity_pair(n: int, rng: random.Random, low: int = -4, high: int = 5) -> ParityPair:
    g, f = [], []
    for _ in range(n):
        a = rng.randint(low, high)
        b = a + 2 * rng.randint(0, (high - a) // 2)
        g.append(a)
        f.append(b)
    return ParityPair(tuple(g), tuple(f))


def audit_t3(G: Graph, spec: ParityIntervalSpec) -> AuditReport:
    """Gadget solver verdict against the exhaustive η oracle for ``g = lower, f = upper``."""
    _require_connected(G)
    gf = ParityPair(spec.lower, spec.upper)
    F = solve_parity_factor(G, spec)
    verdict = parity_feasible_oracle(G, gf)
    params = {"spec": spec.to_pairs()}
    if F is not None:
        allowed = [list(range(lo, hi + 1, 2)) for lo, hi in spec.to_pairs()]
        cert = Certificate("factor", {"shape": "degree_sets", "edges": _edges(F), "allowed": allowed})
    elif not verdict.feasible:
        S, T = verdict.witness
        cert = Certificate("eta_witness", {"g": list(gf.g), "f": list(gf.f), **eta_payload(G, gf, S, T)})
    else:
        cert = None
    return AuditReport(encode_graph6(G), "T3", F is not None, verdict.feasible, cert, params)


def audit_l1(G: Graph, gf: ParityPair) -> AuditReport:
    """η(S,T) ≡ f(V) (mod 2) over every disjoint pair; ``rhs`` is the constant claim."""
    n = G.n
    target = sum(gf.f) % 2
    bad = None
    for T in subsets_in_scan_order(n, include_empty=True):
        rest = G.full_mask & ~T
        S = rest
        while True:
            if (eta(G, gf, S, T).eta - target) % 2:
                bad = (S, T)
                break
            if S == 0:
                break
            S = (S - 1) & rest
        if bad:
            break
    params = {"g": list(gf.g), "f": list(gf.f)}
    cert = None
    if bad is not None:
        S, T = from_mask(bad[0]), from_mask(bad[1])
        cert = Certificate("eta_witness", {"g": list(gf.g), "f": list(gf.f), **eta_payload(G, gf, S, T)})
    return AuditReport(encode_graph6(G), "L1", bad is None, True, cert, params)


# --- corpus runs -------------------------------------------------------------


@dataclass(frozen=True)
class FPolicy:
    """``const:K`` gives every vertex cap K; ``seed:S`` draws caps from {1,3,5} per graph."""

    const: int | None = None
    seed: int = 0

    @classmethod
    def parse(cls, text: str) -> "FPolicy":
        kind, _, value = text.partition(":")
        try:
            if kind == "const":
                k = int(value)
                if k < 1 or k % 2 == 0:
                    raise ValueError
                return cls(const=k)
            if kind == "seed":
                return cls(seed=int(value))
        except ValueError:
            pass
        raise PreconditionError(f"f policy must be const:K (K odd, positive) or seed:S, got {text!r}")

    def describe(self) -> str:
        return f"const:{self.const}" if self.const is not None else f"seed:{self.seed}"

    def rng(self, g6: str, tag: str) -> random.Random:
        return random.Random(f"{self.seed}:{g6}:{tag}")

    def caps(self, G: Graph, g6: str) -> tuple[int, ...]:
        if self.const is not None:
            return (self.const,) * G.n
        rng = self.rng(g6, "f")
        return tuple(rng.choice(F_CHOICES) for _ in range(G.n))


def expand_checks(checks: Iterable[str]) -> tuple[str, ...]:
    out: list[str] = []
    for c in checks:
        c = c.strip()
        if not c:
            continue
        for tag in CHECK_GROUPS.get(c, (c,)):
            if tag not in THEOREMS:
                raise PreconditionError(f"unknown theorem tag {c!r}")
            if tag not in out:
                out.append(tag)
    if not out:
        raise PreconditionError("no checks selected")
    return tuple(t for t in THEOREMS if t in out)


def audit_graph(G: Graph, checks: Sequence[str], policy: FPolicy) -> list[AuditReport]:
    """All selected reports for one graph, in ``THEOREMS`` order."""
    g6 = encode_graph6(G)
    out: dict[str, AuditReport] = {}
    if "T1" in checks or "T2" in checks:
        t1, t2 = audit_classic(G)
        out["T1"], out["T2"] = t1, t2
    if "T3" in checks:
        out["T3"] = audit_t3(G, random_interval_spec(G.n, policy.rng(g6, "T3")))
    if "T4i" in checks or "T4ii" in checks:
        out["T4i"], out["T4ii"] = audit_t4(G)
    if "T5i" in checks or "T5ii" in checks:
        out["T5i"], out["T5ii"] = audit_t5(G, policy.caps(G, g6))
    if "L1" in checks:
        out["L1"] = audit_l1(G, random_parity_pair(G.n, policy.rng(g6, "L1")))
    return [out[t] for t in checks]


@dataclass
class CorpusSummary:
    graphs: int = 0
    reports: int = 0
    disagreements: int = 0
    parse_failures: int = 0
    invalid_certificates: int = 0
    checks: tuple[str, ...] = ()
    f_policy: str = ""
    failures: list[str] = field(default_factory=list)

    def to_json(self) -> dict[str, Any]:
        return {
            "graphs": self.graphs,
            "reports": self.reports,
            "disagreements": self.disagreements,
            "parse_failures": self.parse_failures,
            "invalid_certificates": self.invalid_certificates,
            "checks": list(self.checks),
            "f_policy": self.f_policy,
            "failures": self.failures,
        }


def iter_source(gen: int | None = None, lines: Iterable[str] | None = None) -> Iterator[tuple[int, Graph | str]]:
    """``(line number, graph or error message)``; generated graphs are numbered from 1."""
    if gen is not None:
        for i, G in enumerate(generate_connected(gen), 1):
            yield i, G
        return
    assert lines is not None
    for i, raw in enumerate(lines, 1):
        text = raw.strip().removeprefix(">>graph6<<")
        if not text:
            continue
        try:
            G = parse_graph6(text)
        except FactorLabError as exc:
            yield i, f"line {i}: {exc}"
            continue
        if not G.is_connected():
            yield i, f"line {i}: graph is not connected"
            continue
        yield i, G


def _audit_job(job: tuple[Graph, tuple[str, ...], FPolicy]) -> list[str]:
    G, checks, policy = job
    return [report.line() for report in audit_graph(G, checks, policy)]


def certificate_problem(report: dict[str, Any]) -> str | None:
    """Revalidate the certificate in a serialized report; ``None`` means it checks out."""
    cert = report.get("certificate")
    if cert is None:
        return None
    G = parse_graph6(report["graph"])
    return revalidate(cert, G.n, [list(e) for e in G.edges])


def run_corpus(
    out: IO[str],
    checks: Iterable[str],
    gen: int | None = None,
    lines: Iterable[str] | None = None,
    policy: FPolicy | None = None,
    workers: int = 1,
    revalidate_certificates: bool = True,
) -> CorpusSummary:
    """Audit every graph of the source and write one JSON line per (graph, theorem).

    Output order is the source order regardless of ``workers``.
    """
    tags = expand_checks(checks)
    policy = policy or FPolicy()
    summary = CorpusSummary(checks=tags, f_policy=policy.describe())

    def jobs() -> Iterator[tuple[Graph, tuple[str, ...], FPolicy]]:
        for _, item in iter_source(gen, lines):
            if isinstance(item, str):
                summary.parse_failures += 1
                summary.failures.append(item)
                continue
            summary.graphs += 1
            yield item, tags, policy

    def consume(batches: Iterable[list[str]]) -> None:
        for batch in batches:
            for line in batch:
                out.write(line + "\n")
                summary.reports += 1
                rec = json.loads(line)
                if not rec["agree"]:
                    summary.disagreements += 1
                if revalidate_certificates and certificate_problem(rec) is not None:
                    summary.invalid_certificates += 1

    if workers <= 1:
        consume(map(_audit_job, jobs()))
    else:
        with Pool(workers) as pool:
            consume(pool.imap(_audit_job, jobs(), chunksize=64))
    return summary


def check_report_set(reports: Iterable[AuditReport]) -> list[str]:
    """Problems found when revalidating in-memory reports (empty list means all good)."""
    problems = []
    for r in reports:
        problem = certificate_problem(r.to_json())
        if problem:
            problems.append(f"{r.graph} {r.theorem}: {problem}")
        if not r.agree:
            problems.append(f"{r.graph} {r.theorem}: lhs={r.lhs} rhs={r.rhs}")
    return problems


def literal_h_sets(H: HAssignment) -> list[list[int]]:
    return h_degree_sets(H.bitstring(), H.odd_cap, H.even_cap)

