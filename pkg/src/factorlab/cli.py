"""Command-line entry point: ``factorlab <command> ...``.

Exit codes: 0 success / condition holds, 1 condition fails or no factor
(a certificate is printed), 2 usage or parse error, 3 audit disagreement.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Sequence

from .audit import FPolicy, failing_h_certificate, run_corpus
from .errors import FactorLabError, PreconditionError
from .graph import Graph, encode_graph6, parse_edge_list, parse_graph6
from .parity import ParityIntervalSpec, ParityPair, parity_feasible_oracle, solve_parity_factor
from .set_factor import HAssignment, is_h_critical, solve_h_factor
from .toughness import condition_check

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DISAGREE = 0, 1, 2, 3


def load_graph(arg: str) -> Graph:
    """Read a graph from a file (graph6 or ``n m`` edge list) or a literal graph6 record."""
    if os.path.exists(arg):
        with open(arg, encoding="ascii") as fh:
            text = fh.read()
    else:
        text = arg
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise PreconditionError(f"no graph found in {arg!r}")
    if len(lines[0].split()) == 2:
        return parse_edge_list(text)
    if len(lines) != 1:
        raise PreconditionError("expected exactly one graph6 record")
    return parse_graph6(lines[0].removeprefix(">>graph6<<"))


def load_weights(arg: str | None, n: int) -> tuple[int, ...] | None:
    if arg is None:
        return None
    kind, _, value = arg.partition(":")
    if kind == "const":
        return (int(value),) * n
    if kind == "file":
        with open(value, encoding="ascii") as fh:
            vals = tuple(int(tok) for tok in fh.read().replace(",", " ").split())
        if len(vals) != n:
            raise PreconditionError(f"weight file has {len(vals)} values, graph has {n} vertices")
        return vals
    raise PreconditionError(f"--f must be const:K or file:PATH, got {arg!r}")


def load_spec(path: str, n: int) -> ParityIntervalSpec:
    """One ``l u`` (or ``l,u``) pair per line, vertex order."""
    pairs = []
    with open(path, encoding="ascii") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].replace(",", " ").split()
            if not line:
                continue
            if len(line) != 2:
                raise PreconditionError(f"spec line {raw.strip()!r} is not 'l u'")
            pairs.append((int(line[0]), int(line[1])))
    if len(pairs) != n:
        raise PreconditionError(f"spec has {len(pairs)} rows, graph has {n} vertices")
    return ParityIntervalSpec.from_pairs(pairs)


def _emit(obj: Any) -> None:
    print(json.dumps(obj, sort_keys=True))


def cmd_check_tough(args: argparse.Namespace) -> int:
    G = load_graph(args.input)
    f = load_weights(args.f, G.n)
    verdict = condition_check(G, f, args.slack)
    _emit({
        "graph": encode_graph6(G),
        "slack": args.slack,
        "holds": verdict.holds,
        "witness": None if verdict.witness is None else sorted(verdict.witness),
        "scanned": verdict.scanned,
    })
    return EXIT_OK if verdict.holds else EXIT_FAIL


def _assignment(args: argparse.Namespace, G: Graph) -> HAssignment:
    if len(args.assign) != G.n:
        raise PreconditionError(f"--assign has {len(args.assign)} bits, graph has {G.n} vertices")
    return HAssignment.from_bitstring(args.assign, load_weights(args.f, G.n))


def cmd_h_factor(args: argparse.Namespace) -> int:
    G = load_graph(args.input)
    H = _assignment(args, G)
    F = solve_h_factor(G, H)
    out: dict[str, Any] = {"graph": encode_graph6(G), "assign": H.bitstring(), "even_cap": H.even_cap}
    if F is not None:
        out["factor"] = [list(e) for e in F.edges]
        out["certificate"] = None
        _emit(out)
        return EXIT_OK
    out["factor"] = None
    out["certificate"] = failing_h_certificate(G, H).to_json() if G.is_connected() else None
    _emit(out)
    return EXIT_FAIL


def cmd_h_critical(args: argparse.Namespace) -> int:
    G = load_graph(args.input)
    H = _assignment(args, G)
    rep = is_h_critical(G, H)
    _emit({
        "graph": encode_graph6(G),
        "assign": H.bitstring(),
        "critical": rep.critical,
        "failures": list(rep.failures),
    })
    return EXIT_OK if rep.critical else EXIT_FAIL


def cmd_parity_factor(args: argparse.Namespace) -> int:
    G = load_graph(args.input)
    spec = load_spec(args.spec, G.n)
    F = solve_parity_factor(G, spec)
    out: dict[str, Any] = {"graph": encode_graph6(G), "spec": spec.to_pairs()}
    out["factor"] = None if F is None else [list(e) for e in F.edges]
    if args.oracle:
        verdict = parity_feasible_oracle(G, ParityPair(spec.lower, spec.upper))
        out["oracle_feasible"] = verdict.feasible
        if verdict.witness is not None:
            S, T = verdict.witness
            b = verdict.breakdown
            out["witness"] = {"S": sorted(S), "T": sorted(T), "breakdown": vars(b)}
        if verdict.feasible != (F is not None):
            _emit(out)
            return EXIT_DISAGREE
    _emit(out)
    return EXIT_OK if F is not None else EXIT_FAIL


def cmd_audit(args: argparse.Namespace) -> int:
    if args.f is not None:
        policy = FPolicy.parse(args.f)
    else:
        policy = FPolicy(seed=args.f_seed)
    checks = args.checks.split(",")
    out = open(args.out, "w", encoding="ascii") if args.out != "-" else sys.stdout
    try:
        if args.gen is not None:
            summary = run_corpus(out, checks, gen=args.gen, policy=policy, workers=args.workers)
        else:
            with open(args.corpus, encoding="ascii", errors="replace") as fh:
                summary = run_corpus(out, checks, lines=fh, policy=policy, workers=args.workers)
    finally:
        if out is not sys.stdout:
            out.close()
    print(json.dumps(summary.to_json(), sort_keys=True), file=sys.stderr if args.out == "-" else sys.stdout)
    if summary.disagreements or summary.invalid_certificates:
        return EXIT_DISAGREE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="factorlab", description="Factor and toughness checks with certificates.")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_arg(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--in", dest="input", required=True, help="graph6/edge-list file, or a graph6 record")

    sp = sub.add_parser("check-tough", help="check omega(G-S) <= f(S) + slack")
    graph_arg(sp)
    sp.add_argument("--f", help="const:K or file:PATH (default: all ones)")
    sp.add_argument("--slack", type=int, choices=(0, 1), default=0)
    sp.set_defaults(func=cmd_check_tough)

    for name, func, text in (
        ("h-factor", cmd_h_factor, "find an H-factor for one assignment"),
        ("h-critical", cmd_h_critical, "check H-criticality for one assignment"),
    ):
        sp = sub.add_parser(name, help=text)
        graph_arg(sp)
        sp.add_argument("--assign", required=True, help="bit-string, 1 = odd side")
        sp.add_argument("--f", help="odd caps: const:K or file:PATH (default: all ones)")
        sp.set_defaults(func=func)

    sp = sub.add_parser("parity-factor", help="solve a per-vertex parity interval spec")
    graph_arg(sp)
    sp.add_argument("--spec", required=True, help="file with one 'l u' line per vertex")
    sp.add_argument("--oracle", action="store_true", help="also run the exhaustive eta oracle")
    sp.set_defaults(func=cmd_parity_factor)

    sp = sub.add_parser("audit", help="audit theorems over a corpus")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--gen", type=int, help="all connected labelled graphs on N vertices")
    src.add_argument("--corpus", help="file of graph6 records, one per line")
    sp.add_argument("--checks", default="T1,T2,T4", help="comma list from T1,T2,T3,T4,T5,L1 (or T4i, T5ii, ...)")
    sp.add_argument("--f-seed", type=int, default=0, help="seed for random odd caps and random specs")
    sp.add_argument("--f", help="const:K fixes every odd cap instead of drawing them")
    sp.add_argument("--out", default="-", help="report file (JSON lines); '-' for stdout")
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_audit)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FactorLabError, OSError, ValueError) as exc:
        print(f"factorlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
