import io
import json
import random

import pytest

from conftest import corpus
from oracles import brute_connected_count, nx_connected_graphs, nx_graph6
from factorlab.audit import (
    AuditReport,
    FPolicy,
    audit_classic,
    audit_graph,
    audit_l1,
    audit_t3,
    audit_t4,
    audit_t5,
    check_report_set,
    expand_checks,
    random_interval_spec,
    random_parity_pair,
    run_corpus,
)
from factorlab.corpus import count_connected_labelled, generate_connected
from factorlab.errors import PreconditionError
from factorlab.graph import Graph, complete_graph, cycle_graph, encode_graph6, path_graph, star_graph
from factorlab.parity import ParityIntervalSpec

CONNECTED_COUNTS = {1: 1, 2: 1, 3: 4, 4: 38, 5: 728, 6: 26704}


@pytest.mark.parametrize("n", range(1, 6))
def test_counts_match_networkx_brute_force(n):
    assert brute_connected_count(n) == CONNECTED_COUNTS[n]
    assert len(corpus(n)) == CONNECTED_COUNTS[n]


def test_count_on_6_matches_independent_bitmask_count():
    assert count_connected_labelled(6) == len(corpus(6)) == CONNECTED_COUNTS[6]


@pytest.mark.parametrize("n", range(1, 6))
def test_same_graph_set_as_networkx(n):
    assert {encode_graph6(G) for G in corpus(n)} == {nx_graph6_of(H) for H in nx_connected_graphs(n)}


def nx_graph6_of(H):
    return nx_graph6(Graph.from_edges(H.number_of_nodes(), list(H.edges())))


def test_generation_order_is_edge_mask_ascending():
    def mask(G):
        pairs = [(i, j) for j in range(G.n) for i in range(j)]
        return sum(1 << k for k, (i, j) in enumerate(pairs) if G.has_edge(i, j))

    masks = [mask(G) for G in corpus(5)]
    assert masks == sorted(masks) and len(set(masks)) == len(masks)


def test_generator_guard():
    with pytest.raises(PreconditionError):
        next(generate_connected(0))
    with pytest.raises(PreconditionError):
        next(generate_connected(8))


def test_report_agree_property():
    assert AuditReport("A_", "T1", True, True).agree
    assert not AuditReport("A_", "T1", True, False).agree


def test_t4_examples():
    i, ii = audit_t4(cycle_graph(4))
    assert (i.lhs, i.rhs, ii.lhs, ii.rhs) == (True, True, True, True)
    assert i.certificate is None and ii.certificate is None
    i, ii = audit_t4(star_graph(3))
    assert ii.lhs is False and ii.rhs is False and ii.agree
    assert ii.certificate.kind == "critical_failure"
    assert check_report_set([i, ii]) == []


def test_t5_examples():
    K14 = star_graph(4)
    i, ii = audit_t5(K14, (3,) * 5)
    assert (i.lhs, i.rhs) == (True, True)
    assert (ii.lhs, ii.rhs) == (False, False)
    assert ii.params == {"f": [3] * 5}
    assert check_report_set([i, ii]) == []
    with pytest.raises(PreconditionError):
        audit_t5(K14, (2,) * 5)


def test_t5_with_unit_caps_equals_t4():
    for G in corpus(4):
        a, b = audit_t4(G), audit_t5(G, (1,) * G.n)
        for x, y in zip(a, b):
            assert (x.lhs, x.rhs, x.certificate, x.params) == (y.lhs, y.rhs, y.certificate, y.params)


def test_classic_examples():
    t1, _ = audit_classic(cycle_graph(5))
    assert t1.lhs and t1.rhs and t1.certificate.payload["missing"] == [0]
    _, t2 = audit_classic(path_graph(3))
    assert t2.lhs is False and t2.rhs is False and t2.certificate.kind == "violating_set"
    t1, t2 = audit_classic(Graph.from_edges(1, []))
    assert t1.agree and t2.lhs is None and t2.params == {"skipped": "order below 2"}
    with pytest.raises(PreconditionError):
        audit_classic(Graph.from_edges(2, []))


def test_t3_and_l1_reports():
    K1 = Graph.from_edges(1, [])
    r = audit_t3(K1, ParityIntervalSpec((1,), (1,)))
    assert r.lhs is False and r.rhs is False and r.certificate.kind == "eta_witness"
    r = audit_t3(complete_graph(2), ParityIntervalSpec((1, 1), (1, 1)))
    assert r.lhs and r.certificate.payload["edges"] == [[0, 1]]
    rng = random.Random(1)
    for G in corpus(4):
        reports = [audit_t3(G, random_interval_spec(4, rng)), audit_l1(G, random_parity_pair(4, rng))]
        assert check_report_set(reports) == []


def test_expand_checks():
    assert expand_checks(["T4", "T1"]) == ("T1", "T4i", "T4ii")
    assert expand_checks(["T5ii", "L1", "T3"]) == ("T3", "T5ii", "L1")
    with pytest.raises(PreconditionError):
        expand_checks(["T9"])
    with pytest.raises(PreconditionError):
        expand_checks([])


def test_f_policy():
    assert FPolicy.parse("const:3").caps(cycle_graph(3), "Bw") == (3, 3, 3)
    p = FPolicy.parse("seed:7")
    assert p.caps(cycle_graph(5), "x") == p.caps(cycle_graph(5), "x")
    assert set(p.caps(cycle_graph(6), "x")) <= {1, 3, 5}
    for bad in ("const:2", "const:-1", "const:x", "zzz"):
        with pytest.raises(PreconditionError):
            FPolicy.parse(bad)


def test_audit_graph_order():
    tags = expand_checks(["L1", "T4", "T1"])
    reports = audit_graph(cycle_graph(4), tags, FPolicy())
    assert [r.theorem for r in reports] == ["T1", "T4i", "T4ii", "L1"]


def test_run_corpus_generated():
    buf = io.StringIO()
    s = run_corpus(buf, ["T1"], gen=4)
    assert (s.graphs, s.reports, s.disagreements, s.invalid_certificates) == (38, 38, 0, 0)
    assert len(buf.getvalue().splitlines()) == 38


def test_run_corpus_malformed_line():
    good = [encode_graph6(G) for G in corpus(4)[:9]]
    lines = good[:4] + ["C~~"] + good[4:]
    buf = io.StringIO()
    s = run_corpus(buf, ["T1", "T2"], lines=[ln + "\n" for ln in lines])
    assert s.graphs == 9 and s.parse_failures == 1
    assert s.reports == (len(lines) - s.parse_failures) * 2
    assert s.failures[0].startswith("line 5:")


def test_run_corpus_rejects_disconnected_line():
    s = run_corpus(io.StringIO(), ["T1"], lines=["A?\n", "\n", "A_\n"])
    assert (s.graphs, s.parse_failures) == (1, 1)
    assert s.failures == ["line 1: graph is not connected"]


def test_parallel_output_identical():
    seq, par = io.StringIO(), io.StringIO()
    a = run_corpus(seq, ["T1", "T2", "T3", "T4", "T5", "L1"], gen=4, policy=FPolicy(seed=5))
    b = run_corpus(par, ["T1", "T2", "T3", "T4", "T5", "L1"], gen=4, policy=FPolicy(seed=5), workers=2)
    assert seq.getvalue() == par.getvalue()
    assert a.to_json() == b.to_json()


def test_report_lines_are_json():
    buf = io.StringIO()
    run_corpus(buf, ["T4"], gen=3)
    for line in buf.getvalue().splitlines():
        rec = json.loads(line)
        assert set(rec) >= {"graph", "theorem", "lhs", "rhs", "agree", "certificate"}
