import copy

import pytest

from factorlab.audit import audit_classic, audit_t3, audit_t4, audit_t5, failing_h_certificate
from factorlab.graph import Graph, complete_graph, cycle_graph, path_graph, star_graph
from factorlab.parity import ParityIntervalSpec
from factorlab.set_factor import HAssignment
from factorlab.verify import (
    check_degree_sets,
    check_eta_witness,
    check_k2cn_factor,
    check_matching,
    check_subgraph,
    check_violating_set,
    revalidate,
)

C4 = cycle_graph(4)


def cert_json(report):
    return report.certificate.to_json()


def test_subgraph_checks():
    assert check_subgraph(4, C4.edges, [(0, 1)]) is None
    assert "not in the graph" in check_subgraph(4, C4.edges, [(0, 2)])
    assert "repeated" in check_subgraph(4, C4.edges, [(0, 1), (1, 0)])
    assert "degenerate" in check_subgraph(4, C4.edges, [(1, 1)])


def test_matching_and_k2cn_checks():
    assert check_matching(4, C4.edges, [(0, 1), (2, 3)]) is None
    assert check_matching(4, C4.edges, [(0, 1)]) is not None
    assert check_matching(4, C4.edges, [(0, 1)], missing=[2, 3]) is None
    assert check_k2cn_factor(4, C4.edges, C4.edges) is None
    assert check_k2cn_factor(4, C4.edges, [(0, 1), (1, 2), (2, 3)]) is not None
    C3 = cycle_graph(3)
    assert check_k2cn_factor(3, C3.edges, C3.edges, max_odd_cycles=0) is not None


def test_degree_set_check():
    assert check_degree_sets(4, C4.edges, [], [[0]] * 4) is None
    assert "vertex 0" in check_degree_sets(4, C4.edges, [], [[1]] * 4)


def test_violating_set_check():
    K13 = star_graph(3)
    assert check_violating_set(4, K13.edges, [0], "omega", None, 0) is None
    assert check_violating_set(4, K13.edges, [0], "omega", None, 2) is not None
    assert check_violating_set(4, K13.edges, [0], "iso", [3, 1, 1, 1], 0) is not None
    assert check_violating_set(4, K13.edges, [0, 0], "omega", None, 0) is not None
    assert check_violating_set(4, K13.edges, [0], "size", None, 0) is not None


def test_eta_check():
    assert check_eta_witness(1, [], [1], [1], [], []) is None
    assert check_eta_witness(2, [(0, 1)], [1, 1], [1, 1], [], []) is not None
    assert "overlap" in check_eta_witness(2, [(0, 1)], [1, 1], [1, 1], [0], [0])
    assert "invalid" in check_eta_witness(1, [], [0], [1], [], [])
    bad = {"fS": 0, "gT": 0, "degT": 0, "eST": 0, "q": 0, "eta": -1}
    assert "re-sum" in check_eta_witness(1, [], [1], [1], [], [], bad)


def emitted_certificates():
    out = []
    for G in (C4, star_graph(3), path_graph(3), cycle_graph(5), star_graph(4)):
        for r in audit_classic(G) + audit_t4(G) + audit_t5(G, (3,) + (1,) * (G.n - 1)):
            if r.certificate is not None:
                out.append((G, cert_json(r)))
    K1 = Graph.from_edges(1, [])
    out.append((K1, cert_json(audit_t3(K1, ParityIntervalSpec((1,), (1,))))))
    return out


@pytest.mark.parametrize("G, cert", emitted_certificates())
def test_emitted_certificates_revalidate(G, cert):
    assert revalidate(cert, G.n, G.edges) is None


def tamper(cert):
    c = copy.deepcopy(cert)
    p = c["payload"]
    kind = c["kind"]
    if kind == "factor":
        p["edges"] = p["edges"][:-1] if p["edges"] else [[0, 1], [0, 1]]
    elif kind == "violating_set":
        p["slack"] += 5
    elif kind == "eta_witness":
        p["breakdown"]["eta"] += 1
    else:
        p["eta_witness"]["S"] = []
        p["eta_witness"]["T"] = []
        p["eta_witness"]["breakdown"] = None
        p["M"] = 1
    return c


@pytest.mark.parametrize("G, cert", emitted_certificates())
def test_tampered_certificates_fail(G, cert):
    assert revalidate(tamper(cert), G.n, G.edges) is not None


def test_critical_failure_needs_valid_anchor():
    cert = failing_h_certificate(complete_graph(2), HAssignment.from_bitstring("11"), 0).to_json()
    assert revalidate(cert, 2, [(0, 1)]) is None
    cert["payload"]["x"] = 5
    assert "out of range" in revalidate(cert, 2, [(0, 1)])
    cert["payload"]["x"] = 0
    cert["payload"]["M"] = 4
    assert "odd" in revalidate(cert, 2, [(0, 1)])


def test_failing_h_is_checked_against_its_own_graph():
    cert = failing_h_certificate(path_graph(3), HAssignment.from_bitstring("111")).to_json()
    assert revalidate(cert, 3, [(0, 1), (1, 2)]) is None
    assert revalidate(cert, 2, [(0, 1)]) is not None
    # K_{1,3} has no perfect matching, C4 does: the witness cannot carry over.
    cert = failing_h_certificate(star_graph(3), HAssignment.from_bitstring("1111")).to_json()
    assert revalidate(cert, 4, star_graph(3).edges) is None
    assert revalidate(cert, 4, C4.edges) is not None


def test_unknown_kinds():
    assert "unknown" in revalidate({"kind": "nope", "payload": {}}, 1, [])
    assert "unknown" in revalidate({"kind": "factor", "payload": {"edges": [], "shape": "x"}}, 1, [])
