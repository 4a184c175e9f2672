"""Exact factor-theoretic checks for small graphs, with revalidatable certificates."""

from .errors import FactorLabError, Graph6Error, PreconditionError, UnsupportedSizeError
from .graph import (
    ComponentStats,
    FactorSubgraph,
    Graph,
    attach_pendant,
    component_stats,
    delete_vertices,
    edge_cut_count,
    encode_graph6,
    parse_edge_list,
    parse_graph6,
)
from .matching import (
    has_one_factor,
    is_factor_critical,
    k2cn_factor_search,
    k2cn_from_critical,
    max_matching,
    tutte_witness,
)
from .parity import (
    EtaBreakdown,
    ParityIntervalSpec,
    ParityPair,
    eta,
    lemma1_residue,
    parity_feasible_oracle,
    q_count,
    solve_parity_factor,
)
from .set_factor import (
    CriticalityReport,
    HAssignment,
    counterexample_h,
    enumerate_h,
    is_h_critical,
    normalize_h,
    solve_h_factor,
)
from .toughness import ConditionVerdict, classify, condition_check, is_1_tough
from .corpus import generate_connected

__version__ = "0.1.0"
