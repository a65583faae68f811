"""Majority additive colorings of graphs."""

from .coloring import (
    GoodnessWitness,
    Violation,
    ViolationReport,
    is_good,
    neighbor_sum,
    neighbor_sums,
    one_mac_check,
    powers_init,
    verify,
)
from .errors import (
    BudgetExceededError,
    GraphFormatError,
    InvalidColoringError,
    MacError,
    NotGoodError,
    PncViolatedError,
)
from .exact import brute_force_oracle, chi_mac, decide_kmac
from .generators import expand_sts, gen_sts, random_good_graph
from .graph import Graph, build_graph, parse_graph, serialize_graph
from .greedy import affected_vertices, forbidden_deltas, greedy_recolor, theorem1_bound
from .lll import lll_color, lll_k, mod_verify, private_neighbor_check, sample_coloring
from .reductions import (
    NaeFormula,
    assignment_to_coloring,
    coloring_to_assignment,
    kcoloring_to_mac,
    majority_3_edge_coloring,
    nae_brute,
    nae_to_mac2,
    subdivide3,
)

__version__ = "0.1.0"
