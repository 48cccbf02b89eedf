"""Static variable ordering for symbolic reachability of 1-safe Petri nets.

The package turns a net's transition/place dependency matrix into a graph,
reorders it with classic sparse-matrix heuristics (Cuthill-McKee, King,
Sloan, Gibbs-Poole-Stockmeyer), scores the result with bandwidth, profile,
span, wavefront and event-span metrics, and measures the effect on a list
decision diagram reachability engine.
"""
from .graph import (
    BipartiteGraph,
    EdgeVertex,
    GraphError,
    OrderedGraph,
    PartialOrder,
    Permutation,
    SplitPermutation,
    adjacency_matrix,
    flip_horizontal,
    flip_vertical,
    format_matrix,
    parse_matrix,
    permutation_between,
    permute,
    position,
    restrict,
    split_permutation,
    symmetrize,
    total_graph,
)
from .ldd import FALSE, TRUE, LddStore, ldd_count, ldd_node_count
from .metrics import (
    MetricsReport,
    event_span,
    front_width,
    graph_metrics,
    metrics_report,
    vertex_bandwidth,
    vertex_span,
    vertex_wavefront,
    weighted_event_span,
)
from .ordering import (
    ALGORITHMS,
    OrderingConfig,
    Reordering,
    cuthill_mckee,
    gps,
    king,
    order_graph,
    pseudo_peripheral_pair,
    reorder,
    reorder_pipeline,
    sloan,
)
from .petri import (
    PetriNet,
    PnmlError,
    SafetyViolation,
    dependency_graph,
    parse_pnml,
    philosophers,
    read_set,
    running_example,
    to_pnml,
    write_set,
)
from .reach import (
    STRATEGIES,
    NodeLimitExceeded,
    ReachConfig,
    ReachResult,
    ShortRelation,
    build_relations,
    reach,
    relprod,
)
from .bench import Category, RunRecord, mean_standard_score, mss_summary, render_matrix, run_cell, run_grid

__version__ = "0.1.0"
