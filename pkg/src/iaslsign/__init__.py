"""Integer additive set-labelings of graphs and the signed graphs they induce."""

from .errors import (
    ConsistencyError,
    CycleBudgetExceeded,
    EmptyLabel,
    GraphFormatError,
    IaslError,
    LabelOutsideGroundSet,
    MissingLabel,
    NotInjective,
    UnknownCycle,
    UnknownEdge,
)
from .graphs import Cycle, Graph, bipartition, enumerate_connected_graphs, enumerate_simple_cycles, odd_cycles
from .harness import CATALOG, CorpusParams, TheoremReport, minimal_counterexample, verify_all, verify_theorem
from .intsets import (
    MAX_ELEM,
    WILDCARD,
    LabelSet,
    arithmetic_progression_difference,
    difference_set,
    ground_range,
    is_strong_pair,
    parity,
    sumset,
)
from .labeling import Labeling, LabelingClass, classify, edge_label, is_iasi, mono_indexed_vertices, validate_iasl
from .search import ClassFilter, SearchSpec, enumerate_labelings
from .signing import (
    Balance,
    Clustering2,
    SignedGraph,
    cycle_sign,
    induce_signature,
    is_balanced,
    parity_edge_census,
    two_clustering,
)

__version__ = "0.1.0"
