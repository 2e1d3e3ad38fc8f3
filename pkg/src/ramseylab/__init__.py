"""Book / K_2,n versus cycle Ramsey toolkit."""

from ._version import __version__
from .canon import canonical_form, enumerate_graphs
from .constructions import (
    ConstructionCertificate,
    GoodnessParams,
    book_cycle_lower_construction,
    goodness_lower_construction,
    verify_construction,
)
from .cycles import (
    CycleStats,
    PathQuery,
    classify_pancyclicity,
    cycle_stats,
    find_cycle_of_length,
    find_path_of_length,
    girth,
    is_bipanconnected,
)
from .extraction import (
    ExtractionIncomplete,
    ExtractionResult,
    ExtractionTrace,
    claim_search_x,
    extract,
    extract_book_or_cycle,
    extract_k2n_or_cycle,
)
from .extremal import (
    DrcParams,
    ExtremalRecord,
    dependent_random_choice,
    extremal_number,
    girth_lemma_audit,
)
from .graph6 import Graph6Error, parse_edge_list, parse_graph6, write_edge_list, write_graph6
from .graph_core import (
    Bipartition,
    DegreeStats,
    Graph,
    bipartition,
    common_neighborhood,
    complement,
    connectivity,
    induced,
    random_graph,
)
from .predicates import (
    RamseyParams,
    TwoColoring,
    Witness,
    evaluate_coloring,
    find_book,
    find_k2n,
)
from .search import SearchReport, ramsey_number

__all__ = [name for name in dir() if not name.startswith("_")]
