"""Semantic web service matchmaking over unit-capacity flow networks."""

from .matchmaker import MatchReport, SideResult, final_score, match_pair, match_side, parsim, rank, typesim
from .maxflow import (
    BipartiteInstance,
    Flow,
    FlowNetwork,
    build_matching_network,
    complete_match_level,
    extract_matching,
    find_augmenting_path,
    ford_fulkerson,
    residual_capacity,
)
from .profile import (
    ParameterSpec,
    Registry,
    ServiceProfile,
    load_registry,
    parse_profile,
    register_service,
    remove_service,
    save_registry,
    validate_profile,
)
from .scoring import DataType, DegreeScore, TypeMatrix, case_score, default_type_matrix, load_type_matrix, type_score
from .taxonomy import Taxonomy, TaxonomyError, is_direct_subclass, load_taxonomy, same_class, subsumes

__version__ = "0.1.0"
