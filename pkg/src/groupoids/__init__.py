"""Finite groupoids, presentations of their covers, and finite topologies."""

from .core import (
    FiniteGroupoid,
    GroupoidMorphism,
    NormalSubgroupoid,
    ValidationReport,
    Violation,
    WideSubgroupoid,
    check_normal_subgroupoid,
    check_wide_subgroupoid,
    components,
    generated_by,
    normal_closure,
    pair_groupoid,
    quotient,
    validate_groupoid,
    validate_morphism,
)
from .monodromy import (
    CanonicalMorphism,
    GlobalizationResult,
    MonodromyGroupoid,
    Pi1Result,
    PregroupoidSubset,
    StarCoverReport,
    WordEvaluator,
    build_monodromy,
    canonical_morphism,
    globalize,
    pi1_graph,
    pregroupoid,
    star_covering_report,
)
from .topology import (
    ContinuityCertificate,
    FiniteTopology,
    GeneratedTopology,
    MAX_OPENS,
    TopologicalGroupoidReport,
    TopologyReport,
    TopologySizeError,
    check_topological_groupoid,
    composable_pairs,
    continuity,
    difference_pairs,
    discrete,
    generate_from_base,
    indiscrete,
    is_topology,
    minimal_basis,
    minimal_neighborhoods,
    product_topology,
    pullback_space,
    subspace_topology,
    topology,
)
from .loctriv import (
    CltReport,
    GenerationReport,
    LocalTrivialization,
    MonodromyCltReport,
    WOpenReport,
    WindowTopologyReport,
    basic_neighborhood,
    check_w_open,
    clt_on_monodromy,
    comp_witness,
    generate_groupoid_topology,
    local_trivialization,
    sections_from_arrows,
    validate_clt,
)
from .words import (
    DEFAULT_BUDGET,
    Exhausted,
    Forest,
    GeneratingGraph,
    GroupoidPresentation,
    VertexGroupEngine,
    VertexGroupPresentation,
    Word,
    WordProblemVerdict,
    build_engine,
    coset_enumeration,
    collapse_presentation,
    presentation,
    simplify_presentation,
    spanning_forest,
    word,
    word_problem,
)

__all__ = [
    "CanonicalMorphism",
    "CltReport",
    "ContinuityCertificate",
    "DEFAULT_BUDGET",
    "Exhausted",
    "FiniteGroupoid",
    "FiniteTopology",
    "Forest",
    "GeneratedTopology",
    "GeneratingGraph",
    "GenerationReport",
    "GlobalizationResult",
    "GroupoidMorphism",
    "GroupoidPresentation",
    "LocalTrivialization",
    "MAX_OPENS",
    "MonodromyCltReport",
    "MonodromyGroupoid",
    "NormalSubgroupoid",
    "Pi1Result",
    "PregroupoidSubset",
    "StarCoverReport",
    "TopologicalGroupoidReport",
    "TopologyReport",
    "TopologySizeError",
    "ValidationReport",
    "VertexGroupEngine",
    "VertexGroupPresentation",
    "Violation",
    "WOpenReport",
    "WideSubgroupoid",
    "WindowTopologyReport",
    "Word",
    "WordEvaluator",
    "WordProblemVerdict",
    "basic_neighborhood",
    "build_engine",
    "build_monodromy",
    "canonical_morphism",
    "check_normal_subgroupoid",
    "check_topological_groupoid",
    "check_w_open",
    "check_wide_subgroupoid",
    "clt_on_monodromy",
    "collapse_presentation",
    "comp_witness",
    "components",
    "composable_pairs",
    "continuity",
    "coset_enumeration",
    "difference_pairs",
    "discrete",
    "generate_from_base",
    "generate_groupoid_topology",
    "generated_by",
    "globalize",
    "indiscrete",
    "is_topology",
    "local_trivialization",
    "minimal_basis",
    "minimal_neighborhoods",
    "normal_closure",
    "pair_groupoid",
    "pi1_graph",
    "pregroupoid",
    "presentation",
    "product_topology",
    "pullback_space",
    "quotient",
    "sections_from_arrows",
    "simplify_presentation",
    "spanning_forest",
    "star_covering_report",
    "subspace_topology",
    "topology",
    "validate_clt",
    "validate_groupoid",
    "validate_morphism",
    "word",
    "word_problem",
]
