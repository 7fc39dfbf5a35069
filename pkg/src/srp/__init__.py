"""Steady and ranging persistence of features in hypergraph filtrations."""

from .errors import (
    FeatureError,
    FiltrationError,
    HypergraphError,
    IngestError,
    MorphismError,
    PersistenceAxiomError,
    SizeCapError,
    SRPError,
)
from .features import (
    EXCLUSIVITY,
    FEATURES,
    HUB,
    MAX_ORIGINALITY,
    Feature,
    continued_check,
    convexity_witness_search,
    get_feature,
    maximal_version,
    minimal_version,
    verify_witness,
)
from .filtration import (
    InterleavingDistance,
    TameFiltration,
    TrackedSet,
    WeightedHypergraph,
    Witness,
    build_ranging_counterexample,
    build_steady_counterexample,
    evaluate,
    filtering_function,
    filtration_from_objects,
    interleaving_distance_exact,
    push_forward,
    sublevel_filtration,
    verify_interleaving,
)
from .hypergraph import (
    EMPTY,
    Hypergraph,
    HypergraphMorphism,
    MonoClass,
    classify_morphism,
    compose,
    dual,
    isomorphisms,
    morphism,
    neighbors,
    validate_hypergraph,
)
from .ingest import PlayRecord, character_filtration, parse_play, scene_filtration
from .persistence import (
    PersistenceDiagram,
    PersistenceFunction,
    bottleneck,
    diagram,
    epsilon_compatible,
    persistence_function,
    ranging_set,
    representation_identity_check,
    steady_set,
)

__version__ = "0.1.0"
