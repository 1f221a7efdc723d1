"""relexkit: distantly supervised relation extraction over dependency graphs.

The toolkit builds weakly labeled pattern datasets from knowledge-base
statements and encyclopedia text, stores deduplicated extraction patterns
in an anchor-keyed syntactic index, weighs words against properties in a
TF-IDF semantic index, and classifies extracted candidate subgraphs by
harmonic-mean scoring against a threshold.
"""

__version__ = "0.1.0"

from .dataset import (
    DatasetSplit,
    LabeledPattern,
    SdpDatasetResult,
    build_sdp_dataset,
    read_patterns,
    split_dataset,
    write_patterns,
)
from .depgraph import (
    DependencyGraph,
    Edge,
    SDPSubgraph,
    TokenNode,
    anchor_of,
    node_key,
    parse_conllu,
    serialize_conllu,
    shortest_dependency_path,
    to_conllu,
)
from .errors import (
    AnchorNotUniqueError,
    ConlluParseError,
    DataError,
    GraphStructureError,
    IndexFormatError,
    KeyModeMismatchError,
    NoPathError,
    NotFoundError,
    RelexkitError,
    TransportError,
    UserError,
)
from .evaluation import (
    EvalRecord,
    MetricsRow,
    error_taxonomy,
    evaluate,
    score_dataset,
    score_sample,
    threshold_sweep,
)
from .isomorphism import are_isomorphic, find_anchored_embeddings, graph_signature
from .semindex import (
    FrequencyMatrix,
    Prediction,
    ScoreVector,
    SemanticIndex,
    build_frequency_matrix,
    build_semantic_index,
    classify,
    score_candidate,
)
from .supervision import (
    OTHER_LABEL,
    WeaklyLabeledSentence,
    fuzzy_contains,
    label_sentences,
    levenshtein,
    match_node_group,
    similarity,
)
from .synindex import (
    CandidateMatch,
    IndexStats,
    SyntacticIndex,
    build_syntactic_index,
    filter_longest,
    match_patterns,
)

__all__ = [
    "AnchorNotUniqueError",
    "CandidateMatch",
    "ConlluParseError",
    "DataError",
    "DatasetSplit",
    "DependencyGraph",
    "Edge",
    "EvalRecord",
    "FrequencyMatrix",
    "GraphStructureError",
    "IndexFormatError",
    "IndexStats",
    "KeyModeMismatchError",
    "LabeledPattern",
    "MetricsRow",
    "NoPathError",
    "NotFoundError",
    "OTHER_LABEL",
    "Prediction",
    "RelexkitError",
    "SDPSubgraph",
    "ScoreVector",
    "SdpDatasetResult",
    "SemanticIndex",
    "SyntacticIndex",
    "TokenNode",
    "TransportError",
    "UserError",
    "WeaklyLabeledSentence",
    "anchor_of",
    "are_isomorphic",
    "build_frequency_matrix",
    "build_sdp_dataset",
    "build_semantic_index",
    "build_syntactic_index",
    "classify",
    "error_taxonomy",
    "evaluate",
    "filter_longest",
    "find_anchored_embeddings",
    "fuzzy_contains",
    "graph_signature",
    "label_sentences",
    "levenshtein",
    "match_node_group",
    "match_patterns",
    "node_key",
    "parse_conllu",
    "read_patterns",
    "score_candidate",
    "score_dataset",
    "score_sample",
    "serialize_conllu",
    "shortest_dependency_path",
    "similarity",
    "split_dataset",
    "threshold_sweep",
    "to_conllu",
    "write_patterns",
]
