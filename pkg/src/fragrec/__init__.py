"""fragrec: unsupervised relevance mining over API tutorial fragments.

The package turns a directory of HTML tutorials plus an API name catalog
into a queryable index that says, for every (fragment, API) pair, whether
the fragment explains the API, and recommends fragments for a queried
API name.
"""

from .corpus import (
    ApiCatalog,
    ApiEntry,
    Fragment,
    Paragraph,
    ParagraphKind,
    TutorialDoc,
    load_catalog,
    load_corpus,
    parse_tutorial_html,
    segment_tutorial,
)
from .errors import AlignmentError, FragrecError, InputError
from .evaluation import (
    AnnotationSet,
    MetricsReport,
    SweepPoint,
    compute_metrics,
    evaluate,
    load_annotations,
    sweep_threshold,
)
from .filtering import FilterVerdict, RuleId, apply_filter
from .graphrank import (
    PageRankVector,
    SentenceGraph,
    build_similarity_graph,
    compute_pagerank,
    score_pagerank,
)
from .parsing import (
    ApiMention,
    MarginalReason,
    MentionOrigin,
    ParsedFragment,
    Sentence,
    VariableBinding,
    classify_sentence_kind,
    discover_apis,
    identify_sentences,
    parse_fragment,
    resolve_pronouns,
    resolve_variables,
    split_statements,
)
from .pipeline import AnalyzeConfig, RecommendHit, RelevanceIndex, analyze, recommend
from .relevance import (
    RelevanceRecord,
    ThresholdConfig,
    compute_threshold,
    identify_relevance,
)
from .topics import TopicModel, fit_lda, score_topic

__version__ = "0.1.0"

__all__ = [
    "AlignmentError",
    "AnalyzeConfig",
    "AnnotationSet",
    "ApiCatalog",
    "ApiEntry",
    "ApiMention",
    "FilterVerdict",
    "FragrecError",
    "Fragment",
    "InputError",
    "MarginalReason",
    "MentionOrigin",
    "MetricsReport",
    "PageRankVector",
    "Paragraph",
    "ParagraphKind",
    "ParsedFragment",
    "RecommendHit",
    "RelevanceIndex",
    "RelevanceRecord",
    "RuleId",
    "Sentence",
    "SentenceGraph",
    "SweepPoint",
    "ThresholdConfig",
    "TopicModel",
    "TutorialDoc",
    "VariableBinding",
    "analyze",
    "apply_filter",
    "build_similarity_graph",
    "classify_sentence_kind",
    "compute_metrics",
    "compute_pagerank",
    "compute_threshold",
    "discover_apis",
    "evaluate",
    "fit_lda",
    "identify_relevance",
    "identify_sentences",
    "load_annotations",
    "load_catalog",
    "load_corpus",
    "parse_fragment",
    "parse_tutorial_html",
    "recommend",
    "resolve_pronouns",
    "resolve_variables",
    "score_pagerank",
    "score_topic",
    "segment_tutorial",
    "split_statements",
    "sweep_threshold",
]
