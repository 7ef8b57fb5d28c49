"""Emotion analytics for Chinese microblog streams.

Rule-based six-emotion tagging (lexicon + emoticons + negation rules),
stream ingestion with dedup and rate limits, hourly regional aggregation
with happiness rankings and alarms, and an HTTP API feeding a dashboard.
"""
from .aggregate import (
    BucketCounts,
    CorpusStats,
    DailyScore,
    EmotionStore,
    RankEntry,
    SnapshotError,
)
from .analyzer import (
    AnalyzerResources,
    RuleConfig,
    classify,
    default_resources,
    extract_emoticons,
    load_resources,
    score_text,
)
from .estimator import EmotionClassifier
from .evalkit import (
    GoldRecord,
    PrecisionReport,
    Prediction,
    precision_report,
    sample_for_annotation,
)
from .ingest import (
    DedupStore,
    RecordError,
    ReplayPlan,
    ReplaySummary,
    assign_region,
    parse_record,
    replay,
)
from .lexicon import (
    EmoticonEntry,
    LexiconEntry,
    Matcher,
    ResourceFormatError,
    Segment,
    Term,
    build_matcher,
    load_emoticons,
    load_lexicon,
    load_negators,
)
from .model import (
    EMOTIONAL_LABELS,
    ClassifiedTweet,
    Emotion,
    EmotionVector,
    Region,
    Tweet,
    argmax_label,
    parse_emotion,
    parse_region,
)

__version__ = "0.1.0"

__all__ = [
    "AnalyzerResources",
    "BucketCounts",
    "ClassifiedTweet",
    "CorpusStats",
    "DailyScore",
    "DedupStore",
    "EMOTIONAL_LABELS",
    "Emotion",
    "EmotionClassifier",
    "EmotionStore",
    "EmotionVector",
    "EmoticonEntry",
    "GoldRecord",
    "LexiconEntry",
    "Matcher",
    "PrecisionReport",
    "Prediction",
    "RankEntry",
    "RecordError",
    "Region",
    "ReplayPlan",
    "ReplaySummary",
    "ResourceFormatError",
    "RuleConfig",
    "Segment",
    "SnapshotError",
    "Term",
    "Tweet",
    "argmax_label",
    "assign_region",
    "build_matcher",
    "classify",
    "default_resources",
    "extract_emoticons",
    "load_emoticons",
    "load_lexicon",
    "load_negators",
    "load_resources",
    "parse_emotion",
    "parse_record",
    "parse_region",
    "precision_report",
    "replay",
    "sample_for_annotation",
    "score_text",
]
