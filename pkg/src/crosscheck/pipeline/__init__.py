"""
Pipeline stages for cross-checking a claim against reliable posts.

Each stage lives in its own private module; this package re-exports the public surface.
"""

from crosscheck.pipeline._affect import (
    EmotionLexicon,
    EmotionVector,
    SentimentAnalyzer,
    SentimentLexicon,
    default_emotion_lexicon,
    default_sentiment_lexicon,
    emotion,
    load_emotion_lexicon,
    load_sentiment_lexicon,
    sentiment,
    sentiment_diff,
)
from crosscheck.pipeline._clustering import (
    KMeansModel,
    MatchedStory,
    ScoredPost,
    StoryClustering,
    assign,
    filter_relevant,
    kmeans_fit,
    mean_silhouette,
    select_k,
)
from crosscheck.pipeline._config import FeatureConfig
from crosscheck.pipeline._constants import (
    FEATURE_LAYOUT_VERSION,
    FEATURE_NAMES,
    MODEL_SCHEMA,
    Patterns,
)
from crosscheck.pipeline._corpus import (
    CleanedText,
    CleanPost,
    RawPost,
    TimeWindow,
    clean_post,
    clean_posts,
    clean_text,
    default_stopwords,
    load_posts,
    load_store,
    load_wordlist,
    restrict_sources,
    save_store,
    select_window,
)
from crosscheck.pipeline._embedding import (
    WordVectorStore,
    default_vectors,
    embed,
    load_vectors,
    semantic_similarity,
)
from crosscheck.pipeline._entities import (
    EntityExtractor,
    EntityList,
    GazetteerExtractor,
    default_extractor,
    extract_entities,
    load_gazetteer,
)
from crosscheck.pipeline._errors import (
    CrossCheckError,
    DimInconsistentError,
    DimMismatchError,
    DuplicateIdError,
    EmptyAfterCleaningError,
    EmptyNodeError,
    EmptyReliableSetError,
    EmptyStoryError,
    EmptyVocabularyError,
    EmptyWindowError,
    IoError,
    LayoutMismatchError,
    NoRelevantStoryError,
    NoVerifiableClaimsError,
    ParseError,
    SchemaVersionMismatchError,
    ShapeMismatchError,
    SingleClassDataError,
    SingleClusterError,
    TooFewPointsError,
    UnverifiableError,
    ZeroTargetVectorError,
)
from crosscheck.pipeline._features import FeatureResources, FeatureVector, extract_features
from crosscheck.pipeline._types import CLASS_ORDER, Emotion, Label, UnverifiableReason
from crosscheck.pipeline._vectorizer import SparseVector, TfIdfModel, cosine, fit, transform


__all__ = [
    "CLASS_ORDER",
    "FEATURE_LAYOUT_VERSION",
    "FEATURE_NAMES",
    "MODEL_SCHEMA",
    "CleanPost",
    "CleanedText",
    "CrossCheckError",
    "DimInconsistentError",
    "DimMismatchError",
    "DuplicateIdError",
    "Emotion",
    "EmotionLexicon",
    "EmotionVector",
    "EmptyAfterCleaningError",
    "EmptyNodeError",
    "EmptyReliableSetError",
    "EmptyStoryError",
    "EmptyVocabularyError",
    "EmptyWindowError",
    "EntityExtractor",
    "EntityList",
    "FeatureConfig",
    "FeatureResources",
    "FeatureVector",
    "GazetteerExtractor",
    "IoError",
    "KMeansModel",
    "Label",
    "LayoutMismatchError",
    "MatchedStory",
    "NoRelevantStoryError",
    "NoVerifiableClaimsError",
    "ParseError",
    "Patterns",
    "RawPost",
    "SchemaVersionMismatchError",
    "ScoredPost",
    "SentimentAnalyzer",
    "SentimentLexicon",
    "ShapeMismatchError",
    "SingleClassDataError",
    "SingleClusterError",
    "SparseVector",
    "StoryClustering",
    "TfIdfModel",
    "TimeWindow",
    "TooFewPointsError",
    "UnverifiableError",
    "UnverifiableReason",
    "WordVectorStore",
    "ZeroTargetVectorError",
    "assign",
    "clean_post",
    "clean_posts",
    "clean_text",
    "cosine",
    "default_emotion_lexicon",
    "default_extractor",
    "default_sentiment_lexicon",
    "default_stopwords",
    "default_vectors",
    "embed",
    "emotion",
    "extract_entities",
    "extract_features",
    "filter_relevant",
    "fit",
    "kmeans_fit",
    "load_emotion_lexicon",
    "load_gazetteer",
    "load_posts",
    "load_sentiment_lexicon",
    "load_store",
    "load_vectors",
    "load_wordlist",
    "mean_silhouette",
    "restrict_sources",
    "save_store",
    "select_k",
    "select_window",
    "semantic_similarity",
    "sentiment",
    "sentiment_diff",
    "transform",
]
