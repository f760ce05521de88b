"""Controversy analytics over debate corpora and crowd annotations.

The package scores debates on five aspects (actors, polarity, openness,
time persistence, emotion), combines them through a linear controversy
model, and aggregates crowd annotations into agreement metrics, correlation
tables, and regression reports.
"""

__version__ = "0.1.0"

from .aspects import (
    AspectScores,
    doc_sentiment,
    extract_actors,
    score_actors,
    score_all,
    score_emotion,
    score_openness,
    score_polarization,
    score_time_persistence,
    tokenize,
)
from .corpus import (
    ASPECTS,
    QUESTIONS,
    AnnotationSet,
    Comment,
    Debate,
    dump_corpus,
    fetch_articles,
    load_annotations,
    load_corpus,
)
from .crowdtruth import (
    ArticleVector,
    ClarityReport,
    WorkerQuality,
    aspect_scores_from_annotations,
    build_article_vectors,
    descriptive_report,
    question_clarity,
    worker_quality,
)
from .errors import (
    CapoteError,
    CollinearityError,
    ConfigurationError,
    CorpusFormatError,
    DegenerateInputError,
    DegreesOfFreedomError,
    StatsError,
    TransportError,
)
from .estimators import AspectScoreTransformer, ControversyRegression
from .model import (
    AnalysisReport,
    CapoteModel,
    DebateScore,
    Prediction,
    REFERENCE_MODEL_NAME,
    fit_aspect_model,
    fit_from_annotations,
    load_model,
    model_from_fit,
    predict,
    reference_model,
    resolve_model,
    save_model,
    score_corpus,
)
from .resources import (
    Gazetteer,
    Lexicon,
    Resources,
    ScorerConfig,
    default_gazetteer,
    default_lexicon,
    load_resources,
)
from .stats import (
    CorrelationMatrix,
    RegressionResult,
    adj_r_squared,
    correlation_matrix,
    ols_fit,
    pearson,
    t_sf,
)

__all__ = [
    "ASPECTS",
    "QUESTIONS",
    "AnalysisReport",
    "AnnotationSet",
    "ArticleVector",
    "AspectScoreTransformer",
    "AspectScores",
    "CapoteError",
    "CapoteModel",
    "ClarityReport",
    "CollinearityError",
    "Comment",
    "ConfigurationError",
    "ControversyRegression",
    "CorpusFormatError",
    "CorrelationMatrix",
    "Debate",
    "DebateScore",
    "DegenerateInputError",
    "DegreesOfFreedomError",
    "Gazetteer",
    "Lexicon",
    "Prediction",
    "REFERENCE_MODEL_NAME",
    "RegressionResult",
    "Resources",
    "ScorerConfig",
    "StatsError",
    "TransportError",
    "WorkerQuality",
    "adj_r_squared",
    "aspect_scores_from_annotations",
    "build_article_vectors",
    "correlation_matrix",
    "default_gazetteer",
    "default_lexicon",
    "descriptive_report",
    "doc_sentiment",
    "dump_corpus",
    "extract_actors",
    "fetch_articles",
    "fit_aspect_model",
    "fit_from_annotations",
    "load_annotations",
    "load_corpus",
    "load_model",
    "load_resources",
    "model_from_fit",
    "ols_fit",
    "pearson",
    "predict",
    "question_clarity",
    "reference_model",
    "resolve_model",
    "save_model",
    "score_actors",
    "score_all",
    "score_corpus",
    "score_emotion",
    "score_openness",
    "score_polarization",
    "score_time_persistence",
    "t_sf",
    "tokenize",
    "worker_quality",
    "__version__",
]
