"""The five-aspect linear controversy model.

Holds intercept and per-aspect weights, predicts a controversy score from
aspect scores, and orchestrates the full crowd-study analysis: descriptive
report, correlation matrix, the all-aspect regression, and the five
leave-one-aspect-out regressions.

A linear model is unbounded while scores live in [0, 1], so predictions are
clamped; the raw value is kept alongside for diagnostics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .aspects import AspectScores, score_all
from .corpus import ASPECTS, QUESTIONS, AnnotationSet, Debate
from .crowdtruth import ClarityReport, aspect_scores_from_annotations, descriptive_report
from .errors import ConfigurationError, DegreesOfFreedomError
from .resources import Resources, ScorerConfig
from .stats import (
    ALPHA,
    CorrelationMatrix,
    RegressionResult,
    correlation_matrix,
    ols_fit,
    regression_table,
)

# Built-in reference coefficients, estimated on a large crowd-rated news
# corpus; addressable by name from the CLI and the model registry.
REFERENCE_MODEL_NAME = "paper-table-3"
_REFERENCE_INTERCEPT = -0.15386
_REFERENCE_WEIGHTS = {
    "actors": 0.00787,
    "polarity": 0.30629,
    "openness": 0.10345,
    "time": 0.21832,
    "emotion": 0.47036,
}


@dataclass(frozen=True)
class CapoteModel:
    """Intercept plus one weight per aspect, with provenance attached."""

    intercept: float
    weights: Mapping[str, float]
    provenance: str
    source_fit: RegressionResult | None = None

    def __post_init__(self):
        if set(self.weights) != set(ASPECTS):
            missing = sorted(set(ASPECTS) - set(self.weights))
            extra = sorted(set(self.weights) - set(ASPECTS))
            parts = []
            if missing:
                parts.append(f"missing weights: {', '.join(missing)}")
            if extra:
                parts.append(f"unexpected weights: {', '.join(extra)}")
            raise ValueError("; ".join(parts))
        if not self.provenance:
            raise ValueError("provenance must be set")


@dataclass(frozen=True)
class Prediction:
    """A clamped controversy score plus the raw linear value behind it."""

    score: float
    raw: float


def reference_model() -> CapoteModel:
    """The built-in reference model (registry name "paper-table-3")."""
    return CapoteModel(
        intercept=_REFERENCE_INTERCEPT,
        weights=dict(_REFERENCE_WEIGHTS),
        provenance=REFERENCE_MODEL_NAME,
    )


def predict(model: CapoteModel, scores: AspectScores | Mapping[str, float]) -> Prediction:
    """Apply the linear model to one score vector.

    Accepts an AspectScores value or any mapping carrying the five aspect
    keys; a missing aspect raises with the aspect named.
    """
    if isinstance(scores, AspectScores):
        values = {name: getattr(scores, name) for name in ASPECTS}
    else:
        values = {}
        for name in ASPECTS:
            if name not in scores:
                raise ValueError(f"missing aspect '{name}'")
            values[name] = float(scores[name])
    raw = model.intercept + math.fsum(model.weights[name] * values[name] for name in ASPECTS)
    return Prediction(score=max(0.0, min(1.0, raw)), raw=raw)


@dataclass(frozen=True)
class AnalysisReport:
    """Everything the crowd-study analysis produces.

    ``fits_4of5`` holds exactly one regression per omitted aspect, keyed by
    the aspect left out.
    """

    descriptive: ClarityReport
    correlations: CorrelationMatrix
    fit_all5: RegressionResult
    fits_4of5: Mapping[str, RegressionResult]
    n_articles: int

    def __post_init__(self):
        if set(self.fits_4of5) != set(ASPECTS):
            raise ValueError("fits_4of5 must hold exactly one fit per omitted aspect")

    def to_text(self) -> str:
        lines = [
            "Crowd study report",
            "==================",
            "",
            f"articles: {self.n_articles}",
            f"annotations: {self.descriptive.n_annotations}",
            "",
            "Per-question summary",
            "--------------------",
            f"{'question':<12}  {'ratio_yes':>9}  {'majority_yes':>12}  {'mean_clarity':>12}",
        ]
        for question, ratio, majority, clarity in self.descriptive.rows():
            lines.append(f"{question:<12}  {ratio:>9.4f}  {majority:>12.4f}  {clarity:>12.4f}")
        lines.extend(["", "Pearson correlations", "--------------------"])
        names = self.correlations.names
        header = f"{'':<12}" + "".join(f"{n[:10]:>11}" for n in names)
        lines.append(header)
        for i, name in enumerate(names):
            row = f"{name:<12}" + "".join(
                f"{self.correlations.values[i, j]:>11.4f}" for j in range(len(names))
            )
            lines.append(row)
        lines.extend(
            [
                "",
                "Regression: controversy ~ " + " + ".join(ASPECTS),
                "",
                regression_table(self.fit_all5),
            ]
        )
        not_significant = [
            term
            for term in self.fit_all5.predictor_names
            if not self.fit_all5.significant(term)
        ]
        if not_significant:
            lines.append("")
            lines.append(
                f"not significant at alpha={ALPHA}: " + ", ".join(not_significant)
            )
        lines.extend(["", "Regressions omitting one aspect", "-------------------------------"])
        for aspect in ASPECTS:
            lines.extend(["", f"omitting {aspect}:", regression_table(self.fits_4of5[aspect])])
        lines.append("")
        return "\n".join(lines)


def fit_aspect_model(scores_by_article: Mapping[str, AspectScores]) -> RegressionResult:
    """Regress controversy on the five aspect columns over the given articles."""
    article_ids = sorted(scores_by_article)
    for article_id in article_ids:
        if scores_by_article[article_id].controversy is None:
            raise ValueError(f"article '{article_id}' has no controversy score")
    y = [scores_by_article[a].controversy for a in article_ids]
    X = {
        name: [getattr(scores_by_article[a], name) for a in article_ids]
        for name in ASPECTS
    }
    return ols_fit(y, X)


def model_from_fit(fit: RegressionResult, provenance: str = "fitted") -> CapoteModel:
    """Wrap a five-aspect regression result as a usable model."""
    if tuple(fit.predictor_names) != ASPECTS:
        raise ValueError(
            f"fit must have exactly the aspect predictors {ASPECTS}, got {fit.predictor_names}"
        )
    weights = dict(zip(fit.predictor_names, fit.coefficients[1:]))
    return CapoteModel(
        intercept=fit.intercept, weights=weights, provenance=provenance, source_fit=fit
    )


def fit_from_annotations(annotations: Sequence[AnnotationSet]) -> AnalysisReport:
    """Run the full analysis on crowd annotations.

    Aggregates per-article scores, then produces the descriptive report, the
    six-column correlation matrix, the all-aspect fit, and one fit per
    omitted aspect.  Needs at least 7 articles for positive degrees of
    freedom in the full fit.
    """
    scores = aspect_scores_from_annotations(annotations)
    n_articles = len(scores)
    if n_articles < 7:
        raise DegreesOfFreedomError(
            f"need at least 7 distinct articles to fit the full model, got {n_articles}"
        )
    article_ids = sorted(scores)
    columns = {
        question: [getattr(scores[a], question) for a in article_ids] for question in QUESTIONS
    }
    fit_all5 = ols_fit(columns["controversy"], {name: columns[name] for name in ASPECTS})
    fits_4of5 = {
        omitted: ols_fit(
            columns["controversy"],
            {name: columns[name] for name in ASPECTS if name != omitted},
        )
        for omitted in ASPECTS
    }
    return AnalysisReport(
        descriptive=descriptive_report(annotations),
        correlations=correlation_matrix(columns),
        fit_all5=fit_all5,
        fits_4of5=fits_4of5,
        n_articles=n_articles,
    )


@dataclass(frozen=True)
class DebateScore:
    """One corpus row: aspect scores plus the model's controversy prediction."""

    debate_id: str
    scores: AspectScores
    prediction: Prediction


def score_corpus(
    debates: Sequence[Debate],
    resources: Resources,
    model: CapoteModel | None = None,
    config: ScorerConfig | None = None,
) -> list[DebateScore]:
    """Score every debate and predict its controversy, ordered by debate id."""
    active_model = model if model is not None else reference_model()
    results = []
    for debate in sorted(debates, key=lambda d: d.id):
        aspect_scores = score_all(debate, resources, config)
        prediction = predict(active_model, aspect_scores)
        scored = AspectScores(
            actors=aspect_scores.actors,
            polarity=aspect_scores.polarity,
            openness=aspect_scores.openness,
            time=aspect_scores.time,
            emotion=aspect_scores.emotion,
            controversy=prediction.score,
        )
        results.append(DebateScore(debate_id=debate.id, scores=scored, prediction=prediction))
    return results


def save_model(model: CapoteModel, path: str | Path) -> None:
    """Write a model as a flat text file: intercept plus five weight lines."""
    lines = [f"intercept = {model.intercept!r}"]
    for aspect in ASPECTS:
        lines.append(f"weight.{aspect} = {model.weights[aspect]!r}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_model(path: str | Path) -> CapoteModel:
    """Read a model file written by :func:`save_model`."""
    path = Path(path)
    if not path.exists():
        raise ConfigurationError(f"model file not found: {path}")
    intercept: float | None = None
    weights: dict[str, float] = {}
    for line_no, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigurationError(f"{path}: line {line_no}: expected key = value")
        key, _, value = line.partition("=")
        key = key.strip()
        try:
            number = float(value.strip())
        except ValueError:
            raise ConfigurationError(
                f"{path}: line {line_no}: value for {key!r} is not numeric"
            ) from None
        if key == "intercept":
            intercept = number
        elif key.startswith("weight."):
            aspect = key[len("weight.") :]
            if aspect not in ASPECTS:
                raise ConfigurationError(f"{path}: line {line_no}: unknown aspect {aspect!r}")
            weights[aspect] = number
        else:
            raise ConfigurationError(f"{path}: line {line_no}: unknown key {key!r}")
    if intercept is None:
        raise ConfigurationError(f"{path}: missing intercept")
    missing = sorted(set(ASPECTS) - set(weights))
    if missing:
        raise ConfigurationError(f"{path}: missing weights: {', '.join(missing)}")
    try:
        return CapoteModel(intercept=intercept, weights=weights, provenance=f"file:{path.name}")
    except ValueError as exc:
        raise ConfigurationError(f"{path}: {exc}") from None


def resolve_model(name_or_path: str) -> CapoteModel:
    """Look up a built-in model by name, or load a model file by path."""
    if name_or_path == REFERENCE_MODEL_NAME:
        return reference_model()
    if Path(name_or_path).exists():
        return load_model(name_or_path)
    raise ConfigurationError(
        f"unknown model '{name_or_path}': not a built-in name "
        f"(available: {REFERENCE_MODEL_NAME}) and no such file"
    )
