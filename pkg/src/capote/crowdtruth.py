"""Crowd-annotation aggregation and agreement metrics.

Answers aggregate into per-article count vectors; agreement is measured with
cosine similarity in answer space.  Worker vectors are one-hot per question
({yes, no} blocks), so disagreement registers as orthogonality.  No worker
filtering is applied; quality numbers are reported for inspection only.
"""

from __future__ import annotations

import math
import warnings
from collections import defaultdict
from dataclasses import dataclass
from typing import Mapping, Sequence

from .aspects import AspectScores
from .corpus import QUESTIONS, AnnotationSet
from .errors import DegenerateInputError


@dataclass(frozen=True)
class ArticleVector:
    """Per-article answer counts for the six questions; every worker answers
    all six, so each question carries the same total."""

    article_id: str
    yes_counts: Mapping[str, int]
    n_workers: int

    def yes(self, question: str) -> int:
        return self.yes_counts[question]

    def no(self, question: str) -> int:
        return self.n_workers - self.yes_counts[question]


@dataclass(frozen=True)
class WorkerQuality:
    """Mean leave-one-out agreement of one worker across their articles."""

    worker_id: str
    mean_agreement: float
    n_articles: int


@dataclass(frozen=True)
class ClarityReport:
    """Per-question descriptive summary over a whole annotation set."""

    ratio_of_yes: Mapping[str, float]
    majority_vote_yes: Mapping[str, float]
    mean_clarity: Mapping[str, float]
    n_articles: int
    n_annotations: int

    def rows(self) -> list[tuple[str, float, float, float]]:
        return [
            (q, self.ratio_of_yes[q], self.majority_vote_yes[q], self.mean_clarity[q])
            for q in QUESTIONS
        ]

    def to_csv_rows(self) -> list[list[str]]:
        rows = [["question", "ratio_of_yes", "majority_vote_yes", "mean_clarity"]]
        for question, ratio, majority, clarity in self.rows():
            rows.append([question, f"{ratio:.4f}", f"{majority:.4f}", f"{clarity:.4f}"])
        return rows


def build_article_vectors(annotations: Sequence[AnnotationSet]) -> list[ArticleVector]:
    """Sum binary answers into one count vector per article, sorted by id."""
    if not annotations:
        raise DegenerateInputError("no annotations to aggregate")
    yes: dict[str, dict[str, int]] = defaultdict(lambda: {q: 0 for q in QUESTIONS})
    workers: dict[str, int] = defaultdict(int)
    for annotation in annotations:
        counts = yes[annotation.article_id]
        workers[annotation.article_id] += 1
        for question in QUESTIONS:
            if annotation.answers[question]:
                counts[question] += 1
    return [
        ArticleVector(article_id=article_id, yes_counts=yes[article_id], n_workers=workers[article_id])
        for article_id in sorted(yes)
    ]


def question_clarity(vector: ArticleVector, question: str) -> float:
    """Cosine of the answer-count vector against its majority axis.

    1 at unanimity, 1/sqrt(2) at a tie; ties resolve to the yes axis (the
    value is identical either way).
    """
    yes = vector.yes(question)
    no = vector.no(question)
    if yes + no < 1:
        raise DegenerateInputError(
            f"article '{vector.article_id}': no answers for question '{question}'"
        )
    return max(yes, no) / math.hypot(yes, no)


def worker_quality(annotations: Sequence[AnnotationSet]) -> list[WorkerQuality]:
    """Leave-one-out cosine agreement per worker, averaged over their articles.

    Articles judged by a single worker are excluded (with a warning), as are
    workers left with no eligible articles.
    """
    by_article: dict[str, list[AnnotationSet]] = defaultdict(list)
    for annotation in annotations:
        by_article[annotation.article_id].append(annotation)

    agreements: dict[str, list[float]] = defaultdict(list)
    worker_norm = math.sqrt(len(QUESTIONS))
    for article_id in sorted(by_article):
        group = by_article[article_id]
        m = len(group)
        if m < 2:
            warnings.warn(
                f"article '{article_id}' has a single worker; "
                "excluded from worker agreement",
                stacklevel=2,
            )
            continue
        yes_totals = {q: sum(1 for a in group if a.answers[q]) for q in QUESTIONS}
        for annotation in group:
            dot = 0
            norm_sq = 0
            for question in QUESTIONS:
                others_yes = yes_totals[question] - (1 if annotation.answers[question] else 0)
                others_no = (m - 1) - others_yes
                dot += others_yes if annotation.answers[question] else others_no
                norm_sq += others_yes * others_yes + others_no * others_no
            agreements[annotation.worker_id].append(dot / (worker_norm * math.sqrt(norm_sq)))

    results = []
    all_workers = sorted({a.worker_id for a in annotations})
    for worker_id in all_workers:
        values = agreements.get(worker_id)
        if not values:
            warnings.warn(
                f"worker '{worker_id}' has no articles with peers; excluded from output",
                stacklevel=2,
            )
            continue
        results.append(
            WorkerQuality(
                worker_id=worker_id,
                mean_agreement=math.fsum(values) / len(values),
                n_articles=len(values),
            )
        )
    return results


def aspect_scores_from_annotations(
    annotations: Sequence[AnnotationSet],
) -> dict[str, AspectScores]:
    """Per-article scores: the yes fraction for each question, controversy included."""
    scores: dict[str, AspectScores] = {}
    for vector in build_article_vectors(annotations):
        m = vector.n_workers
        fractions = {question: vector.yes(question) / m for question in QUESTIONS}
        scores[vector.article_id] = AspectScores(
            actors=fractions["actors"],
            polarity=fractions["polarity"],
            openness=fractions["openness"],
            time=fractions["time"],
            emotion=fractions["emotion"],
            controversy=fractions["controversy"],
        )
    return scores


def descriptive_report(annotations: Sequence[AnnotationSet]) -> ClarityReport:
    """Per-question summary: global yes ratio, majority-vote share, mean clarity.

    The yes ratio is count-based over all individual judgments (not a mean of
    per-article fractions), and a tied article does not count as a majority
    yes.
    """
    vectors = build_article_vectors(annotations)
    total_answers = sum(v.n_workers for v in vectors)
    ratio = {}
    majority = {}
    clarity = {}
    for question in QUESTIONS:
        ratio[question] = sum(v.yes(question) for v in vectors) / total_answers
        majority[question] = sum(1 for v in vectors if v.yes(question) > v.no(question)) / len(
            vectors
        )
        clarity[question] = math.fsum(question_clarity(v, question) for v in vectors) / len(
            vectors
        )
    return ClarityReport(
        ratio_of_yes=ratio,
        majority_vote_yes=majority,
        mean_clarity=clarity,
        n_articles=len(vectors),
        n_annotations=total_answers,
    )
