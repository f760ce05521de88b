from __future__ import annotations

import math
import random

import pytest

from capote import (
    DegenerateInputError,
    QUESTIONS,
    aspect_scores_from_annotations,
    build_article_vectors,
    descriptive_report,
    question_clarity,
    worker_quality,
)
from capote.crowdtruth import ArticleVector

from conftest import make_annotation


def annotations_for_counts(article: str, yes_by_question: dict[str, int], n_workers: int):
    """Workers w0..wN answering yes on the first ``yes`` workers per question."""
    out = []
    for w in range(n_workers):
        answers = {q: w < yes_by_question.get(q, 0) for q in QUESTIONS}
        out.append(make_annotation(f"w{w}", article, **answers))
    return out


# ---------------------------------------------------------------------------
# vectors

def test_build_vectors_unanimous() -> None:
    annotations = [make_annotation(f"w{i}", "a1", controversy=True) for i in range(3)]
    (vector,) = build_article_vectors(annotations)
    assert vector.yes("controversy") == 3
    assert vector.no("controversy") == 0
    assert vector.yes("actors") == 0
    assert vector.n_workers == 3


def test_build_vectors_counts() -> None:
    annotations = [
        make_annotation("w1", "a1", openness=True),
        make_annotation("w2", "a1", openness=True),
        make_annotation("w3", "a1", openness=False),
    ]
    (vector,) = build_article_vectors(annotations)
    assert vector.yes("openness") == 2
    assert vector.no("openness") == 1


def test_build_vectors_groups_interleaved_articles() -> None:
    annotations = [
        make_annotation("w1", "a2", time=True),
        make_annotation("w1", "a1", time=True),
        make_annotation("w2", "a2", time=False),
        make_annotation("w2", "a1", time=True),
    ]
    vectors = build_article_vectors(annotations)
    assert [v.article_id for v in vectors] == ["a1", "a2"]
    assert vectors[0].yes("time") == 2
    assert vectors[1].yes("time") == 1


def test_build_vectors_rejects_empty_input() -> None:
    with pytest.raises(DegenerateInputError):
        build_article_vectors([])


# ---------------------------------------------------------------------------
# clarity

def test_clarity_unanimous_is_one() -> None:
    vector = ArticleVector("a", {q: 6 if q == "time" else 0 for q in QUESTIONS}, 6)
    assert question_clarity(vector, "time") == 1.0
    assert question_clarity(vector, "actors") == 1.0  # unanimous no


def test_clarity_tie() -> None:
    vector = ArticleVector("a", {q: 3 for q in QUESTIONS}, 6)
    assert question_clarity(vector, "emotion") == pytest.approx(3 / math.sqrt(18), abs=1e-12)
    assert question_clarity(vector, "emotion") == pytest.approx(0.7071, abs=1e-4)


def test_clarity_five_one() -> None:
    vector = ArticleVector("a", {q: 5 for q in QUESTIONS}, 6)
    assert question_clarity(vector, "polarity") == pytest.approx(5 / math.sqrt(26), abs=1e-12)
    assert question_clarity(vector, "polarity") == pytest.approx(0.9806, abs=1e-4)


def test_clarity_requires_answers() -> None:
    vector = ArticleVector("a", {q: 0 for q in QUESTIONS}, 0)
    with pytest.raises(DegenerateInputError):
        question_clarity(vector, "controversy")


def test_clarity_laws_on_random_counts() -> None:
    rng = random.Random(5)
    floor = 1 / math.sqrt(2)
    for _ in range(300):
        total = rng.randint(1, 40)
        yes = rng.randint(0, total)
        vector = ArticleVector("a", {q: yes for q in QUESTIONS}, total)
        clarity = question_clarity(vector, "controversy")
        assert floor - 1e-12 <= clarity <= 1.0
        unanimous = yes == 0 or yes == total
        assert (clarity == 1.0) == unanimous


# ---------------------------------------------------------------------------
# worker quality

def test_worker_identical_to_unanimous_peers() -> None:
    annotations = []
    for w in range(6):
        annotations.append(make_annotation(f"w{w}", "a1", controversy=True, time=True))
    results = worker_quality(annotations)
    assert all(r.mean_agreement == pytest.approx(1.0, abs=1e-12) for r in results)
    assert all(r.n_articles == 1 for r in results)


def test_worker_complement_of_unanimous_peers_scores_zero() -> None:
    annotations = []
    for w in range(5):
        annotations.append(
            make_annotation(f"w{w}", "a1", controversy=True, actors=True, polarity=True)
        )
    annotations.append(
        make_annotation(
            "w5", "a1",
            controversy=False, actors=False, polarity=False,
            openness=True, time=True, emotion=True,
        )
    )
    results = {r.worker_id: r for r in worker_quality(annotations)}
    assert results["w5"].mean_agreement == 0.0


def test_two_workers_half_agreement() -> None:
    first = make_annotation("w1", "a1", controversy=True, actors=True, polarity=True)
    second = make_annotation(
        "w2", "a1", controversy=True, actors=True, polarity=True,
        openness=True, time=True, emotion=True,
    )
    # Agreement on controversy/actors/polarity plus disagreement on the other
    # three: dot 3 over norms sqrt(6) * sqrt(6).
    results = {r.worker_id: r for r in worker_quality([first, second])}
    assert results["w1"].mean_agreement == pytest.approx(0.5, abs=1e-12)
    assert results["w2"].mean_agreement == pytest.approx(0.5, abs=1e-12)


def test_single_worker_article_excluded_with_warning() -> None:
    annotations = [
        make_annotation("w1", "solo", emotion=True),
        make_annotation("w1", "shared", emotion=True),
        make_annotation("w2", "shared", emotion=True),
    ]
    with pytest.warns(UserWarning, match="single worker"):
        results = {r.worker_id: r for r in worker_quality(annotations)}
    assert results["w1"].n_articles == 1
    assert results["w1"].mean_agreement == pytest.approx(1.0)


def test_worker_with_no_eligible_articles_dropped_with_warning() -> None:
    annotations = [
        make_annotation("loner", "only-theirs", emotion=True),
        make_annotation("w1", "shared"),
        make_annotation("w2", "shared"),
    ]
    with pytest.warns(UserWarning):
        results = worker_quality(annotations)
    assert sorted(r.worker_id for r in results) == ["w1", "w2"]


# ---------------------------------------------------------------------------
# aggregated scores

def test_aspect_scores_balanced_controversy() -> None:
    annotations = annotations_for_counts("a1", {"controversy": 3}, 6)
    scores = aspect_scores_from_annotations(annotations)
    assert scores["a1"].controversy == pytest.approx(0.5)


def test_aspect_scores_unanimous_and_two_thirds() -> None:
    annotations = annotations_for_counts("a1", {"openness": 6, "actors": 4}, 6)
    scores = aspect_scores_from_annotations(annotations)
    assert scores["a1"].openness == pytest.approx(1.0)
    assert scores["a1"].actors == pytest.approx(4 / 6, abs=1e-12)


def test_aspect_scores_order_invariant() -> None:
    annotations = annotations_for_counts("a1", {"emotion": 2, "time": 5}, 6)
    annotations += annotations_for_counts("a2", {"emotion": 1}, 3)
    rng = random.Random(8)
    shuffled = annotations[:]
    rng.shuffle(shuffled)
    assert aspect_scores_from_annotations(shuffled) == aspect_scores_from_annotations(annotations)


# ---------------------------------------------------------------------------
# descriptive report

def test_descriptive_single_unanimous_article() -> None:
    annotations = [
        make_annotation(f"w{i}", "a1", **{q: True for q in QUESTIONS}) for i in range(4)
    ]
    report = descriptive_report(annotations)
    for question in QUESTIONS:
        assert report.ratio_of_yes[question] == 1.0
        assert report.majority_vote_yes[question] == 1.0
        assert report.mean_clarity[question] == 1.0


def test_descriptive_tie_is_not_a_majority_yes() -> None:
    annotations = annotations_for_counts("a1", {"controversy": 2}, 4)
    report = descriptive_report(annotations)
    assert report.majority_vote_yes["controversy"] == 0.0
    assert report.ratio_of_yes["controversy"] == pytest.approx(0.5)


def test_ratio_of_yes_is_globally_weighted_not_mean_of_articles() -> None:
    # Article a1: 1 yes of 2.  Article a2: 8 yes of 8.
    annotations = annotations_for_counts("a1", {"controversy": 1}, 2)
    annotations += annotations_for_counts("a2", {"controversy": 8}, 8)
    report = descriptive_report(annotations)
    global_ratio = 9 / 10
    mean_of_fractions = (0.5 + 1.0) / 2
    assert report.ratio_of_yes["controversy"] == pytest.approx(global_ratio)
    assert report.ratio_of_yes["controversy"] != pytest.approx(mean_of_fractions)


def test_descriptive_csv_rows_in_canonical_order() -> None:
    annotations = annotations_for_counts("a1", {q: 1 for q in QUESTIONS}, 2)
    rows = descriptive_report(annotations).to_csv_rows()
    assert rows[0] == ["question", "ratio_of_yes", "majority_vote_yes", "mean_clarity"]
    assert [row[0] for row in rows[1:]] == list(QUESTIONS)
    assert all(len(row) == 4 for row in rows)
