from __future__ import annotations

import numpy as np
import pytest

from capote import (
    ASPECTS,
    AspectScoreTransformer,
    ControversyRegression,
    ols_fit,
    reference_model,
    score_all,
)
from capote.errors import DegenerateInputError

from conftest import make_comment, make_debate, T0, DAY


def sample_debates():
    return [
        make_debate(
            debate_id="a",
            body="Barack Obama met Angela Merkel. It was terrible.",
            comments=[
                make_comment("I love this great idea", author="x", at=T0 + 3 * DAY),
                make_comment("awful bad plan", author="y", at=T0 + 9 * DAY),
            ],
            comments_public=True,
        ),
        make_debate(debate_id="b", body="Quiet day with no drama."),
    ]


def test_transformer_matches_direct_scoring(tiny_resources) -> None:
    debates = sample_debates()
    transformer = AspectScoreTransformer(
        lexicon=tiny_resources.lexicon, gazetteer=tiny_resources.gazetteer
    )
    matrix = transformer.fit_transform(debates)
    assert matrix.shape == (2, 5)
    for row, debate in zip(matrix, debates):
        expected = score_all(debate, tiny_resources).aspect_vector()
        assert tuple(row) == pytest.approx(expected, abs=0)


def test_transformer_empty_input(tiny_resources) -> None:
    transformer = AspectScoreTransformer(
        lexicon=tiny_resources.lexicon, gazetteer=tiny_resources.gazetteer
    )
    assert transformer.fit_transform([]).shape == (0, 5)


def test_transformer_rejects_non_debates() -> None:
    with pytest.raises(TypeError, match="Debate"):
        AspectScoreTransformer().fit(["not a debate"])


def test_transformer_feature_names() -> None:
    names = AspectScoreTransformer().get_feature_names_out()
    assert list(names) == list(ASPECTS)


def test_transformer_defaults_to_bundled_resources() -> None:
    debates = [make_debate(body="The outrage was tremendous, said Barack Obama.")]
    matrix = AspectScoreTransformer().fit_transform(debates)
    assert matrix.shape == (1, 5)
    assert matrix[0, ASPECTS.index("emotion")] > 0


def test_regression_fit_matches_stats_core() -> None:
    rng = np.random.default_rng(3)
    X = rng.uniform(0, 1, size=(80, 5))
    y = 0.1 + X @ np.array([0.2, 0.3, 0.05, 0.15, 0.4]) + rng.normal(0, 0.05, size=80)
    estimator = ControversyRegression().fit(X, y)
    direct = ols_fit(y, {name: X[:, i] for i, name in enumerate(ASPECTS)})
    assert estimator.intercept_ == direct.intercept
    assert tuple(estimator.coef_) == direct.coefficients[1:]
    assert estimator.result_.adj_r_squared == direct.adj_r_squared


def test_regression_predict_clamps_and_raw_does_not() -> None:
    estimator = ControversyRegression.from_model(reference_model())
    X = np.zeros((1, 5))
    assert estimator.predict(X)[0] == 0.0
    assert estimator.predict_raw(X)[0] == pytest.approx(-0.15386)
    unclipped = ControversyRegression.from_model(reference_model(), clip=False)
    assert unclipped.predict(X)[0] == pytest.approx(-0.15386)


def test_regression_requires_fit_before_predict() -> None:
    with pytest.raises(DegenerateInputError, match="not fitted"):
        ControversyRegression().predict(np.zeros((1, 5)))


def test_regression_to_model_round_trip() -> None:
    estimator = ControversyRegression.from_model(reference_model())
    model = estimator.to_model(provenance="round-trip")
    assert model.intercept == reference_model().intercept
    assert model.weights == reference_model().weights


def test_get_params_and_clone() -> None:
    sklearn_base = pytest.importorskip("sklearn.base")
    estimator = ControversyRegression(clip=False)
    assert estimator.get_params()["clip"] is False
    clone = sklearn_base.clone(estimator)
    assert clone.get_params()["clip"] is False
    transformer = AspectScoreTransformer()
    assert set(transformer.get_params()) == {"lexicon", "gazetteer", "config"}


def test_pipeline_composition(tiny_resources) -> None:
    pipeline_mod = pytest.importorskip("sklearn.pipeline")
    debates = sample_debates()
    for i in range(8):
        comments = [
            make_comment("great good stuff", author=f"p{j}", at=T0 + j * (i + 1) * DAY)
            for j in range(i % 4)
        ] + [
            make_comment("awful terrible mess", author=f"n{j}", at=T0 + (j + 7) * DAY)
            for j in range((i + 1) % 3)
        ]
        debates.append(
            make_debate(
                debate_id=f"c{i}",
                body="great awful fine day " * (i + 1),
                source=f"s{i % 3}",
                comments=comments,
                comments_public=bool(i % 2),
            )
        )
    pipeline = pipeline_mod.Pipeline(
        [
            (
                "scores",
                AspectScoreTransformer(
                    lexicon=tiny_resources.lexicon, gazetteer=tiny_resources.gazetteer
                ),
            ),
            ("model", ControversyRegression()),
        ]
    )
    rng = np.random.default_rng(1)
    y = rng.uniform(0, 1, size=len(debates))
    pipeline.fit(debates, y)
    predictions = pipeline.predict(debates)
    assert predictions.shape == (len(debates),)
    assert np.all(predictions >= 0.0) and np.all(predictions <= 1.0)
