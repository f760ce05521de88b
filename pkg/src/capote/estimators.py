"""Scikit-learn style wrappers around the scorers and the linear model.

``AspectScoreTransformer`` turns a sequence of debates into an (n, 5) score
matrix; ``ControversyRegression`` fits and applies the five-aspect linear
model.  Both follow the estimator protocol (``fit``/``transform``/
``predict``/``get_params``), so they compose with pipelines, grid search,
and cloning.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin, TransformerMixin

from .corpus import ASPECTS, Debate
from .errors import DegenerateInputError
from .model import CapoteModel, model_from_fit, reference_model
from .resources import Gazetteer, Lexicon, Resources, ScorerConfig, load_resources
from .aspects import score_all
from .stats import ols_fit
from .validation import as_float_matrix, as_float_vector, check_equal_length


def _check_debates(X) -> list[Debate]:
    debates = list(X)
    for item in debates:
        if not isinstance(item, Debate):
            raise TypeError(f"expected Debate values, got {type(item).__name__}")
    return debates


class AspectScoreTransformer(BaseEstimator, TransformerMixin):
    """Stateless transformer: debates in, aspect score matrix out.

    Columns follow the canonical aspect order.  Resources default to the
    bundled lexicon and gazetteer when not supplied.
    """

    def __init__(
        self,
        lexicon: Lexicon | None = None,
        gazetteer: Gazetteer | None = None,
        config: ScorerConfig | None = None,
    ):
        self.lexicon = lexicon
        self.gazetteer = gazetteer
        self.config = config

    def _resources(self) -> Resources:
        if self.lexicon is not None and self.gazetteer is not None:
            return Resources(lexicon=self.lexicon, gazetteer=self.gazetteer)
        defaults = load_resources()
        return Resources(
            lexicon=self.lexicon if self.lexicon is not None else defaults.lexicon,
            gazetteer=self.gazetteer if self.gazetteer is not None else defaults.gazetteer,
        )

    def fit(self, X, y=None):
        _check_debates(X)
        self.resources_ = self._resources()
        return self

    def transform(self, X) -> np.ndarray:
        debates = _check_debates(X)
        resources = getattr(self, "resources_", None) or self._resources()
        rows = [score_all(debate, resources, self.config).aspect_vector() for debate in debates]
        return np.asarray(rows, dtype=float).reshape(len(debates), len(ASPECTS))

    def get_feature_names_out(self, input_features=None) -> np.ndarray:
        return np.asarray(ASPECTS, dtype=object)


class ControversyRegression(BaseEstimator, RegressorMixin):
    """Least-squares controversy model over the five aspect columns.

    ``predict`` clamps into [0, 1] (scores are defined on that interval);
    ``predict_raw`` exposes the unclamped linear value for residual work.
    """

    def __init__(self, clip: bool = True):
        self.clip = clip

    def fit(self, X, y):
        X = as_float_matrix(X, n_columns=len(ASPECTS), name="X")
        y = as_float_vector(y, "y")
        check_equal_length(y, X[:, 0], "y", "X rows")
        self.result_ = ols_fit(y, {name: X[:, i] for i, name in enumerate(ASPECTS)})
        self.intercept_ = self.result_.intercept
        self.coef_ = np.asarray(self.result_.coefficients[1:], dtype=float)
        self.n_features_in_ = len(ASPECTS)
        return self

    def _check_fitted(self) -> None:
        if not hasattr(self, "coef_"):
            raise DegenerateInputError(
                "this ControversyRegression instance is not fitted yet"
            )

    def predict_raw(self, X) -> np.ndarray:
        self._check_fitted()
        X = as_float_matrix(X, n_columns=len(ASPECTS), name="X")
        return self.intercept_ + X @ self.coef_

    def predict(self, X) -> np.ndarray:
        raw = self.predict_raw(X)
        if self.clip:
            return np.clip(raw, 0.0, 1.0)
        return raw

    def to_model(self, provenance: str = "fitted") -> CapoteModel:
        self._check_fitted()
        if hasattr(self, "result_"):
            return model_from_fit(self.result_, provenance=provenance)
        return CapoteModel(
            intercept=float(self.intercept_),
            weights={name: float(w) for name, w in zip(ASPECTS, self.coef_)},
            provenance=provenance,
        )

    @classmethod
    def from_model(cls, model: CapoteModel | None = None, clip: bool = True):
        """Build an already-usable regressor from fixed coefficients."""
        if model is None:
            model = reference_model()
        estimator = cls(clip=clip)
        estimator.intercept_ = float(model.intercept)
        estimator.coef_ = np.asarray([model.weights[name] for name in ASPECTS], dtype=float)
        estimator.n_features_in_ = len(ASPECTS)
        if model.source_fit is not None:
            estimator.result_ = model.source_fit
        return estimator
