"""Self-contained statistics core.

Pearson correlation, ordinary least squares with full diagnostics, and
Student-t tail probabilities.  Linear algebra goes through an orthogonal
(QR) decomposition; tail probabilities go through the regularized
incomplete beta function so the module has no dependency beyond numpy.

All routines are pure and reentrant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import CollinearityError, DegenerateInputError, DegreesOfFreedomError
from .validation import as_float_vector, check_equal_length

# Significance threshold used for the "significant" column in rendered tables.
ALPHA = 0.05

# p-values below this floor are rendered as "< 1e-15".
P_FLOOR = 1e-15


@dataclass(frozen=True)
class RegressionResult:
    """OLS fit with diagnostics.

    ``coefficients``, ``std_errors``, ``t_values`` and ``p_values`` all have
    length ``len(predictor_names) + 1`` with the intercept first.
    """

    predictor_names: tuple[str, ...]
    coefficients: tuple[float, ...]
    std_errors: tuple[float, ...]
    t_values: tuple[float, ...]
    p_values: tuple[float, ...]
    r_squared: float
    adj_r_squared: float
    n_observations: int

    @property
    def intercept(self) -> float:
        return self.coefficients[0]

    @property
    def term_names(self) -> tuple[str, ...]:
        return ("(intercept)", *self.predictor_names)

    def _index(self, term: str) -> int:
        try:
            return self.term_names.index(term)
        except ValueError:
            raise KeyError(f"unknown term {term!r}") from None

    def coefficient(self, term: str) -> float:
        return self.coefficients[self._index(term)]

    def p_value(self, term: str) -> float:
        return self.p_values[self._index(term)]

    def significant(self, term: str, alpha: float = ALPHA) -> bool:
        return self.p_value(term) < alpha


@dataclass(frozen=True)
class CorrelationMatrix:
    """Symmetric Pearson correlation matrix over named columns."""

    names: tuple[str, ...]
    values: np.ndarray

    def value(self, a: str, b: str) -> float:
        return float(self.values[self.names.index(a), self.names.index(b)])

    def to_csv_rows(self, precision: int = 4) -> list[list[str]]:
        rows = [["", *self.names]]
        for i, name in enumerate(self.names):
            rows.append([name, *(f"{v:.{precision}f}" for v in self.values[i])])
        return rows


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """Sample Pearson correlation coefficient of two equal-length series."""
    xv = as_float_vector(x, "x")
    yv = as_float_vector(y, "y")
    check_equal_length(xv, yv)
    if xv.size < 2:
        raise DegenerateInputError(f"need at least 2 observations, got {xv.size}")
    xd = xv - xv.mean()
    yd = yv - yv.mean()
    sxx = float(xd @ xd)
    syy = float(yd @ yd)
    if sxx == 0.0:
        raise DegenerateInputError("x has zero variance")
    if syy == 0.0:
        raise DegenerateInputError("y has zero variance")
    r = float((xd @ yd) / math.sqrt(sxx * syy))
    return max(-1.0, min(1.0, r))


def correlation_matrix(columns: Mapping[str, Sequence[float]]) -> CorrelationMatrix:
    """Pairwise Pearson correlations; symmetric with a unit diagonal."""
    names = tuple(columns)
    if len(names) < 2:
        raise DegenerateInputError("need at least 2 columns")
    series = [as_float_vector(columns[name], name) for name in names]
    k = len(names)
    values = np.eye(k)
    for i in range(k):
        for j in range(i + 1, k):
            r = pearson(series[i], series[j])
            values[i, j] = r
            values[j, i] = r
    return CorrelationMatrix(names=names, values=values)


def _offending_columns(design: np.ndarray, names: Sequence[str]) -> list[str]:
    """Columns that add no rank to the preceding ones (intercept column first)."""
    kept = [0]
    offending = []
    for j in range(1, design.shape[1]):
        trial = design[:, kept + [j]]
        if np.linalg.matrix_rank(trial) > len(kept):
            kept.append(j)
        else:
            offending.append(names[j - 1])
    return offending


def ols_fit(y: Sequence[float], X: Mapping[str, Sequence[float]]) -> RegressionResult:
    """Least-squares fit of ``y`` on the named predictor columns plus an intercept.

    Standard errors come from the unbiased residual variance and the inverse
    of the normal-equations matrix; p-values are two-sided Student-t with
    ``n - p - 1`` degrees of freedom.
    """
    yv = as_float_vector(y, "y")
    names = tuple(X)
    cols = []
    for name in names:
        col = as_float_vector(X[name], name)
        check_equal_length(yv, col, "y", name)
        cols.append(col)
    n = yv.size
    p = len(names)
    if p == 0:
        raise DegenerateInputError("need at least one predictor column")
    if n <= p + 1:
        raise DegreesOfFreedomError(
            f"need more than {p + 1} observations for {p} predictors, got {n}"
        )
    design = np.column_stack([np.ones(n), *cols])
    if np.linalg.matrix_rank(design) < p + 1:
        offending = _offending_columns(design, names)
        raise CollinearityError(
            "design matrix is rank deficient; collinear columns: "
            + ", ".join(offending),
            columns=tuple(offending),
        )

    q, r = np.linalg.qr(design)
    beta = np.linalg.solve(r, q.T @ yv)
    residuals = yv - design @ beta
    ssr = float(residuals @ residuals)
    centered = yv - yv.mean()
    sst = float(centered @ centered)
    if sst == 0.0:
        raise DegenerateInputError("y has zero variance")

    df = n - p - 1
    sigma2 = ssr / df
    r_inv = np.linalg.inv(r)
    unscaled_cov = r_inv @ r_inv.T
    std_errors = np.sqrt(sigma2 * np.diag(unscaled_cov))

    t_values = []
    p_values = []
    for b, se in zip(beta, std_errors):
        if se == 0.0:
            t = math.copysign(math.inf, b) if b != 0.0 else 0.0
        else:
            t = float(b / se)
        t_values.append(t)
        p_values.append(min(1.0, 2.0 * t_sf(abs(t), df)))

    r2 = 1.0 - ssr / sst
    return RegressionResult(
        predictor_names=names,
        coefficients=tuple(float(b) for b in beta),
        std_errors=tuple(float(s) for s in std_errors),
        t_values=tuple(t_values),
        p_values=tuple(p_values),
        r_squared=r2,
        adj_r_squared=adj_r_squared(r2, n, p),
        n_observations=n,
    )


def adj_r_squared(r2: float, n: int, p: int) -> float:
    """R-squared penalized for model size: 1 - (1 - R2)(n - 1)/(n - p - 1)."""
    if n <= p + 1:
        raise DegreesOfFreedomError(f"need n > p + 1, got n={n}, p={p}")
    return 1.0 - (1.0 - r2) * (n - 1) / (n - p - 1)


def _beta_continued_fraction(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta function (modified Lentz)."""
    max_iterations = 300
    eps = 3e-16
    tiny = 1e-300
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, max_iterations + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            break
    return h


def _betainc_regularized(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta function I_x(a, b) for x in [0, 1]."""
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    log_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    # Continued fraction converges fast only on one side of the mean; use the
    # symmetry I_x(a,b) = 1 - I_{1-x}(b,a) on the other.
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_continued_fraction(a, b, x) / a
    return 1.0 - front * _beta_continued_fraction(b, a, 1.0 - x) / b


def t_sf(t: float, df: int) -> float:
    """One-sided upper-tail probability of the Student-t distribution.

    The two-sided p-value for an observed statistic is ``2 * t_sf(abs(t), df)``.
    """
    if df < 1:
        raise ValueError(f"degrees of freedom must be >= 1, got {df}")
    if t == 0.0:
        return 0.5
    if math.isinf(t):
        return 0.0 if t > 0 else 1.0
    x = df / (df + t * t)
    half_tail = 0.5 * _betainc_regularized(df / 2.0, 0.5, x)
    return half_tail if t > 0 else 1.0 - half_tail


def format_p(p: float) -> str:
    """Render a p-value, flooring tiny values as "< 1e-15"."""
    if p < P_FLOOR:
        return "< 1e-15"
    return f"{p:.3g}"


def regression_csv_rows(result: RegressionResult) -> list[list[str]]:
    """Machine-readable table: one row per term plus footer rows."""
    rows = [["term", "coefficient", "std_error", "t", "p", "significant"]]
    for name, coef, se, t, p in zip(
        result.term_names,
        result.coefficients,
        result.std_errors,
        result.t_values,
        result.p_values,
    ):
        star = "*" if p < ALPHA else ""
        rows.append([name, f"{coef:.5f}", f"{se:.5f}", f"{t:.3f}", format_p(p), star])
    rows.append(["r_squared", f"{result.r_squared:.4f}", "", "", "", ""])
    rows.append(["adj_r_squared", f"{result.adj_r_squared:.4f}", "", "", "", ""])
    rows.append(["n", str(result.n_observations), "", "", "", ""])
    return rows


def regression_table(result: RegressionResult) -> str:
    """Fixed-width text rendering of a regression result."""
    rows = regression_csv_rows(result)
    header, body = rows[0], rows[1:]
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    lines = []

    def fmt(row: list[str]) -> str:
        first = row[0].ljust(widths[0])
        rest = [cell.rjust(widths[i + 1]) for i, cell in enumerate(row[1:])]
        return "  ".join([first, *rest]).rstrip()

    lines.append(fmt(header))
    lines.append("-" * len(fmt(header)))
    for row in body:
        lines.append(fmt(row))
    return "\n".join(lines)
