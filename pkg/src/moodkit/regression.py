"""Ordinary least squares with inference: coefficient table, fit summary,
ANOVA decomposition, prediction, and the four-way response interchange.

The solver is a Householder QR factorization of the design matrix; the
normal equations are never formed, and the Gram inverse needed for standard
errors comes from the triangular factor.  Raw-unit coefficients only; no
internal scaling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional

import numpy as np

from .dataset import COLUMN_ALIASES, Dataset
from .errors import (
    DegenerateModelError, InsufficientDataError, MissingPredictorError,
    NonPositiveValueError, RankDeficientError,
)
from .special import f_upper_p, t_two_sided_p

# A diagonal entry of R below this fraction of the largest marks its column
# as linearly dependent.
RANK_TOLERANCE = 1e-10


@dataclass(frozen=True)
class ModelSpec:
    response: str
    predictors: tuple[str, ...]
    intercept: bool = True

    def __post_init__(self):
        object.__setattr__(self, "predictors", tuple(self.predictors))
        if not self.intercept:
            raise ValueError("models without an intercept are not supported")
        if len(set(self.predictors)) != len(self.predictors):
            raise ValueError(f"duplicate predictors: {self.predictors!r}")
        if self.response in self.predictors:
            raise ValueError(f"response {self.response!r} is also a predictor")

    def to_json(self) -> dict:
        return {"response": self.response,
                "predictors": list(self.predictors),
                "intercept": self.intercept}


@dataclass(frozen=True)
class CoefficientEstimate:
    name: str
    beta: float
    std_error: float
    t_stat: float
    p_value: float

    def to_json(self) -> dict:
        return {"name": self.name, "beta": self.beta,
                "std_error": self.std_error, "t": self.t_stat,
                "p": self.p_value}


@dataclass(frozen=True)
class AnovaTable:
    ss_regression: float
    ss_residual: float
    ss_total: float
    df_regression: int
    df_residual: int
    df_total: int
    ms_regression: float
    ms_residual: float
    f_stat: float
    p_value: float

    def to_json(self) -> dict:
        return {
            "ss_regression": self.ss_regression,
            "ss_residual": self.ss_residual,
            "ss_total": self.ss_total,
            "df_regression": self.df_regression,
            "df_residual": self.df_residual,
            "df_total": self.df_total,
            "ms_regression": self.ms_regression,
            "ms_residual": self.ms_residual,
            "f_stat": self.f_stat,
            "p_value": self.p_value,
        }


@dataclass(frozen=True)
class FitResult:
    spec: ModelSpec
    n: int
    coefficients: tuple[CoefficientEstimate, ...]
    r_squared: float
    adj_r_squared: float
    std_error_estimate: float
    anova: AnovaTable

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(self.coefficients))

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "n": self.n,
            "coefficients": [c.to_json() for c in self.coefficients],
            "r_squared": self.r_squared,
            "adj_r_squared": self.adj_r_squared,
            "std_error_estimate": self.std_error_estimate,
            "anova": self.anova.to_json(),
        }


def _householder_qr(design: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Householder triangularization of a copy of the design matrix.

    Returns (A, betas): A holds R on and above the diagonal and the
    reflector vectors below it; betas are the reflector scales, so Qᵀ can
    be applied to any vector without materializing Q.
    """
    a = design.copy()
    n, p = a.shape
    betas = np.zeros(p)
    for j in range(p):
        x = a[j:, j]
        norm = float(np.linalg.norm(x))
        if norm == 0.0:
            # Zero pivot; leave the column for rank detection downstream.
            continue
        alpha = -norm if x[0] >= 0 else norm
        v = x.copy()
        v[0] -= alpha
        # Normalize so the stored reflector has implicit leading 1; then
        # tau = 2 v0^2 / ||v||^2.  v0 = x0 - alpha has |v0| >= norm > 0.
        tau = 2.0 * (v[0] * v[0]) / (v @ v)
        w = v / v[0]
        rest = a[j:, j:]
        rest -= tau * np.outer(w, w @ rest)
        a[j, j] = alpha
        a[j + 1:, j] = w[1:]
        betas[j] = tau
    return a, betas


def _apply_qt(a: np.ndarray, betas: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Compute Qᵀb from the stored reflectors."""
    n, p = a.shape
    y = b.copy()
    for j in range(p):
        if betas[j] == 0.0:
            continue
        v = np.empty(n - j)
        v[0] = 1.0
        v[1:] = a[j + 1:, j]
        y[j:] -= betas[j] * v * (v @ y[j:])
    return y


def _back_substitute(r: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    p = r.shape[0]
    out = np.zeros(p)
    for i in range(p - 1, -1, -1):
        out[i] = (rhs[i] - r[i, i + 1:] @ out[i + 1:]) / r[i, i]
    return out


def _gram_inverse_diag(r: np.ndarray) -> np.ndarray:
    """diag((XᵀX)⁻¹) = row norms squared of R⁻¹, from the triangular factor."""
    p = r.shape[0]
    rinv = np.zeros((p, p))
    for j in range(p):
        e = np.zeros(p)
        e[j] = 1.0
        rinv[:, j] = _back_substitute(r, e)
    return np.sum(rinv * rinv, axis=1)


def fit(data: Dataset, spec: ModelSpec) -> FitResult:
    """OLS fit of spec on data with t-based coefficient inference.

    Preconditions: more rows than parameters, full-rank design, response
    not constant.  Errors: InsufficientDataError, RankDeficientError
    (naming the dependent column), DegenerateModelError.
    """
    y = np.array(data.column(spec.response), dtype=float)
    cols = [np.ones(data.n_rows)]
    names = ["intercept"]
    for pred in spec.predictors:
        cols.append(np.array(data.column(pred), dtype=float))
        names.append(data.resolve(pred))
    X = np.column_stack(cols)
    n, p = X.shape
    if n <= p:
        raise InsufficientDataError(n, p)

    a, h_betas = _householder_qr(X)
    r = np.triu(a[:p, :])
    diag = np.abs(np.diag(r))
    biggest = float(diag.max())
    if biggest == 0.0:
        raise RankDeficientError(names[0])
    bad = np.nonzero(diag < RANK_TOLERANCE * biggest)[0]
    if bad.size:
        raise RankDeficientError(names[int(bad[0])])

    qty = _apply_qt(a, h_betas, y)
    beta = _back_substitute(r, qty[:p])

    fitted = X @ beta
    resid = y - fitted
    y_mean = float(y.mean())
    ss_total = float(((y - y_mean) ** 2).sum())
    ss_residual = float((resid ** 2).sum())
    # Computed from the fitted values, not as ss_total - ss_residual, so the
    # decomposition identity stays a real numerical property of the solver.
    ss_regression = float(((fitted - y_mean) ** 2).sum())
    scale = float((y ** 2).sum())
    if ss_total <= 1e-14 * max(scale, 1.0):
        raise DegenerateModelError(
            f"response {spec.response!r} has zero variance")

    df_regression = p - 1
    df_residual = n - p
    df_total = n - 1
    ms_regression = ss_regression / df_regression if df_regression else 0.0
    ms_residual = ss_residual / df_residual
    r_squared = 1.0 - ss_residual / ss_total
    if r_squared < 0.0:
        r_squared = 0.0
    adj_r_squared = 1.0 - (1.0 - r_squared) * (n - 1) / (n - p)
    s = math.sqrt(ms_residual)

    if ms_residual > 0.0:
        f_stat = ms_regression / ms_residual
        f_p = f_upper_p(f_stat, df_regression, df_residual) if df_regression else 1.0
    else:
        # Perfect fit: infinite F, tail mass zero.
        f_stat = math.inf
        f_p = 0.0

    gram_diag = _gram_inverse_diag(r)
    coeffs = []
    for name, b, g in zip(names, beta, gram_diag):
        se = math.sqrt(ms_residual * g)
        if se > 0.0:
            t = b / se
            pv = t_two_sided_p(t, df_residual)
        else:
            # Zero residual variance: the estimate is exact.
            t = math.inf if b > 0 else (-math.inf if b < 0 else 0.0)
            pv = 0.0 if b != 0 else 1.0
        coeffs.append(CoefficientEstimate(
            name=name, beta=float(b), std_error=float(se),
            t_stat=float(t), p_value=float(pv)))

    anova_table = AnovaTable(
        ss_regression=ss_regression, ss_residual=ss_residual,
        ss_total=ss_total, df_regression=df_regression,
        df_residual=df_residual, df_total=df_total,
        ms_regression=ms_regression, ms_residual=ms_residual,
        f_stat=f_stat, p_value=f_p)
    return FitResult(
        spec=spec, n=n, coefficients=tuple(coeffs), r_squared=r_squared,
        adj_r_squared=adj_r_squared, std_error_estimate=s, anova=anova_table)


def anova(fit_result: FitResult) -> AnovaTable:
    """The ANOVA decomposition computed during the fit."""
    return fit_result.anova


def _resolve_input(name: str, inputs: Mapping[str, float]) -> Optional[float]:
    if name in inputs:
        return float(inputs[name])
    alias = COLUMN_ALIASES.get(name)
    if alias is not None and alias in inputs:
        return float(inputs[alias])
    return None


def predict(fit_result: FitResult, inputs: Mapping[str, float]) -> float:
    """Evaluate the fitted equation at the given predictor values.

    Every predictor must be supplied (aliases accepted); extra keys are
    ignored.  Raises MissingPredictorError naming the first absent column.
    """
    coeffs = fit_result.coefficients
    total = coeffs[0].beta
    for est in coeffs[1:]:
        v = _resolve_input(est.name, inputs)
        if v is None:
            raise MissingPredictorError(est.name)
        total += est.beta * v
    return total


INTERCHANGE_RESPONSES = ("NOL", "NOC", "NOM", "NOA")


def fit_all_interchange(data: Dataset) -> list[FitResult]:
    """Fit each of NOL, NOC, NOM, NOA on the other three, in that order."""
    canonical = [data.resolve(c) for c in INTERCHANGE_RESPONSES]
    results = []
    for response in canonical:
        predictors = tuple(c for c in canonical if c != response)
        results.append(fit(data, ModelSpec(response=response,
                                           predictors=predictors)))
    return results


def log_transform(data: Dataset, base10: bool = True) -> Dataset:
    """Elementwise logarithm of every column; names gain a suffix.

    base10 gives log10 and "_log10" names; otherwise natural log and "_ln".
    Any value <= 0 raises NonPositiveValueError with its row and column.
    """
    log_fn = math.log10 if base10 else math.log
    suffix = "_log10" if base10 else "_ln"
    new_rows = []
    for i, row in enumerate(data.rows):
        out = []
        for name, v in zip(data.columns, row):
            if v <= 0:
                raise NonPositiveValueError(i, name, v)
            out.append(log_fn(v))
        new_rows.append(tuple(out))
    return Dataset(
        columns=tuple(c + suffix for c in data.columns),
        rows=tuple(new_rows),
        provenance=data.provenance + suffix)
