"""Sample (partial) correlations, the exact null law of a sample partial
correlation, two-sided p-values, and critical values.

For n observations of N jointly Gaussian variables, the sample partial
correlation of a conditionally independent pair has density

    f(x) = Gamma((nu+1)/2) / (sqrt(pi) Gamma(nu/2)) * (1 - x^2)^((nu-2)/2)

on [-1, 1] with nu = n - N.  Two-sided tail probabilities of f are evaluated
through the regularized incomplete beta function:
P(|R| > |r|) = I_{1-r^2}(nu/2, 1/2), which is the same quantity reached via
the t-statistic r*sqrt(nu)/sqrt(1-r^2) with nu degrees of freedom.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._core import reg_inc_beta as _reg_inc_beta
from ._core import reg_inc_beta_many as _reg_inc_beta_many
from .edges import all_pairs, n_pairs
from .errors import (
    DegenerateDataError,
    SingularCovarianceError,
    ValidationError,
)

EXACT = "exact"
FISHER = "fisher"
SUPPLIED = "supplied"
_METHODS = (EXACT, FISHER, SUPPLIED)


@dataclass(frozen=True)
class Dataset:
    """n x N data matrix with n > N, finite entries, non-constant columns."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.array(self.values, dtype=np.float64, copy=True)
        if arr.ndim != 2:
            raise ValidationError(f"dataset must be 2-dimensional, got shape {arr.shape}")
        n, p = arr.shape
        if p < 2:
            raise ValidationError(f"need at least 2 variables, got {p}")
        if n <= p:
            raise ValidationError(f"n > N required, got n={n} observations for N={p} variables")
        if not np.isfinite(arr).all():
            raise ValidationError("dataset contains non-finite entries")
        spread = arr.max(axis=0) - arr.min(axis=0)
        dead = np.flatnonzero(spread == 0.0)
        if dead.size:
            raise DegenerateDataError(f"column {dead[0] + 1} is constant")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def n_obs(self) -> int:
        return self.values.shape[0]

    @property
    def n_var(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class PartialCorrMatrix:
    """Symmetric matrix of pairwise partial correlations, unit diagonal."""

    r: np.ndarray

    def __post_init__(self):
        arr = np.array(self.r, dtype=np.float64, copy=True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValidationError("partial correlation matrix must be square")
        if not np.allclose(arr, arr.T, atol=1e-12):
            raise ValidationError("partial correlation matrix must be symmetric")
        if not np.allclose(np.diag(arr), 1.0):
            raise ValidationError("partial correlation matrix must have unit diagonal")
        if arr.min() < -1.0 or arr.max() > 1.0:
            raise ValidationError("partial correlations must lie in [-1, 1]")
        arr.setflags(write=False)
        object.__setattr__(self, "r", arr)

    @property
    def n_vertices(self) -> int:
        return self.r.shape[0]


@dataclass(frozen=True)
class EdgePValues:
    """Hypothesis p-values for every vertex pair.

    Only the hypothesis side is stored; the alternative's p-value is always
    1 - p and never kept separately.
    """

    n_vertices: int
    p: dict
    method: str

    def __post_init__(self):
        if self.method not in _METHODS:
            raise ValidationError(f"unknown p-value method {self.method!r}")
        pairs = all_pairs(self.n_vertices)
        pv = {tuple(k): float(v) for k, v in self.p.items()}
        if set(pv) != set(pairs):
            missing = sorted(set(pairs) - set(pv))
            extra = sorted(set(pv) - set(pairs))
            raise ValidationError(
                f"p-values must cover every pair exactly once "
                f"(missing {missing[:3]}, unexpected {extra[:3]})"
            )
        for pair, v in pv.items():
            if not 0.0 <= v <= 1.0:
                raise ValidationError(f"p-value {v} for pair {pair} outside [0,1]")
        object.__setattr__(self, "p", pv)

    def __getitem__(self, pair):
        return self.p[tuple(pair)]

    @property
    def m(self) -> int:
        return n_pairs(self.n_vertices)

    def by_index(self) -> np.ndarray:
        """p-values as a vector in edge-index order."""
        return np.array([self.p[e] for e in all_pairs(self.n_vertices)])


def sample_cov(data: Dataset) -> np.ndarray:
    """Unbiased sample covariance (divisor n-1)."""
    x = data.values - data.values.mean(axis=0)
    c = x.T @ x / (data.n_obs - 1)
    return 0.5 * (c + c.T)


def cholesky_spd(a: np.ndarray) -> np.ndarray:
    """Lower Cholesky factor of a symmetric positive definite matrix.

    Raises SingularCovarianceError carrying the 1-based failing pivot.
    """
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError("matrix must be square")
    if not np.allclose(a, a.T, atol=1e-10 * max(1.0, np.abs(a).max())):
        raise ValidationError("matrix must be symmetric")
    n = a.shape[0]
    low = np.zeros_like(a)
    for j in range(n):
        d = a[j, j] - low[j, :j] @ low[j, :j]
        if not (d > 0.0 and np.isfinite(d)):
            raise SingularCovarianceError(
                f"matrix is not positive definite (pivot {j + 1})", pivot=j + 1
            )
        low[j, j] = math.sqrt(d)
        if j + 1 < n:
            low[j + 1 :, j] = (a[j + 1 :, j] - low[j + 1 :, :j] @ low[j, :j]) / low[j, j]
    return low


def spd_inverse(a: np.ndarray) -> np.ndarray:
    """Inverse of a symmetric positive definite matrix via its Cholesky factor."""
    low = cholesky_spd(a)
    linv = np.linalg.solve(low, np.eye(low.shape[0]))
    inv = linv.T @ linv
    return 0.5 * (inv + inv.T)


def _pcorr_from_precision(omega: np.ndarray) -> np.ndarray:
    d = np.sqrt(np.diag(omega))
    r = -omega / np.outer(d, d)
    r = 0.5 * (r + r.T)
    np.fill_diagonal(r, 1.0)
    return np.clip(r, -1.0, 1.0)


def partial_correlations(cov: np.ndarray) -> PartialCorrMatrix:
    """Partial correlations r_ij = -w_ij / sqrt(w_ii w_jj), W = cov^{-1}."""
    return PartialCorrMatrix(_pcorr_from_precision(spd_inverse(cov)))


def correlations(cov: np.ndarray) -> PartialCorrMatrix:
    """Plain (marginal) correlations from a covariance matrix."""
    cov = np.asarray(cov, dtype=np.float64)
    d = np.sqrt(np.diag(cov))
    if (d <= 0.0).any():
        raise DegenerateDataError("covariance has a non-positive diagonal entry")
    r = cov / np.outer(d, d)
    r = 0.5 * (r + r.T)
    np.fill_diagonal(r, 1.0)
    return PartialCorrMatrix(np.clip(r, -1.0, 1.0))


def _check_df(n_obs, n_var):
    if n_var < 2:
        raise ValidationError(f"need at least 2 variables, got N={n_var}")
    nu = n_obs - n_var
    if nu < 1:
        raise ValidationError(f"n > N required, got n={n_obs}, N={n_var}")
    return nu


def null_density(x: float, n_obs: int, n_var: int) -> float:
    """Density of the sample partial correlation of an independent pair."""
    nu = _check_df(n_obs, n_var)
    x = float(x)
    if not -1.0 <= x <= 1.0:
        raise ValidationError(f"density argument must lie in [-1,1], got {x}")
    logc = math.lgamma((nu + 1) / 2.0) - math.lgamma(nu / 2.0) - 0.5 * math.log(math.pi)
    one_minus = (1.0 - x) * (1.0 + x)
    e = (nu - 2) / 2.0
    if one_minus == 0.0:
        if e > 0.0:
            return 0.0
        if e == 0.0:
            return math.exp(logc)
        return math.inf
    return math.exp(logc + e * math.log(one_minus))


def pvalue_exact(r: float, n_obs: int, n_var: int) -> float:
    """Two-sided p-value P(|R| > |r|) under the exact null density."""
    nu = _check_df(n_obs, n_var)
    r = float(r)
    if not -1.0 <= r <= 1.0:
        raise ValidationError(f"correlation must lie in [-1,1], got {r}")
    x = (1.0 - r) * (1.0 + r)
    return _reg_inc_beta(x, nu / 2.0, 0.5)


def pvalues_exact_many(r: np.ndarray, n_obs: int, n_var: int) -> np.ndarray:
    """Vectorized :func:`pvalue_exact` over an array of correlations."""
    nu = _check_df(n_obs, n_var)
    r = np.asarray(r, dtype=np.float64)
    if r.size and (np.abs(r) > 1.0).any():
        raise ValidationError("correlations must lie in [-1,1]")
    return _reg_inc_beta_many((1.0 - r) * (1.0 + r), nu / 2.0, 0.5)


def pvalue_fisher(r: float, n_obs: int, n_var: int) -> float:
    """Two-sided p-value from the variance-stabilizing z-transform."""
    nu = _check_df(n_obs, n_var)
    if nu < 2:
        raise ValidationError(f"z-transform needs n > N + 1, got n={n_obs}, N={n_var}")
    r = float(r)
    if not -1.0 <= r <= 1.0:
        raise ValidationError(f"correlation must lie in [-1,1], got {r}")
    if abs(r) == 1.0:
        return 0.0
    z = math.atanh(r)
    p = math.erfc(abs(z) * math.sqrt(nu - 1) / math.sqrt(2.0))
    return min(1.0, max(0.0, p))


def critical_value(alpha: float, n_obs: int, n_var: int) -> float:
    """Correlation magnitude c with pvalue_exact(c, n, N) = alpha.

    Accepts 0 < alpha <= 1; alpha = 1 returns 0 exactly.
    """
    _check_df(n_obs, n_var)
    alpha = float(alpha)
    if not 0.0 < alpha <= 1.0:
        raise ValidationError(f"alpha must lie in (0, 1], got {alpha}")
    if alpha == 1.0:
        return 0.0
    lo, hi = 0.0, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if pvalue_exact(mid, n_obs, n_var) > alpha:
            lo = mid
        else:
            hi = mid
    return hi


def reg_inc_beta(x: float, a: float, b: float) -> float:
    """Regularized incomplete beta function I_x(a, b)."""
    return _reg_inc_beta(x, a, b)


def edge_pvalues(data: Dataset, method: str = EXACT, marginal: bool = False):
    """Per-pair p-values for a dataset.

    Returns (correlation matrix, EdgePValues).  With ``marginal=True`` the
    plain correlations are tested instead (conditioning set of size zero, so
    the null law uses nu = n - 2).
    """
    if method not in (EXACT, FISHER):
        raise ValidationError(f"p-value method must be 'exact' or 'fisher', got {method!r}")
    cov = sample_cov(data)
    if marginal:
        mat = correlations(cov)
        n_var_eff = 2
    else:
        mat = partial_correlations(cov)
        n_var_eff = data.n_var
    pv = {}
    for i, j in all_pairs(data.n_var):
        r = mat.r[i - 1, j - 1]
        if method == EXACT:
            pv[(i, j)] = pvalue_exact(r, data.n_obs, n_var_eff)
        else:
            pv[(i, j)] = pvalue_fisher(r, data.n_obs, n_var_eff)
    return mat, EdgePValues(data.n_var, pv, method)
