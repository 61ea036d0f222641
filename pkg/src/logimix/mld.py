"""Multivariate logistic distribution (MLD) with per-coordinate location and scale.

The standard p-dimensional form has joint cdf

    L(x) = [1 + sum_k exp(-x_k)]^(-1)

and density

    l(x) = p! * exp(-sum_k x_k) * [1 + sum_k exp(-x_k)]^(-(p+1)).

The location-scale extension evaluates both at the standardized residuals
z_k = (x_k - mu_k) / sigma_k, the density picking up a 1/prod(sigma) factor.
All coordinates share the unit-scale logistic marginal after standardization.

Points are arrays whose last axis holds the p coordinates; an input of shape
(..., p) yields an output of shape (...).  For p == 1 plain scalars and flat
arrays are accepted and treated elementwise.
"""

from dataclasses import dataclass
from math import lgamma

import numpy as np
from scipy.special import expit

from ._util import log1p_sum_exp_neg, open_uniform, rng_from_seed


@dataclass(frozen=True, eq=False)
class MldParams:
    """Location vector ``mu`` and strictly positive scale vector ``sigma``.

    Both arrays must be 1-D of equal length p >= 1 with finite entries.
    """

    mu: np.ndarray
    sigma: np.ndarray

    def __post_init__(self):
        mu = np.atleast_1d(np.asarray(self.mu, dtype=float))
        sigma = np.atleast_1d(np.asarray(self.sigma, dtype=float))
        if mu.ndim != 1 or sigma.ndim != 1:
            raise ValueError("mu and sigma must be 1-D vectors")
        if mu.shape != sigma.shape:
            raise ValueError(
                "mu and sigma must have equal length, got %d and %d"
                % (mu.size, sigma.size)
            )
        if mu.size < 1:
            raise ValueError("dimension must be at least 1")
        if not np.all(np.isfinite(mu)):
            raise ValueError("mu must be finite")
        if not np.all(np.isfinite(sigma)) or np.any(sigma <= 0.0):
            raise ValueError("sigma must be finite and strictly positive")
        mu.setflags(write=False)
        sigma.setflags(write=False)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "sigma", sigma)

    @property
    def p(self):
        return self.mu.size


def _as_points(x, p):
    """Validate and reshape point input to (..., p)."""
    x = np.asarray(x, dtype=float)
    if p == 1 and (x.ndim == 0 or x.shape[-1] != 1):
        x = x[..., None]
    if x.ndim == 0 or x.shape[-1] != p:
        raise ValueError(
            "point has %s coordinates, expected %d"
            % (x.shape[-1] if x.ndim else "scalar", p)
        )
    if not np.all(np.isfinite(x)):
        raise ValueError("point coordinates must be finite")
    return x


def _scalar_or_array(values):
    values = np.asarray(values)
    return float(values) if values.ndim == 0 else values


def standard_cdf(x):
    """Joint cdf of the standard MLD: [1 + sum_k exp(-x_k)]^(-1)."""
    p = np.shape(np.atleast_1d(x))[-1]
    x = _as_points(x, p)
    out = np.exp(-log1p_sum_exp_neg(x))
    return _scalar_or_array(np.clip(out, 0.0, 1.0))


def standard_log_pdf(x):
    """log of the standard MLD density."""
    p = np.shape(np.atleast_1d(x))[-1]
    x = _as_points(x, p)
    out = lgamma(p + 1) - np.sum(x, axis=-1) - (p + 1) * log1p_sum_exp_neg(x)
    return _scalar_or_array(out)


def standard_pdf(x):
    """Density of the standard MLD: p! exp(-sum x_k) [1 + sum exp(-x_k)]^(-(p+1))."""
    return _scalar_or_array(np.exp(standard_log_pdf(x)))


def _standardize(x, params):
    x = _as_points(x, params.p)
    return (x - params.mu) / params.sigma


def mld_cdf(x, params):
    """Location-scale MLD cdf: the standard cdf of (x - mu) / sigma."""
    z = _standardize(x, params)
    out = np.exp(-log1p_sum_exp_neg(z))
    return _scalar_or_array(np.clip(out, 0.0, 1.0))


def mld_log_pdf(x, params):
    """Log density of the location-scale MLD, stable for extreme residuals."""
    z = _standardize(x, params)
    p = params.p
    out = (
        lgamma(p + 1)
        - np.sum(z, axis=-1)
        - (p + 1) * log1p_sum_exp_neg(z)
        - np.sum(np.log(params.sigma))
    )
    return _scalar_or_array(out)


def mld_pdf(x, params):
    """Density of the location-scale MLD."""
    return _scalar_or_array(np.exp(mld_log_pdf(x, params)))


def marginal_cdf(xk, params, k):
    """Univariate logistic cdf of coordinate ``k`` (0-based).

    Equals the joint cdf with every other coordinate sent to +infinity.
    """
    k = int(k)
    if not 0 <= k < params.p:
        raise ValueError("coordinate index %d out of range for p=%d" % (k, params.p))
    xk = np.asarray(xk, dtype=float)
    if not np.all(np.isfinite(xk)):
        raise ValueError("coordinate value must be finite")
    out = expit((xk - params.mu[k]) / params.sigma[k])
    return _scalar_or_array(np.clip(out, 0.0, 1.0))


def conditional_quantile(u, s_accum, j):
    """Invert the prefix-conditional cdf of the standardized distribution.

    Given the first j standardized coordinates, with accumulated
    s = 1 + sum_{k<=j} exp(-z_k), the next coordinate has conditional cdf
    F(z) = (s / (s + exp(-z)))^(j+1).  For a uniform draw ``u`` this returns

        b = s * (u^(-1/(j+1)) - 1) = exp(-z),

    so the new coordinate is z = -log(b).
    """
    u = np.asarray(u, dtype=float)
    s_accum = np.asarray(s_accum, dtype=float)
    if np.any(u <= 0.0) or np.any(u >= 1.0):
        raise ValueError("u must lie strictly inside (0, 1)")
    if np.any(s_accum < 1.0):
        raise ValueError("s_accum must be at least 1")
    j = int(j)
    if j < 0:
        raise ValueError("j must be non-negative")
    # expm1 keeps precision as u -> 1 where b -> 0.
    out = s_accum * np.expm1(-np.log(u) / (j + 1.0))
    return _scalar_or_array(out)


def sample(params, n, seed):
    """Draw ``n`` exact samples, shape (n, p).

    Coordinates are generated sequentially: coordinate j+1 comes from
    ``conditional_quantile`` with the running prefix sum, then the standardized
    vector is mapped through x = mu + sigma * z.  Deterministic given ``seed``.
    """
    n = int(n)
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = rng_from_seed(seed)
    p = params.p
    u = open_uniform(rng, (n, p))
    z = np.empty((n, p))
    s_accum = np.ones(n)
    for j in range(p):
        b = conditional_quantile(u[:, j], s_accum, j)
        z[:, j] = -np.log(b)
        s_accum = s_accum + b
    return params.mu + params.sigma * z
