"""Maximum-likelihood fitting of logistic mixtures via generalized EM.

There is no closed-form M-step for logistic components, so each M-step runs a
short gradient ascent in (mu, log sigma) with a backtracking line search.
Every accepted inner step improves the expected complete-data objective, which
keeps the observed log-likelihood monotone up to floating-point slack.
"""

import warnings
from dataclasses import dataclass
from math import lgamma

import numpy as np
from scipy.special import logsumexp

from ._util import log1p_sum_exp_neg, rng_from_seed, spawn_seeds
from .mixture import MixtureModel, WEIGHT_FLOOR, as_dataset
from .mld import MldParams, _as_points

INIT_STRATEGIES = ("quantile", "random-rows")

# A component whose total responsibility falls below this is considered
# starved; the whole initialization is retried with a fresh seed.
DEGENERATE_RESP_TOTAL = 1e-8
MAX_REINIT_ATTEMPTS = 3

# Standard deviation of the unit-scale logistic law is pi/sqrt(3); the moment
# rule for initial scales inverts that.
LOGISTIC_SD_FACTOR = np.sqrt(3.0) / np.pi


@dataclass(frozen=True)
class FitConfig:
    s: int
    max_iter: int = 500
    rel_tol: float = 1e-8
    n_restarts: int = 5
    seed: int = 0
    m_step_iters: int = 50
    m_step_tol: float = 1e-10

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("s must be at least 1")
        if min(self.max_iter, self.n_restarts, self.m_step_iters) < 1:
            raise ValueError("iteration and restart counts must be positive")
        if min(self.rel_tol, self.m_step_tol) <= 0:
            raise ValueError("tolerances must be positive")


@dataclass(frozen=True, eq=False)
class FitResult:
    model: MixtureModel
    loglik_trace: np.ndarray
    converged: bool
    n_iter: int
    best_of: int

    def __post_init__(self):
        trace = np.asarray(self.loglik_trace, dtype=float)
        if np.any(np.diff(trace) < -1e-9):
            raise ValueError("log-likelihood trace decreased beyond 1e-9 slack")
        object.__setattr__(self, "loglik_trace", trace)


def responsibilities(x, model):
    """Posterior component probabilities, computed in log space.

    A point of shape (p,) gives a vector of length s; a batch (n, p) gives an
    (n, s) matrix.  If every component underflows to zero density the affected
    rows degenerate to uniform and a RuntimeWarning is emitted.
    """
    x = _as_points(x, model.p)
    single = x.ndim == 1
    pts = x[None, :] if single else x
    with np.errstate(over="ignore"):
        lp = np.column_stack(
            [np.log(w) + _comp_log_pdf(pts, c.mu, np.log(c.sigma))
             for w, c in zip(model.weights, model.components)]
        )
    norm = logsumexp(lp, axis=1)
    bad = ~np.isfinite(norm)
    if np.any(bad):
        warnings.warn(
            "all mixture components underflowed; returning uniform responsibilities",
            RuntimeWarning,
        )
        lp[bad] = 0.0
        norm[bad] = np.log(model.s)
    r = np.exp(lp - norm[:, None])
    return r[0] if single else r


def component_log_pdf_grad(x, params):
    """Gradient of the component log density wrt (mu, log sigma).

    With z_k = (x_k - mu_k)/sigma_k and w_k = exp(-z_k)/(1 + sum_j exp(-z_j)):

        d/d mu_k       = (1/sigma_k) * (1 - (p+1) w_k)
        d/d log sigma_k = z_k * (1 - (p+1) w_k) - 1
    """
    x = _as_points(x, params.p)
    z = (x - params.mu) / params.sigma
    p = params.p
    log_denom = log1p_sum_exp_neg(z)
    w = np.exp(-z - log_denom[..., None])
    base = 1.0 - (p + 1) * w
    grad_mu = base / params.sigma
    grad_logsigma = z * base - 1.0
    return grad_mu, grad_logsigma


def _comp_log_pdf(data, mu, log_sigma):
    """Per-row component log density for raw (mu, log sigma) arrays."""
    sigma = np.exp(log_sigma)
    z = (data - mu) / sigma
    p = mu.size
    return (
        lgamma(p + 1)
        - np.sum(z, axis=-1)
        - (p + 1) * log1p_sum_exp_neg(z)
        - np.sum(log_sigma)
    )


def _weighted_obj(data, resp, mu, log_sigma):
    """Responsibility-weighted mean log density (same maximizer as the sum)."""
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        return float(np.dot(resp, _comp_log_pdf(data, mu, log_sigma))) / resp.sum()


def _weighted_obj_grad(data, resp, mu, log_sigma):
    sigma = np.exp(log_sigma)
    z = (data - mu) / sigma
    p = mu.size
    total = resp.sum()
    log_denom = log1p_sum_exp_neg(z)
    obj = (
        np.dot(resp, lgamma(p + 1) - np.sum(z, axis=-1) - (p + 1) * log_denom)
        / total
        - np.sum(log_sigma)
    )
    w = np.exp(-z - log_denom[:, None])
    base = 1.0 - (p + 1) * w
    grad_mu = (resp @ base) / (total * sigma)
    grad_logsigma = (resp @ (z * base)) / total - 1.0
    return float(obj), grad_mu, grad_logsigma


def _ascend(data, resp, mu, log_sigma, iters, gtol):
    """Backtracking gradient ascent on the responsibility-weighted objective.

    The objective is the weighted mean log density, which keeps the natural
    step near unity regardless of the dataset size.  Only improving steps are
    accepted, so the objective never decreases.
    """
    obj, gmu, gls = _weighted_obj_grad(data, resp, mu, log_sigma)
    for _ in range(iters):
        gnorm = np.sqrt(gmu @ gmu + gls @ gls)
        if gnorm < gtol:
            break
        step = 1.0
        accepted = False
        while step >= 2.0**-60:
            cand_mu = mu + step * gmu
            cand_ls = log_sigma + step * gls
            cand_obj = _weighted_obj(data, resp, cand_mu, cand_ls)
            if cand_obj > obj:
                accepted = True
                break
            step *= 0.5
        if not accepted:
            break
        mu, log_sigma = cand_mu, cand_ls
        obj, gmu, gls = _weighted_obj_grad(data, resp, mu, log_sigma)
    return mu, log_sigma


def init_params(data, s, seed, strategy="quantile"):
    """Initial mixture for EM.

    "quantile" puts component means at per-coordinate data quantiles
    (i + 0.5)/s; "random-rows" copies s distinct random rows.  Both use the
    moment rule sigma = std(data) * sqrt(3)/pi per coordinate and uniform
    weights.
    """
    if strategy not in INIT_STRATEGIES:
        raise ValueError("unknown strategy %r, expected one of %s" % (strategy, INIT_STRATEGIES))
    data = as_dataset(data)
    n, p = data.shape
    scale = np.maximum(data.std(axis=0) * LOGISTIC_SD_FACTOR, 1e-6)
    if strategy == "quantile":
        qs = (np.arange(s) + 0.5) / s
        centers = np.quantile(data, qs, axis=0)
    else:
        distinct = np.unique(data, axis=0)
        if distinct.shape[0] < s:
            raise ValueError(
                "need at least %d distinct rows for random-rows init, found %d"
                % (s, distinct.shape[0])
            )
        rng = rng_from_seed(seed)
        idx = rng.choice(distinct.shape[0], size=s, replace=False)
        centers = distinct[idx]
    comps = tuple(MldParams(centers[i], scale) for i in range(s))
    return MixtureModel(np.full(s, 1.0 / s), comps)


class _DegenerateComponent(Exception):
    pass


def _e_step(data, model):
    lp = np.column_stack(
        [np.log(w) + _comp_log_pdf(data, c.mu, np.log(c.sigma))
         for w, c in zip(model.weights, model.components)]
    )
    row_ll = logsumexp(lp, axis=1)
    bad = ~np.isfinite(row_ll)
    if np.any(bad):
        lp[bad] = -np.log(model.s)
        row_ll[bad] = -1e300
    resp = np.exp(lp - np.where(bad, 0.0, row_ll)[:, None])
    return resp, float(row_ll.sum())


def _em_single(data, config, seed, strategy, allow_degenerate):
    model = init_params(data, config.s, seed, strategy)
    trace = []
    converged = False
    for _ in range(config.max_iter):
        resp, loglik = _e_step(data, model)
        if trace and (loglik - trace[-1]) < config.rel_tol * max(1.0, abs(loglik)):
            trace.append(loglik)
            converged = True
            break
        trace.append(loglik)
        totals = resp.sum(axis=0)
        if np.any(totals < DEGENERATE_RESP_TOTAL):
            if not allow_degenerate:
                raise _DegenerateComponent()
            # Out of retries: freeze the starved component for this iteration.
            starved = totals < DEGENERATE_RESP_TOTAL
        else:
            starved = np.zeros(config.s, dtype=bool)
        weights = np.maximum(totals / data.shape[0], WEIGHT_FLOOR)
        weights = weights / weights.sum()
        comps = []
        for i, comp in enumerate(model.components):
            if starved[i]:
                comps.append(comp)
                continue
            mu, log_sigma = _ascend(
                data, resp[:, i], comp.mu, np.log(comp.sigma),
                config.m_step_iters, config.m_step_tol,
            )
            comps.append(MldParams(mu, np.exp(log_sigma)))
        model = MixtureModel(weights, tuple(comps))
    else:
        # Cap reached: refresh the trace so it reflects the final model.
        _, loglik = _e_step(data, model)
        trace.append(loglik)
    return model, np.asarray(trace), converged


def em_fit(data, config):
    """Fit a mixture by EM with several independent restarts.

    Returns the restart with the best final log-likelihood; ties closer than
    1e-12 go to the lowest restart index.
    """
    data = as_dataset(data)
    if data.shape[0] < config.s:
        raise ValueError(
            "need at least s=%d rows, got %d" % (config.s, data.shape[0])
        )
    best = None
    for r, restart_seed in enumerate(spawn_seeds(config.seed, config.n_restarts)):
        strategy = "quantile" if r == 0 else "random-rows"
        attempt_seeds = [restart_seed] + spawn_seeds(restart_seed, MAX_REINIT_ATTEMPTS)
        outcome = None
        for a, attempt_seed in enumerate(attempt_seeds):
            try:
                outcome = _em_single(
                    data, config, attempt_seed, strategy,
                    allow_degenerate=(a == len(attempt_seeds) - 1),
                )
                break
            except _DegenerateComponent:
                strategy = "random-rows"
                continue
        model, trace, converged = outcome
        if best is None or trace[-1] > best[0] + 1e-12:
            best = (trace[-1], model, trace, converged)
    _, model, trace, converged = best
    return FitResult(
        model=model,
        loglik_trace=trace,
        converged=converged,
        n_iter=len(trace) - 1,
        best_of=config.n_restarts,
    )
