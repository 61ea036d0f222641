"""Finite mixtures of multivariate logistic components.

A mixture is a weight vector on the simplex plus a list of components of
common dimension.  Evaluation functions accept points shaped (..., p) like the
single-component functions in :mod:`logimix.mld`.
"""

import json
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from ._util import fmt17, log1p_sum_exp_neg, open_uniform, rng_from_seed, spawn_seeds, write_text_atomic
from .mld import MldParams, _as_points, _scalar_or_array, mld_log_pdf, sample

MODEL_FORMAT = "logimix-model-v1"

# Weight vectors within this distance of the simplex are renormalized;
# anything further off is rejected as a genuinely bad model.
WEIGHT_SUM_TOL = 1e-9
WEIGHT_FLOOR = 1e-12


@dataclass(frozen=True, eq=False)
class MixtureModel:
    """Mixing weights plus component parameters, all of one dimension p."""

    weights: np.ndarray
    components: tuple

    def __post_init__(self):
        w = np.atleast_1d(np.asarray(self.weights, dtype=float))
        comps = tuple(self.components)
        if w.ndim != 1 or w.size < 1:
            raise ValueError("weights must be a non-empty 1-D vector")
        if len(comps) != w.size:
            raise ValueError(
                "got %d weights for %d components" % (w.size, len(comps))
            )
        if not all(isinstance(c, MldParams) for c in comps):
            raise ValueError("components must be MldParams instances")
        p = comps[0].p
        if any(c.p != p for c in comps):
            raise ValueError("all components must share one dimension")
        if not np.all(np.isfinite(w)) or np.any(w < WEIGHT_FLOOR) or np.any(w > 1.0):
            raise ValueError("weights must lie in [%g, 1]" % WEIGHT_FLOOR)
        total = w.sum()
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError("weights sum to %.17g, not 1" % total)
        w = w / total
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "components", comps)

    @property
    def p(self):
        return self.components[0].p

    @property
    def s(self):
        return len(self.components)


def mixture_cdf(x, model):
    """Weighted sum of component cdfs, clipped to [0, 1]."""
    x = _as_points(x, model.p)
    out = 0.0
    for w, comp in zip(model.weights, model.components):
        z = (x - comp.mu) / comp.sigma
        out = out + w * np.exp(-log1p_sum_exp_neg(z))
    return _scalar_or_array(np.clip(out, 0.0, 1.0))


def _component_log_pdfs(x, model):
    """Stacked component log densities, shape (..., s)."""
    x = _as_points(x, model.p)
    return np.stack([mld_log_pdf(x, comp) for comp in model.components], axis=-1)


def mixture_log_pdf(x, model):
    """log sum_i pi_i l_i(x), via log-sum-exp over components."""
    lp = _component_log_pdfs(x, model) + np.log(model.weights)
    return _scalar_or_array(logsumexp(lp, axis=-1))


def mixture_pdf(x, model):
    return _scalar_or_array(np.exp(mixture_log_pdf(x, model)))


def log_likelihood(data, model):
    """Sum of mixture log densities over the rows of ``data``."""
    data = as_dataset(data)
    if data.shape[1] != model.p:
        raise ValueError(
            "data has %d columns, model dimension is %d" % (data.shape[1], model.p)
        )
    return float(np.sum(mixture_log_pdf(data, model)))


def sample_mixture(model, n, seed):
    """Draw ``n`` rows and their component labels, deterministically per seed.

    A label is drawn from the weights for every row, then each component's rows
    are generated by the exact single-component sampler on an independent
    child stream.
    """
    n = int(n)
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = rng_from_seed(seed)
    cum = np.cumsum(model.weights)
    cum[-1] = 1.0
    labels = np.searchsorted(cum, open_uniform(rng, n), side="left").astype(np.int64)
    data = np.empty((n, model.p))
    comp_seeds = spawn_seeds(seed, model.s)
    for i, comp in enumerate(model.components):
        idx = labels == i
        count = int(idx.sum())
        if count:
            data[idx] = sample(comp, count, comp_seeds[i])
    return data, labels


def model_to_dict(model):
    return {
        "format": MODEL_FORMAT,
        "p": model.p,
        "s": model.s,
        "weights": [float(w) for w in model.weights],
        "components": [
            {"mu": [float(v) for v in c.mu], "sigma": [float(v) for v in c.sigma]}
            for c in model.components
        ],
    }


def _model_json_text(model):
    # Hand-rolled so floats carry 17 significant digits regardless of the
    # json module's shortest-repr policy.
    def vec(v):
        return "[" + ", ".join(fmt17(x) for x in v) + "]"

    comps = ",\n    ".join(
        '{"mu": %s, "sigma": %s}' % (vec(c.mu), vec(c.sigma))
        for c in model.components
    )
    return (
        "{\n"
        '  "format": "%s",\n' % MODEL_FORMAT
        + '  "p": %d,\n' % model.p
        + '  "s": %d,\n' % model.s
        + '  "weights": %s,\n' % vec(model.weights)
        + '  "components": [\n    %s\n  ]\n' % comps
        + "}\n"
    )


def save_model(model, destination):
    """Write the model as JSON (atomic rename, 17-significant-digit decimals)."""
    write_text_atomic(destination, _model_json_text(model))


def load_model(source):
    """Read and validate a model file; raises ValueError with a reason if bad."""
    try:
        with open(source) as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValueError("malformed model file %s: %s" % (source, exc)) from exc
    return model_from_dict(raw, origin=str(source))


def model_from_dict(raw, origin="model"):
    """Build a validated MixtureModel from a parsed JSON dictionary."""
    if not isinstance(raw, dict):
        raise ValueError("%s: model document must be a JSON object" % origin)
    if raw.get("format") != MODEL_FORMAT:
        raise ValueError(
            "%s: unsupported format %r (expected %r)"
            % (origin, raw.get("format"), MODEL_FORMAT)
        )
    for key in ("p", "s", "weights", "components"):
        if key not in raw:
            raise ValueError("%s: missing field %r" % (origin, key))
    weights = np.asarray(raw["weights"], dtype=float)
    comps_raw = raw["components"]
    if len(comps_raw) != raw["s"] or weights.size != raw["s"]:
        raise ValueError("%s: component count does not match s" % origin)
    total = weights.sum()
    if not np.isfinite(total) or abs(total - 1.0) > WEIGHT_SUM_TOL:
        raise ValueError(
            "%s: weights sum to %.17g, outside the accepted 1e-9 band around 1"
            % (origin, total)
        )
    components = []
    for idx, c in enumerate(comps_raw):
        try:
            components.append(MldParams(np.asarray(c["mu"], float), np.asarray(c["sigma"], float)))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError("%s: component %d invalid: %s" % (origin, idx, exc)) from exc
        if components[-1].p != raw["p"]:
            raise ValueError(
                "%s: component %d has dimension %d, expected p=%d"
                % (origin, idx, components[-1].p, raw["p"])
            )
    try:
        return MixtureModel(weights, tuple(components))
    except ValueError as exc:
        raise ValueError("%s: %s" % (origin, exc)) from exc


def as_dataset(rows):
    """Validate observations as a finite 2-D float array with n >= 1 rows."""
    data = np.asarray(rows, dtype=float)
    if data.ndim == 1:
        data = data[:, None]
    if data.ndim != 2 or data.shape[0] < 1 or data.shape[1] < 1:
        raise ValueError("dataset must be a non-empty n x p matrix")
    if not np.all(np.isfinite(data)):
        raise ValueError("dataset entries must be finite")
    return data


def load_dataset(path):
    """Read a CSV dataset: one row per observation, '#' lines ignored."""
    try:
        data = np.loadtxt(path, delimiter=",", comments="#", ndmin=2, dtype=float)
    except ValueError as exc:
        raise ValueError("malformed dataset file %s: %s" % (path, exc)) from exc
    if data.size == 0:
        raise ValueError("dataset file %s holds no rows" % path)
    return as_dataset(data)


def save_dataset(data, path, header=None):
    """Write a CSV dataset atomically; optional header goes in a '#' line."""
    data = as_dataset(data)
    lines = []
    if header:
        lines.append("# " + header)
    for row in data:
        lines.append(",".join(fmt17(v) for v in row))
    write_text_atomic(path, "\n".join(lines) + "\n")
