"""Shared numerical helpers: seeded random streams, stable log forms, atomic file writes."""

import os
import tempfile

import numpy as np


def rng_from_seed(seed):
    """Counter-based generator (Philox) keyed by a non-negative 64-bit integer seed.

    Every stochastic operation in the package takes an explicit seed and builds
    its generator through this function, so results are reproducible bit-for-bit.
    """
    if not isinstance(seed, (int, np.integer)):
        raise ValueError("seed must be an integer, got %r" % (seed,))
    if seed < 0 or seed >= 2**64:
        raise ValueError("seed must fit in an unsigned 64-bit integer")
    return np.random.Generator(np.random.Philox(int(seed)))


def spawn_seeds(seed, n):
    """Derive ``n`` independent child seeds from ``seed``.

    Uses the SeedSequence spawning protocol, so child streams are independent
    of each other and of the parent, and the derivation is stable across runs
    and platforms.
    """
    ss = np.random.SeedSequence(int(seed))
    return [int(child.generate_state(1, np.uint64)[0]) for child in ss.spawn(int(n))]


def open_uniform(rng, size=None):
    """Uniform draws strictly inside (0, 1).

    Returns values of the form (k + 0.5) / 2**53, avoiding both endpoints so
    that downstream quantile transforms never see 0 or 1.
    """
    k = rng.integers(0, 1 << 53, size=size, dtype=np.uint64)
    return (k.astype(np.float64) + 0.5) * 2.0**-53


def log1p_sum_exp_neg(z):
    """log(1 + sum_k exp(-z[..., k])) along the last axis, without overflow.

    Subtracts max(0, max_k(-z_k)) before exponentiating, so standardized
    residuals far beyond +-700 stay finite.
    """
    neg = -np.asarray(z, dtype=float)
    m = np.maximum(np.max(neg, axis=-1), 0.0)
    return m + np.log(np.exp(-m) + np.sum(np.exp(neg - m[..., None]), axis=-1))


def write_text_atomic(path, text):
    """Write ``text`` to ``path`` via a temp file + rename in the same directory."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def fmt17(x):
    """Decimal text for a float with 17 significant digits (exact round trip)."""
    return format(float(x), ".17g")
