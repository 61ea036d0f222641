"""
The multivariate logistic distribution: evaluation and exact sampling
=====================================================================

The joint cdf of the standard p-dimensional form is
[1 + sum_k exp(-x_k)]^(-1); adding a location vector mu and a scale vector
sigma standardizes each coordinate.  This script evaluates both forms, draws
exact samples by sequential conditional inversion, and cross-checks the
sampler against the analytic marginals.
"""

import numpy as np

import logimix as lm

# Standard form in two dimensions: at the origin the cdf is 1/3 and the
# density is 2!/3^3.
x0 = np.zeros(2)
print("standard cdf at 0:", lm.standard_cdf(x0))
print("standard pdf at 0:", lm.standard_pdf(x0), "(exact 2/27 =", 2 / 27, ")")

# A location-scale version: coordinates keep univariate logistic marginals.
params = lm.MldParams(mu=[1.0, -0.5], sigma=[2.0, 0.7])
print("\ncdf at the center:", lm.mld_cdf(params.mu, params))
print("marginal cdf of coordinate 0 at its center:", lm.marginal_cdf(1.0, params, 0))

# The log density is stable arbitrarily deep in the tails.
print("log pdf far out:", lm.mld_log_pdf(np.array([-800.0, 300.0]), params))

# Exact sampling: coordinate j+1 inverts the closed-form conditional cdf
# (s/(s+b))^(j+1) given the prefix sum s of exp(-z) terms.
draws = lm.sample(params, n=100_000, seed=7)
print("\nsample shape:", draws.shape)
print("coordinate means:", draws.mean(axis=0), "(locations are", params.mu, ")")

# Marginals should follow the univariate logistic law: compare the empirical
# cdf with the analytic one on a few quantiles.
for k in range(2):
    for q in (0.25, 0.5, 0.9):
        analytic = params.mu[k] + params.sigma[k] * np.log(q / (1 - q))
        empirical = np.quantile(draws[:, k], q)
        print("coord %d  q=%.2f  analytic %.4f  empirical %.4f" % (k, q, analytic, empirical))

# Same seed, same bytes: the sampler is a pure function of (params, n, seed).
again = lm.sample(params, n=100_000, seed=7)
print("\nbit-identical repeat:", np.array_equal(draws, again))
