import json

import numpy as np
import pytest

import logimix as lm

from oracles import quad_normalization_1d, quad_normalization_2d


def two_component_1d():
    return lm.MixtureModel(
        [0.3, 0.7], (lm.MldParams([-2.0], [1.0]), lm.MldParams([2.0], [0.5]))
    )


def random_model(rng, p, s):
    comps = tuple(
        lm.MldParams(rng.uniform(-3, 3, p), rng.uniform(0.4, 2.0, p)) for _ in range(s)
    )
    w = rng.dirichlet(np.full(s, 4.0))
    return lm.MixtureModel(w, comps)


class TestModelValidation:
    def test_weights_must_sum_to_one(self):
        with pytest.raises(ValueError):
            lm.MixtureModel([0.5, 0.6], (lm.MldParams([0.0], [1.0]),) * 2)

    def test_component_count_must_match(self):
        with pytest.raises(ValueError):
            lm.MixtureModel([1.0], (lm.MldParams([0.0], [1.0]),) * 2)

    def test_dimensions_must_agree(self):
        with pytest.raises(ValueError):
            lm.MixtureModel(
                [0.5, 0.5],
                (lm.MldParams([0.0], [1.0]), lm.MldParams([0.0, 0.0], [1.0, 1.0])),
            )

    def test_single_component_weight_one(self):
        m = lm.MixtureModel([1.0], (lm.MldParams([0.0], [1.0]),))
        assert m.s == 1 and m.p == 1


class TestEvaluation:
    def test_single_component_equals_component(self):
        comp = lm.MldParams([0.7, -0.1], [1.1, 0.9])
        m = lm.MixtureModel([1.0], (comp,))
        x = np.array([0.2, 0.4])
        assert lm.mixture_cdf(x, m) == lm.mld_cdf(x, comp)
        assert lm.mixture_pdf(x, m) == pytest.approx(lm.mld_pdf(x, comp), rel=1e-15)

    def test_duplicated_component_collapses(self):
        comp = lm.MldParams([0.3], [0.8])
        m = lm.MixtureModel([0.5, 0.5], (comp, comp))
        x = np.array([0.9])
        assert lm.mixture_cdf(x, m) == pytest.approx(lm.mld_cdf(x, comp), rel=1e-15)

    def test_cdf_value_direct_substitution(self):
        # 0.3/(1+e^-2) + 0.7/(1+e^4), frozen from 50-digit arithmetic
        assert lm.mixture_cdf(np.array([0.0]), two_component_1d()) == pytest.approx(
            0.27682947036682882, rel=1e-14
        )

    def test_pdf_value_term_by_term(self):
        # frozen from 50-digit term-by-term evaluation
        assert lm.mixture_pdf(np.array([0.0]), two_component_1d()) == pytest.approx(
            0.056225864319659518, rel=1e-13
        )

    def test_symmetric_mixture_even_pdf(self):
        m = lm.MixtureModel(
            [0.5, 0.5], (lm.MldParams([-1.5], [1.0]), lm.MldParams([1.5], [1.0]))
        )
        for x in (0.5, 1.0, 2.0):
            left = lm.mixture_pdf(np.array([-x]), m)
            right = lm.mixture_pdf(np.array([x]), m)
            assert left == pytest.approx(right, abs=1e-12)

    def test_dimension_mismatch(self):
        m2 = lm.MixtureModel(
            [0.5, 0.5],
            (lm.MldParams([0.0, 0.0], [1.0, 1.0]), lm.MldParams([1.0, 1.0], [1.0, 1.0])),
        )
        with pytest.raises(ValueError):
            lm.mixture_cdf(np.array([0.0, 0.0, 0.0]), m2)

    def test_cdf_between_component_cdfs(self):
        rng = np.random.default_rng(11)
        m = random_model(rng, 2, 3)
        for _ in range(50):
            x = rng.uniform(-6, 6, 2)
            comp_vals = [lm.mld_cdf(x, c) for c in m.components]
            val = lm.mixture_cdf(x, m)
            assert min(comp_vals) - 1e-12 <= val <= max(comp_vals) + 1e-12

    def test_permutation_invariance(self):
        rng = np.random.default_rng(12)
        m = random_model(rng, 2, 3)
        perm = np.array([2, 0, 1])
        mp_ = lm.MixtureModel(m.weights[perm], tuple(m.components[i] for i in perm))
        for _ in range(25):
            x = rng.uniform(-6, 6, 2)
            assert lm.mixture_cdf(x, m) == pytest.approx(lm.mixture_cdf(x, mp_), abs=1e-12)
            assert lm.mixture_pdf(x, m) == pytest.approx(lm.mixture_pdf(x, mp_), rel=1e-12)

    def test_exp_log_pdf_consistency(self):
        rng = np.random.default_rng(13)
        m = random_model(rng, 3, 2)
        for _ in range(25):
            x = rng.uniform(-8, 8, 3)
            pdf = lm.mixture_pdf(x, m)
            if pdf > 1e-300:
                assert np.exp(lm.mixture_log_pdf(x, m)) == pytest.approx(pdf, rel=1e-12)

    def test_pdf_integrates_to_one(self):
        rng = np.random.default_rng(14)
        m1 = random_model(rng, 1, 3)
        pooled_mu = np.array([np.mean([c.mu[0] for c in m1.components])])
        pooled_sigma = np.array([max(c.sigma[0] for c in m1.components) + np.ptp([c.mu[0] for c in m1.components])])
        val = quad_normalization_1d(lambda t: lm.mixture_pdf(t, m1), pooled_mu, pooled_sigma)
        assert val == pytest.approx(1.0, abs=1e-6)
        m2 = random_model(rng, 2, 2)
        mu2 = np.mean([c.mu for c in m2.components], axis=0)
        sig2 = np.max([c.sigma for c in m2.components], axis=0) + np.ptp([c.mu for c in m2.components], axis=0)
        val2 = quad_normalization_2d(lambda t: lm.mixture_pdf(t, m2), mu2, sig2)
        assert val2 == pytest.approx(1.0, abs=1e-6)


class TestLogLikelihood:
    def test_single_row_single_component(self):
        comp = lm.MldParams([1.0, 2.0], [1.0, 1.0])
        m = lm.MixtureModel([1.0], (comp,))
        row = np.array([[1.0, 2.0]])
        assert lm.log_likelihood(row, m) == pytest.approx(
            lm.mld_log_pdf(row[0], comp), rel=1e-15
        )

    def test_duplicating_rows_doubles_value(self):
        rng = np.random.default_rng(15)
        m = random_model(rng, 2, 2)
        data, _ = lm.sample_mixture(m, 200, seed=3)
        single = lm.log_likelihood(data, m)
        doubled = lm.log_likelihood(np.vstack([data, data]), m)
        assert doubled == pytest.approx(2.0 * single, rel=1e-9)

    def test_mean_log_likelihood_matches_entropy_estimate(self):
        m = two_component_1d()
        data, _ = lm.sample_mixture(m, 1000, seed=21)
        per_row = lm.log_likelihood(data, m) / 1000.0
        big, _ = lm.sample_mixture(m, 200000, seed=22)
        vals = np.atleast_1d(lm.mixture_log_pdf(big, m))
        ref = vals.mean()
        se = np.sqrt(
            np.var(np.atleast_1d(lm.mixture_log_pdf(data, m))) / 1000.0
            + vals.var() / vals.size
        )
        assert abs(per_row - ref) < 3.0 * se

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            lm.log_likelihood(np.zeros((4, 2)), two_component_1d())


class TestSampling:
    def test_all_labels_zero_for_single_component(self):
        m = lm.MixtureModel([1.0], (lm.MldParams([0.0], [1.0]),))
        _, labels = lm.sample_mixture(m, 500, seed=1)
        assert np.all(labels == 0)

    def test_label_frequency(self):
        _, labels = lm.sample_mixture(two_component_1d(), 10**5, seed=42)
        freq = np.mean(labels == 0)
        assert abs(freq - 0.3) < 0.005

    def test_deterministic(self):
        m = two_component_1d()
        d1, l1 = lm.sample_mixture(m, 256, seed=5)
        d2, l2 = lm.sample_mixture(m, 256, seed=5)
        assert np.array_equal(d1, d2) and np.array_equal(l1, l2)

    def test_labelled_rows_follow_components(self):
        m = two_component_1d()
        data, labels = lm.sample_mixture(m, 20000, seed=8)
        # component 1 has mu=2, sigma=0.5: its rows should center near 2
        assert abs(np.median(data[labels == 1, 0]) - 2.0) < 0.05
        assert abs(np.median(data[labels == 0, 0]) + 2.0) < 0.1


class TestPersistence:
    def test_round_trip_exact(self, tmp_path):
        rng = np.random.default_rng(16)
        m = random_model(rng, 3, 3)
        path = tmp_path / "model.json"
        lm.save_model(m, path)
        loaded = lm.load_model(path)
        assert np.array_equal(loaded.weights, m.weights)
        for a, b in zip(loaded.components, m.components):
            assert np.array_equal(a.mu, b.mu)
            assert np.array_equal(a.sigma, b.sigma)

    def test_rejects_bad_weight_sum(self, tmp_path):
        path = tmp_path / "bad.json"
        doc = {
            "format": "logimix-model-v1",
            "p": 1,
            "s": 2,
            "weights": [0.5, 0.6],
            "components": [
                {"mu": [0.0], "sigma": [1.0]},
                {"mu": [1.0], "sigma": [1.0]},
            ],
        }
        path.write_text(json.dumps(doc))
        with pytest.raises(ValueError, match="weights"):
            lm.load_model(path)

    def test_rejects_zero_sigma(self, tmp_path):
        path = tmp_path / "bad.json"
        doc = {
            "format": "logimix-model-v1",
            "p": 1,
            "s": 1,
            "weights": [1.0],
            "components": [{"mu": [0.0], "sigma": [0.0]}],
        }
        path.write_text(json.dumps(doc))
        with pytest.raises(ValueError, match="sigma"):
            lm.load_model(path)

    def test_rejects_malformed_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(ValueError, match="malformed"):
            lm.load_model(path)

    def test_renormalizes_tiny_drift(self, tmp_path):
        path = tmp_path / "drift.json"
        doc = {
            "format": "logimix-model-v1",
            "p": 1,
            "s": 2,
            "weights": [0.3, 0.7 + 5e-10],
            "components": [
                {"mu": [0.0], "sigma": [1.0]},
                {"mu": [1.0], "sigma": [1.0]},
            ],
        }
        path.write_text(json.dumps(doc))
        loaded = lm.load_model(path)
        assert loaded.weights.sum() == pytest.approx(1.0, abs=1e-15)


class TestDatasetIo:
    def test_round_trip(self, tmp_path):
        rng = np.random.default_rng(17)
        data = rng.normal(size=(40, 3))
        path = tmp_path / "data.csv"
        lm.save_dataset(data, path, header="three columns")
        loaded = lm.load_dataset(path)
        assert np.array_equal(loaded, data)

    def test_comment_lines_skipped(self, tmp_path):
        path = tmp_path / "data.csv"
        path.write_text("# header\n1.0,2.0\n# middle comment\n3.0,4.0\n")
        loaded = lm.load_dataset(path)
        assert loaded.shape == (2, 2)
        assert loaded[1, 1] == 4.0

    def test_rejects_ragged_rows(self, tmp_path):
        path = tmp_path / "data.csv"
        path.write_text("1.0,2.0\n3.0\n")
        with pytest.raises(ValueError):
            lm.load_dataset(path)

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            lm.as_dataset(np.array([[np.nan, 1.0]]))
