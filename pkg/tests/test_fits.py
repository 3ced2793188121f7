import math

import numpy as np
import pytest

from evosoft import fits


class TestEmpiricalCcdf:
    def test_with_ties(self):
        vals, p = fits.empirical_ccdf([1, 1, 2])
        assert list(vals) == [1, 2]
        assert p[0] == pytest.approx(1 / 3)
        assert p[1] == 0.0

    def test_singleton(self):
        vals, p = fits.empirical_ccdf([5])
        assert list(vals) == [5] and list(p) == [0.0]

    def test_quartiles(self):
        vals, p = fits.empirical_ccdf([1, 2, 3, 4])
        assert p[list(vals).index(2)] == 0.5

    def test_empty_errors(self):
        with pytest.raises(ValueError):
            fits.empirical_ccdf([])

    def test_non_increasing_and_ends_at_zero(self):
        rng = np.random.default_rng(0)
        x = rng.exponential(size=500)
        _, p = fits.empirical_ccdf(x)
        assert np.all(np.diff(p) <= 0)
        assert p[-1] == 0.0


class TestPowerLawMle:
    def test_hand_computed_value(self):
        fit = fits.fit_powerlaw_mle([1, 2, 4], k_min=1)
        expected = 1 + 3 / (math.log(2) + math.log(4) + math.log(8))
        assert fit.gamma == pytest.approx(expected, abs=1e-12)
        assert fit.gamma == pytest.approx(1.7213, abs=5e-5)
        assert fit.n_tail == 3
        assert fit.stderr == pytest.approx((fit.gamma - 1) / math.sqrt(3))

    def test_recovers_synthetic_exponent_continuous(self):
        # inverse-CDF samples from a gamma=2 power law
        rng = np.random.default_rng(42)
        x = (1 - rng.random(100_000)) ** (-1.0)
        fit = fits.fit_powerlaw_mle(x, k_min=1, shift=0.0)
        assert abs(fit.gamma - 2.0) < 0.02

    def test_recovers_synthetic_exponent_integer_tail(self):
        # rounded power-law data fitted from a cutoff where the
        # half-shift approximation is accurate
        rng = np.random.default_rng(42)
        u = rng.random(400_000)
        k = np.floor(0.5 * (1 - u) ** (-1.0) + 0.5)
        fit = fits.fit_powerlaw_mle(k, k_min=8)
        assert abs(fit.gamma - 2.0) < 0.05

    def test_needs_two_tail_samples(self):
        with pytest.raises(ValueError):
            fits.fit_powerlaw_mle([1.0], k_min=1)
        with pytest.raises(ValueError):
            fits.fit_powerlaw_mle([1, 2, 3], k_min=10)

    def test_scale_covariance_continuous_mode(self):
        rng = np.random.default_rng(1)
        x = 1.0 * (1 - rng.random(2000)) ** (-1 / 1.5)
        f1 = fits.fit_powerlaw_mle(x, k_min=1.0, shift=0.0)
        f2 = fits.fit_powerlaw_mle(7.0 * x, k_min=7.0, shift=0.0)
        assert f1.gamma == pytest.approx(f2.gamma, rel=1e-12)

    def test_purity(self):
        x = [1, 3, 9, 27]
        assert fits.fit_powerlaw_mle(x) == fits.fit_powerlaw_mle(x)


class TestExponentialFit:
    def test_hand_value(self):
        assert fits.fit_exponential([1, 2, 3]).rate == 0.5

    def test_constant(self):
        assert fits.fit_exponential([4.0, 4.0, 4.0]).rate == 0.25

    def test_recovers_rate(self):
        rng = np.random.default_rng(2)
        x = rng.exponential(scale=0.5, size=100_000)
        assert abs(fits.fit_exponential(x).rate - 2.0) < 0.02

    def test_zero_mean_errors(self):
        with pytest.raises(ValueError):
            fits.fit_exponential([0.0, 0.0])


class TestKsDistance:
    def test_identity_model(self):
        x = [1.0, 2.0, 2.0, 5.0]
        vals, p = fits.empirical_ccdf(x)
        table = dict(zip(vals, p))
        assert fits.ks_distance(x, lambda t: table[t]) == 0.0

    def test_degenerate_sample(self):
        assert fits.ks_distance([1, 1, 1], lambda t: 0.0) == 0.0

    def test_uniform_against_exponential(self):
        rng = np.random.default_rng(3)
        x = rng.random(1000)
        lam = fits.fit_exponential(x).rate
        d = fits.ks_distance(x, lambda t: math.exp(-lam * t))
        assert d > 0.1


class TestDgbd:
    @staticmethod
    def curve(A, a, b, R):
        r = np.arange(1, R + 1, dtype=float)
        return A * r ** -a * (R + 1 - r) ** b

    def test_noise_free_round_trip(self):
        fit = fits.fit_dgbd(self.curve(100.0, 1.44, 0.46, 50))
        assert abs(fit.a - 1.44) < 1e-6
        assert abs(fit.b - 0.46) < 1e-6
        assert fit.r2 > 1 - 1e-12

    def test_pure_zipf(self):
        fit = fits.fit_dgbd(self.curve(1.0, 1.0, 0.0, 20))
        assert abs(fit.a - 1.0) < 1e-10
        assert abs(fit.b) < 1e-10

    def test_noise_tolerance(self):
        rng = np.random.default_rng(4)
        clean = self.curve(100.0, 1.44, 0.46, 50)
        for _ in range(10):
            noisy = clean * np.exp(rng.normal(0, 0.05, size=50))
            fit = fits.fit_dgbd(noisy)
            assert abs(fit.a - 1.44) < 0.1
            assert abs(fit.b - 0.46) < 0.1

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            fits.fit_dgbd([3.0, 2.0, 0.0])

    def test_needs_three_ranks(self):
        with pytest.raises(ValueError):
            fits.fit_dgbd([2.0, 1.0])


class TestWeibull:
    def test_exponential_reduces_to_alpha_one(self):
        rng = np.random.default_rng(5)
        x = rng.exponential(scale=3.0, size=10_000)
        fit = fits.fit_weibull(x)
        assert abs(fit.alpha - 1.0) < 0.05

    def test_recovers_stretched_exponent(self):
        rng = np.random.default_rng(6)
        x = 2.0 * (-np.log(rng.random(10_000))) ** (1 / 0.6)
        fit = fits.fit_weibull(x)
        assert abs(fit.alpha - 0.6) < 0.05
        assert abs(fit.mean_T - 2.0) / 2.0 < 0.15

    def test_constant_samples_error(self):
        with pytest.raises(ValueError):
            fits.fit_weibull([2.0] * 20)

    def test_minimum_sample_size(self):
        with pytest.raises(ValueError):
            fits.fit_weibull([1.0, 2.0, 3.0])


class TestLikelihoodRatio:
    def test_prefers_exponential_on_exponential_data(self):
        rng = np.random.default_rng(7)
        x = np.round(rng.exponential(scale=8.0, size=5000)) + 1
        llr, _, _ = fits.loglikelihood_exp_vs_powerlaw(x)
        assert llr > 0

    def test_prefers_powerlaw_on_powerlaw_data(self):
        rng = np.random.default_rng(8)
        u = rng.random(5000)
        k = np.floor(0.5 * (1 - u) ** (-1.0) + 0.5)
        llr, _, _ = fits.loglikelihood_exp_vs_powerlaw(k)
        assert llr < 0


class TestKminScan:
    def test_tail_estimate_on_mixed_head(self):
        # geometric head plus clean power-law tail; the scan should pick a
        # cutoff past the head and recover the tail exponent
        rng = np.random.default_rng(9)
        head = rng.geometric(0.4, size=20_000)
        u = rng.random(20_000)
        tail = np.floor(4.5 * (1 - u) ** (-1.0) + 0.5)
        fit, ks = fits.scan_powerlaw_kmin(np.concatenate([head, tail]))
        assert fit.k_min >= 2
        assert abs(fit.gamma - 2.0) < 0.15
