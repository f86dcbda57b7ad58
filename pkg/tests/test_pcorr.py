"""Statistics layer: covariance, partial correlations, null density, p-values."""

import math

import numpy as np
import pytest
from mpmath import mp
from scipy.integrate import quad

from gmcs import (
    Dataset,
    DegenerateDataError,
    SingularCovarianceError,
    ValidationError,
    critical_value,
    edge_pvalues,
    null_density,
    partial_correlations,
    pvalue_exact,
    pvalue_fisher,
    sample_cov,
)
from gmcs.pcorr import cholesky_spd, correlations, pvalues_exact_many, spd_inverse

mp.dps = 30


def tail_quadrature(r, nu):
    """Independent oracle: adaptive quadrature of the null density tails.

    Integrates the density through x = sin(t), which removes the endpoint
    singularity for nu = 1.
    """
    logc = math.lgamma((nu + 1) / 2) - math.lgamma(nu / 2) - 0.5 * math.log(math.pi)
    c = math.exp(logc)
    val, err = quad(
        lambda t: math.cos(t) ** (nu - 1),
        math.asin(abs(r)),
        math.pi / 2,
        epsabs=1e-13,
        epsrel=1e-13,
    )
    assert err < 1e-9
    return 2.0 * c * val


class TestDataset:
    def test_accepts_valid(self):
        d = Dataset(np.random.default_rng(0).normal(size=(10, 3)))
        assert d.n_obs == 10 and d.n_var == 3

    def test_rejects_n_not_greater_than_p(self):
        with pytest.raises(ValidationError, match="n > N"):
            Dataset(np.eye(3))

    def test_rejects_non_finite(self):
        x = np.random.default_rng(0).normal(size=(10, 3))
        x[4, 1] = np.nan
        with pytest.raises(ValidationError, match="non-finite"):
            Dataset(x)

    def test_rejects_constant_column(self):
        x = np.random.default_rng(0).normal(size=(10, 3))
        x[:, 2] = 7.0
        with pytest.raises(DegenerateDataError, match="column 3"):
            Dataset(x)

    def test_values_are_read_only(self):
        d = Dataset(np.random.default_rng(0).normal(size=(10, 3)))
        with pytest.raises(ValueError):
            d.values[0, 0] = 1.0


class TestSampleCov:
    def test_matches_direct_summation(self):
        x = np.array(
            [
                [2.0, -1.0, 0.5],
                [1.0, 0.0, 1.5],
                [4.0, 2.0, -0.5],
                [0.0, 1.0, 2.0],
                [3.0, -2.0, 1.0],
            ]
        )
        got = sample_cov(Dataset(x))
        n = x.shape[0]
        mean = [sum(x[:, k]) / n for k in range(3)]
        for a in range(3):
            for b in range(3):
                acc = sum((x[s, a] - mean[a]) * (x[s, b] - mean[b]) for s in range(n))
                assert got[a, b] == pytest.approx(acc / (n - 1), abs=1e-12)

    def test_near_identity_for_independent_draws(self):
        n = 4000
        x = np.random.default_rng(1).standard_normal((n, 4))
        c = sample_cov(Dataset(x))
        assert np.abs(c - np.eye(4)).max() < 5 / math.sqrt(n)

    def test_duplicate_columns_flagged_downstream(self):
        x = np.random.default_rng(2).standard_normal((20, 2))
        data = Dataset(np.column_stack([x, x[:, 0]]))
        cov = sample_cov(data)
        with pytest.raises(SingularCovarianceError):
            partial_correlations(cov)


class TestPartialCorrelations:
    def test_diagonal_gives_zeros(self):
        r = partial_correlations(np.diag([1.0, 2.0, 3.0])).r
        assert r[0, 1] == 0.0 and r[0, 2] == 0.0 and r[1, 2] == 0.0

    def test_equicorrelation_closed_form(self):
        cov = np.full((3, 3), 0.5)
        np.fill_diagonal(cov, 1.0)
        r = partial_correlations(cov).r
        # closed form: (r12 - r13*r23) / sqrt((1-r13^2)(1-r23^2))
        want = (0.5 - 0.25) / math.sqrt(0.75 * 0.75)
        for i, j in [(0, 1), (0, 2), (1, 2)]:
            assert r[i, j] == pytest.approx(want, abs=1e-12)
        assert want == pytest.approx(1 / 3)

    def test_two_variables_equal_plain_correlation(self):
        cov = np.array([[2.0, 0.8], [0.8, 1.0]])
        r = partial_correlations(cov).r
        assert r[0, 1] == pytest.approx(0.8 / math.sqrt(2.0), rel=1e-12)

    def test_block_diagonal_exact_zeros(self):
        block = np.array([[1.0, 0.4], [0.4, 1.0]])
        cov = np.zeros((4, 4))
        cov[:2, :2] = block
        cov[2:, 2:] = block
        r = partial_correlations(cov).r
        assert r[0, 2] == 0.0 and r[0, 3] == 0.0 and r[1, 2] == 0.0 and r[1, 3] == 0.0

    def test_non_pd_reports_pivot(self):
        bad = np.array([[1.0, 2.0], [2.0, 1.0]])
        with pytest.raises(SingularCovarianceError) as info:
            partial_correlations(bad)
        assert info.value.pivot == 2

    def test_spd_inverse_matches_numpy(self):
        rng = np.random.default_rng(3)
        a = rng.standard_normal((5, 5))
        cov = a @ a.T + 5 * np.eye(5)
        assert np.allclose(spd_inverse(cov), np.linalg.inv(cov), atol=1e-10)

    def test_cholesky_rejects_asymmetric(self):
        with pytest.raises(ValidationError, match="symmetric"):
            cholesky_spd(np.array([[1.0, 0.5], [0.0, 1.0]]))


class TestNullDensity:
    def test_uniform_when_nu_two(self):
        assert null_density(0.0, 12, 10) == pytest.approx(0.5, abs=1e-15)
        assert null_density(0.77, 12, 10) == pytest.approx(0.5, abs=1e-15)

    def test_symmetry(self):
        for x in np.linspace(0, 0.99, 40):
            assert null_density(x, 20, 4) == pytest.approx(null_density(-x, 20, 4))

    def test_integrates_to_one(self):
        for nu in range(1, 31):
            n_obs, n_var = nu + 3, 3
            val, err = quad(
                lambda t: null_density(math.sin(t), n_obs, n_var) * math.cos(t),
                -math.pi / 2,
                math.pi / 2,
                epsabs=1e-12,
                epsrel=1e-12,
            )
            assert err < 1e-9
            assert val == pytest.approx(1.0, abs=1e-10)

    def test_domain_errors(self):
        with pytest.raises(ValidationError):
            null_density(1.5, 20, 4)
        with pytest.raises(ValidationError):
            null_density(0.0, 4, 4)


class TestPValueExact:
    def test_trivial_endpoints(self):
        assert pvalue_exact(0.0, 20, 4) == 1.0
        assert pvalue_exact(1.0, 20, 4) == 0.0
        assert pvalue_exact(-1.0, 20, 4) == 0.0

    def test_frozen_oracle_value(self):
        # quadrature oracle value, 30 digits: 0.0345996767282486...
        assert pvalue_exact(0.5, 20, 4) == pytest.approx(0.034599676728248596, abs=1e-12)
        assert pvalue_exact(0.5, 20, 4) == pytest.approx(
            tail_quadrature(0.5, 16), abs=1e-10
        )

    def test_uniform_density_case(self):
        # nu = 2 makes the null law uniform, so p = 1 - |r|
        for r in np.linspace(-1, 1, 21):
            assert pvalue_exact(r, 7, 5) == pytest.approx(1 - abs(r), abs=1e-13)

    def test_monotone_in_magnitude(self):
        for nu in range(1, 51):
            grid = np.linspace(0, 1, 1000)
            p = pvalues_exact_many(grid, nu + 2, 2)
            assert (np.diff(p) <= 1e-15).all()

    def test_many_matches_scalar(self):
        grid = np.linspace(-0.9, 0.9, 19)
        many = pvalues_exact_many(grid, 20, 4)
        for r, v in zip(grid, many):
            assert v == pvalue_exact(r, 20, 4)


class TestPValueFisher:
    def test_trivial(self):
        assert pvalue_fisher(0.0, 53, 3) == 1.0
        assert pvalue_fisher(1.0, 53, 3) == 0.0
        assert pvalue_fisher(-1.0, 53, 3) == 0.0

    def test_symmetry(self):
        for r in np.linspace(0, 0.95, 20):
            assert pvalue_fisher(r, 53, 3) == pvalue_fisher(-r, 53, 3)

    def test_against_erfc_oracle(self):
        # two-sided normal tail of atanh(r) * sqrt(n - N - 1), via mpmath erfc
        want = float(mp.erfc(mp.atanh(mp.mpf("0.3")) * 7 / mp.sqrt(2)))
        assert pvalue_fisher(0.3, 53, 3) == pytest.approx(want, abs=1e-10)
        assert want == pytest.approx(0.030262526308347751, abs=1e-15)

    def test_needs_enough_observations(self):
        with pytest.raises(ValidationError):
            pvalue_fisher(0.3, 5, 4)

    def test_close_to_exact_for_large_samples(self):
        for nu in (50, 80, 200):
            for r in np.linspace(-0.5, 0.5, 21):
                gap = abs(pvalue_fisher(r, nu + 3, 3) - pvalue_exact(r, nu + 3, 3))
                assert gap < 0.005


class TestCriticalValue:
    def test_alpha_one_gives_zero(self):
        assert critical_value(1.0, 20, 4) == 0.0

    def test_small_alpha_approaches_one(self):
        assert critical_value(1e-12, 8, 3) > 0.999

    def test_frozen_value(self):
        assert critical_value(0.05, 20, 4) == pytest.approx(
            0.468277305445206806, abs=1e-10
        )

    def test_round_trip(self):
        for alpha in (0.001, 0.01, 0.05, 0.1, 0.5):
            for nu in (1, 2, 16, 50):
                c = critical_value(alpha, nu + 2, 2)
                assert pvalue_exact(c, nu + 2, 2) == pytest.approx(alpha, abs=1e-10)

    def test_monotone_in_alpha(self):
        cs = [critical_value(a, 20, 4) for a in (0.01, 0.05, 0.1, 0.5, 0.9)]
        assert all(a > b for a, b in zip(cs, cs[1:]))

    def test_bisection_against_quadrature_cdf(self):
        # independent root-finder on the quadrature tail, nu = 16
        lo, hi = 0.0, 1.0
        for _ in range(60):
            mid = (lo + hi) / 2
            if tail_quadrature(mid, 16) > 0.05:
                lo = mid
            else:
                hi = mid
        assert critical_value(0.05, 20, 4) == pytest.approx(hi, abs=1e-9)


class TestEdgePValues:
    def test_dataset_pipeline_exact_vs_fisher(self):
        rng = np.random.default_rng(5)
        data = Dataset(rng.standard_normal((60, 4)))
        mat, pv_exact = edge_pvalues(data, method="exact")
        _, pv_fisher = edge_pvalues(data, method="fisher")
        assert pv_exact.method == "exact" and pv_fisher.method == "fisher"
        for e in pv_exact.p:
            assert abs(pv_exact[e] - pv_fisher[e]) < 0.01

    def test_marginal_mode_uses_plain_correlations(self):
        rng = np.random.default_rng(6)
        data = Dataset(rng.standard_normal((40, 3)))
        cov = sample_cov(data)
        mat, pv = edge_pvalues(data, marginal=True)
        want = correlations(cov).r
        assert np.allclose(mat.r, want)
        assert pv[(1, 2)] == pvalue_exact(want[0, 1], 40, 2)

    def test_rejects_unknown_method(self):
        rng = np.random.default_rng(7)
        data = Dataset(rng.standard_normal((30, 3)))
        with pytest.raises(ValidationError):
            edge_pvalues(data, method="bootstrap")
