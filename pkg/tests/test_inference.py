import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skipsample import (
    EmpiricalRootDistribution,
    InsufficientSubsamplesError,
    NumericsWarning,
    RootScaling,
    SpectralFunctional,
    StatisticSpec,
    VarianceEstimate,
    ar1_process,
    build_roots,
    cdf,
    generate,
    hybrid_variance,
    make_plan,
    normal_ci,
    plug_in_spectral_mean_fhat,
    quantile,
    sample_autocovariance,
    skip_spectral_means,
    subsampling_ci,
    variance_estimator,
    white_noise,
)

SQRT = RootScaling()
PLAN2 = make_plan(8, 4)    # q = 2
PLAN4 = make_plan(16, 4)   # q = 4

root_samples = st.lists(
    st.floats(min_value=-1e6, max_value=1e6, allow_nan=False), min_size=2, max_size=40
)


def dist(roots):
    roots = np.asarray(roots, dtype=float)
    plan = make_plan(4 * roots.size, 4)
    return EmpiricalRootDistribution(roots, 0.0, SQRT, plan)


class TestRootScaling:
    def test_default_is_square_root(self):
        assert SQRT.rate(64) == pytest.approx(8.0)

    def test_slowly_varying_factor_applied(self):
        scaling = RootScaling(0.5, slowly_varying=lambda n: np.log(n))
        assert scaling.rate(np.e**2) == pytest.approx(np.e * 2.0)

    def test_nonpositive_exponent_rejected(self):
        with pytest.raises(ValueError):
            RootScaling(0.0)


class TestBuildRoots:
    def test_all_statistics_equal_center_gives_zero_roots(self):
        d = build_roots([2.0, 2.0], 2.0, SQRT, PLAN2)
        assert np.array_equal(d.roots, [0.0, 0.0])

    def test_hand_worked_scaling(self):
        d = build_roots([1.0, 3.0], 2.0, SQRT, PLAN2)
        assert np.array_equal(d.roots, [-2.0, 2.0])

    def test_oracle_centering_uses_supplied_parameter(self):
        d = build_roots([1.0, 3.0], 0.0, SQRT, PLAN2)
        assert np.array_equal(d.roots, [2.0, 6.0])
        assert d.center == 0.0

    def test_single_statistic_rejected(self):
        with pytest.raises(InsufficientSubsamplesError):
            build_roots([1.0], 0.0, SQRT, make_plan(4, 4))

    def test_statistic_count_must_match_plan(self):
        with pytest.raises(ValueError):
            build_roots([1.0, 2.0, 3.0], 0.0, SQRT, PLAN2)


class TestCdf:
    def test_below_minimum_is_zero(self):
        assert cdf(dist([-2.0, 2.0]), -3.0) == 0.0

    def test_at_maximum_is_one(self):
        assert cdf(dist([-2.0, 2.0]), 2.0) == 1.0

    def test_midpoint_half(self):
        assert cdf(dist([-2.0, 2.0]), 0.0) == 0.5

    def test_right_continuity_at_atom(self):
        d = dist([1.0, 1.0, 3.0])
        assert d.cdf(1.0) == pytest.approx(2.0 / 3.0)
        assert d.cdf(1.0 - 1e-12) == 0.0


class TestQuantile:
    def test_median_of_two_atoms_is_lower(self):
        assert quantile(dist([-2.0, 2.0]), 0.5) == -2.0

    def test_three_quarters_of_four_atoms(self):
        assert quantile(dist([1.0, 2.0, 3.0, 4.0]), 0.75) == 3.0

    def test_single_atom_for_any_level(self):
        d = dist([5.0, 5.0, 5.0])
        for p in (0.01, 0.5, 0.99):
            assert quantile(d, p) == 5.0

    def test_levels_outside_open_interval_rejected(self):
        d = dist([1.0, 2.0])
        for p in (0.0, 1.0, -0.1, 1.1):
            with pytest.raises(ValueError):
                quantile(d, p)

    @given(root_samples, st.floats(min_value=0.001, max_value=0.999))
    @settings(max_examples=80, deadline=None)
    def test_cdf_of_quantile_reaches_level(self, roots, p):
        plan = make_plan(4 * len(roots), 4)
        d = EmpiricalRootDistribution(roots, 0.0, SQRT, plan)
        assert d.cdf(d.quantile(p)) >= p


class TestSubsamplingCi:
    def test_formula_on_symmetric_roots(self):
        # Lower endpoint subtracts the 75% root (=1), upper subtracts the
        # 25% root (=-2); with four atoms the equal-tailed interval is
        # asymmetric even though the roots themselves are symmetric.
        d = dist([-2.0, -1.0, 1.0, 2.0])
        ci = subsampling_ci(0.0, d, 0.5, SQRT, 1)
        assert ci == (-1.0, 2.0)

    def test_two_symmetric_atoms_give_symmetric_interval(self):
        ci = subsampling_ci(0.0, dist([-2.0, 2.0]), 0.5, SQRT, 1)
        assert ci == (-2.0, 2.0)

    def test_all_roots_zero_degenerates_to_point(self):
        ci = subsampling_ci(3.3, dist([0.0, 0.0, 0.0]), 0.1, SQRT, 100)
        assert ci == (3.3, 3.3)

    def test_rate_rescales_width(self):
        d = dist([-2.0, 2.0])
        wide = subsampling_ci(0.0, d, 0.5, SQRT, 4)
        assert wide == (-1.0, 1.0)

    def test_monotone_in_alpha(self):
        roots = np.random.default_rng(8).normal(size=24)
        d = dist(roots)
        previous = subsampling_ci(0.0, d, 0.02, SQRT, 50)
        for alpha in (0.05, 0.1, 0.2, 0.5, 0.8):
            current = subsampling_ci(0.0, d, alpha, SQRT, 50)
            assert current.lower >= previous.lower - 1e-12
            assert current.upper <= previous.upper + 1e-12
            previous = current

    def test_bad_alpha_rejected(self):
        with pytest.raises(ValueError):
            subsampling_ci(0.0, dist([0.0, 1.0]), 1.5, SQRT, 10)


class TestVarianceEstimator:
    def test_equal_statistics_give_zero(self):
        assert variance_estimator([5.0, 5.0], SQRT, PLAN2).v_hat == 0.0

    def test_hand_worked_value(self):
        assert variance_estimator([1.0, 3.0], SQRT, PLAN2).v_hat == pytest.approx(4.0)

    def test_location_invariance(self):
        values = np.random.default_rng(3).normal(size=4)
        base = variance_estimator(values, SQRT, PLAN4).v_hat
        shifted = variance_estimator(values + 11.7, SQRT, PLAN4).v_hat
        assert shifted == pytest.approx(base, abs=1e-12)

    def test_matches_population_variance_scaling(self):
        values = np.random.default_rng(4).normal(size=4)
        expected = 4.0 * np.var(values)
        assert variance_estimator(values, SQRT, PLAN4).v_hat == pytest.approx(expected, abs=1e-12)

    def test_single_statistic_rejected(self):
        with pytest.raises(InsufficientSubsamplesError):
            variance_estimator([1.0], SQRT, make_plan(4, 4))


class TestNormalCi:
    def test_zero_variance_degenerates_to_point(self):
        v = VarianceEstimate(0.0, 4, SQRT)
        assert normal_ci(1.0, v, 0.05, 100, SQRT) == (1.0, 1.0)

    def test_unit_z_score_case(self):
        v = VarianceEstimate(1.0, 4, SQRT)
        ci = normal_ci(0.0, v, 0.3174, 100, SQRT)
        assert ci.lower == pytest.approx(-0.1, abs=1e-4)
        assert ci.upper == pytest.approx(0.1, abs=1e-4)


class TestHybridVariance:
    def test_gaussian_kurtosis_leaves_value_unchanged(self):
        v = VarianceEstimate(1.3, 8, SQRT)
        out = hybrid_variance(v, 3.0, 0.7)
        assert out.v_hat == pytest.approx(1.3)
        assert out.corrected

    def test_zero_plug_in_leaves_value_unchanged(self):
        v = VarianceEstimate(1.3, 8, SQRT)
        assert hybrid_variance(v, 9.0, 0.0).v_hat == pytest.approx(1.3)

    def test_hand_worked_correction(self):
        v = VarianceEstimate(1.0, 8, SQRT)
        assert hybrid_variance(v, 6.0, 0.5).v_hat == pytest.approx(1.75)

    def test_negative_result_clipped_with_warning(self):
        v = VarianceEstimate(0.1, 8, SQRT)
        with pytest.warns(NumericsWarning):
            out = hybrid_variance(v, 1.0, 1.0)
        assert out.v_hat == 0.0

    def test_kurtosis_below_one_rejected(self):
        with pytest.raises(ValueError):
            hybrid_variance(VarianceEstimate(1.0, 8, SQRT), 0.5, 0.0)


class TestPlugInSpectralMean:
    def test_bandwidth_bounds_enforced(self):
        x = np.random.default_rng(0).normal(size=32)
        g = SpectralFunctional.constant(1.0)
        for bad in (0, 32, 40):
            with pytest.raises(ValueError):
                plug_in_spectral_mean_fhat(x, g, bad)

    def test_unit_weight_reduces_to_sample_variance(self):
        # Only the lag-zero term survives the full-grid sum when g = 1.
        x = np.random.default_rng(1).normal(size=128)
        value = plug_in_spectral_mean_fhat(x, SpectralFunctional.constant(1.0), 8)
        assert value == pytest.approx(sample_autocovariance(x, 0), abs=1e-12)

    def test_white_noise_concentrates_on_innovation_variance(self):
        values = []
        for rep in range(300):
            x = generate(white_noise(1.0), 4096, seed=1, stream=rep)
            values.append(plug_in_spectral_mean_fhat(x, SpectralFunctional.constant(1.0), 16))
        values = np.asarray(values)
        stderr = values.std(ddof=1) / np.sqrt(values.size)
        assert abs(values.mean() - 1.0) <= 3.0 * stderr

    def test_lag_weight_concentrates_on_autocovariance(self):
        # Known first autocovariance 2/3; the triangular lag window needs a
        # wide bandwidth for its weight bias to drop below the noise band.
        values = []
        g = SpectralFunctional.complex_exponential(1)
        for rep in range(500):
            x = generate(ar1_process(0.5), 4096, seed=0, stream=rep)
            values.append(plug_in_spectral_mean_fhat(x, g, 512))
        values = np.asarray(values)
        stderr = values.std(ddof=1) / np.sqrt(values.size)
        assert abs(values.mean() - 2.0 / 3.0) <= 3.0 * stderr


class TestOracleDecomposition:
    def test_identity_holds_per_replication(self):
        spec = ar1_process(0.4)
        plan = make_plan(1024, 32)
        g = SpectralFunctional.constant(1.0)
        theta = 1.0 / (1.0 - 0.16)
        a_b2 = plan.block_length
        for rep in range(50):
            x = generate(spec, 1024, seed=9, stream=rep)
            values = skip_spectral_means(x, g, plan)
            v_hat = variance_estimator(values, SQRT, plan).v_hat
            v_oracle = a_b2 * np.mean((values - theta) ** 2)
            residual = v_hat - (v_oracle - a_b2 * (values.mean() - theta) ** 2)
            assert abs(residual) <= 1e-10
