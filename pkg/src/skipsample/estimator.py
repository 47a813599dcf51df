"""Scikit-learn style front end for skip-sampling inference on a single series."""

from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator

from ._validation import as_time_series
from .dft import make_plan
from .functionals import SpectralFunctional, StatisticSpec
from .inference import (
    RootScaling,
    build_roots,
    default_bandwidth,
    hybrid_variance,
    normal_ci,
    plug_in_spectral_mean_fhat,
    subsampling_ci,
    variance_estimator,
)
from .statistics import ratio_full, skip_ratio_statistics, skip_spectral_means, spectral_mean_full

VARIANCE_MODES = ("subsampling-quantiles", "normal-vhat", "normal-hybrid")


def auto_block_length(n: int) -> int:
    """Default block rule ``floor(n**0.4)``, which grows slower than ``sqrt(n)``."""
    return max(2, int(math.floor(n**0.4)))


class SkipSamplingEstimator(BaseEstimator):
    """Estimate a spectral mean or ratio statistic with skip-sampling inference.

    Fitting computes the full-sample estimate on the truncated series, all
    skip-sample statistics, the scaled-dispersion variance estimate, and a
    confidence interval whose construction is chosen by ``variance_mode``.

    Parameters
    ----------
    statistic : str
        'variance', 'autocovariance', 'autocorrelation', or 'custom'.
    k : int
        Lag for the autocovariance / autocorrelation statistics.
    cos_coefficients, sin_coefficients : sequence of float, optional
        Trigonometric-polynomial weights for the 'custom' statistic
        (cosines indexed from 0, sines from 1).
    b : int or 'auto'
        Block length; 'auto' uses ``floor(T**0.4)``.
    alpha : float
        Interval miscoverage level.
    variance_mode : str
        'subsampling-quantiles' (root-quantile interval), 'normal-vhat'
        (normal interval with the skip-sampling variance), or
        'normal-hybrid' (adds the kurtosis correction; needs ``eta``).
    eta : float, optional
        Innovation kurtosis plugged into the hybrid correction.
    bandwidth : int, optional
        Lag-window bandwidth of the density estimate used by the hybrid
        correction; defaults to ``floor(T_eff ** (1/3))``.
    delta : float
        Exponent of the root normalization rate ``n**delta``.

    Attributes
    ----------
    theta_ : float
        Full-sample estimate on the truncated series.
    plan_ : SkipSamplePlan
    skip_statistics_ : ndarray
        The q skip-sample statistics.
    roots_ : EmpiricalRootDistribution
        Feasible root distribution (centered at ``theta_``).
    variance_ : VarianceEstimate
        The estimate used by the interval (hybrid-corrected when requested).
    interval_ : ConfidenceInterval
    """

    def __init__(
        self,
        statistic: str = "variance",
        k: int = 1,
        cos_coefficients=None,
        sin_coefficients=None,
        b="auto",
        alpha: float = 0.05,
        variance_mode: str = "subsampling-quantiles",
        eta: float | None = None,
        bandwidth: int | None = None,
        delta: float = 0.5,
    ):
        self.statistic = statistic
        self.k = k
        self.cos_coefficients = cos_coefficients
        self.sin_coefficients = sin_coefficients
        self.b = b
        self.alpha = alpha
        self.variance_mode = variance_mode
        self.eta = eta
        self.bandwidth = bandwidth
        self.delta = delta

    def _statistic_spec(self) -> StatisticSpec:
        return StatisticSpec(
            name=self.statistic,
            k=self.k,
            cos_coefficients=tuple(self.cos_coefficients or ()),
            sin_coefficients=tuple(self.sin_coefficients or ()),
        )

    def _resolved_block_length(self, n: int) -> int:
        if isinstance(self.b, str):
            if self.b != "auto":
                raise ValueError(f"b must be an integer or 'auto', got {self.b!r}")
            return auto_block_length(n)
        return int(self.b)

    def fit(self, X, y=None):
        """Fit on a one-dimensional series (array-like, or a single-column 2-D array)."""
        x = as_time_series(np.asarray(X))
        if self.variance_mode not in VARIANCE_MODES:
            raise ValueError(
                f"variance_mode must be one of {VARIANCE_MODES}, got {self.variance_mode!r}"
            )
        spec = self._statistic_spec()
        block = self._resolved_block_length(x.size)
        if x.size < 2 * block:
            raise ValueError(
                f"need at least 2 blocks of data: T={x.size} < 2*b={2 * block}"
            )
        plan = make_plan(x.size, block)
        xt = x[: plan.n_effective]
        scaling = RootScaling(self.delta)

        if spec.kind == "ratio":
            theta = ratio_full(xt, spec.ratio()).value
            skip_values = skip_ratio_statistics(xt, spec.ratio(), plan)
        else:
            theta = spectral_mean_full(xt, spec.weight()).value
            skip_values = skip_spectral_means(xt, spec.weight(), plan)

        roots = build_roots(skip_values, theta, scaling, plan)
        variance = variance_estimator(skip_values, scaling, plan)

        if self.variance_mode == "normal-hybrid":
            if self.eta is None:
                raise ValueError("normal-hybrid mode needs eta (innovation kurtosis)")
            bandwidth = self.bandwidth or default_bandwidth(plan.n_effective)
            weight = self._hybrid_weight(spec, theta)
            g_fhat = plug_in_spectral_mean_fhat(xt, weight, bandwidth)
            variance = hybrid_variance(variance, self.eta, g_fhat)
            interval = normal_ci(theta, variance, self.alpha, plan.n_effective, scaling)
        elif self.variance_mode == "normal-vhat":
            interval = normal_ci(theta, variance, self.alpha, plan.n_effective, scaling)
        else:
            interval = subsampling_ci(theta, roots, self.alpha, scaling, plan.n_effective)

        self.statistic_spec_ = spec
        self.plan_ = plan
        self.scaling_ = scaling
        self.theta_ = float(theta)
        self.skip_statistics_ = skip_values
        self.roots_ = roots
        self.variance_ = variance
        self.interval_ = interval
        return self

    @staticmethod
    def _hybrid_weight(spec: StatisticSpec, theta: float) -> SpectralFunctional:
        if spec.kind != "ratio":
            return spec.weight()
        ratio = spec.ratio()
        # Centered weight p - m*theta; its plug-in spectral mean is near zero,
        # so the correction degrades gracefully for ratio statistics.
        return SpectralFunctional(
            lambda lam: ratio.numerator(lam) - theta * ratio.denominator(lam),
            name="ratio-centered",
        )

    def confidence_interval(self):
        """The fitted interval as a ``(lower, upper)`` named tuple."""
        return self.interval_
