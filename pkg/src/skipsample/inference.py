"""Subsampling inference: empirical root distributions, variance estimates,
and confidence intervals built from skip-sample statistics.

A "root" is the centered, scaled quantity ``a_b * (stat_j - center)`` where
``a_b = b**delta * L(b)``.  Centering at the full-sample estimate gives the
feasible distribution used for quantile intervals; centering at the true
parameter (available in simulations) gives its oracle counterpart.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy.special import ndtri

from ._validation import as_time_series
from .dft import TWO_PI, SkipSamplePlan, frequency_indices
from .exceptions import InsufficientSubsamplesError, NumericsWarning
from .functionals import SpectralFunctional
from .statistics import StatisticValue, real_part


@dataclass(frozen=True)
class RootScaling:
    """Normalization rate ``a_n = n**delta * L(n)`` applied to roots.

    The default (``delta = 1/2``, ``L`` absent) gives ``a_n = sqrt(n)``, the
    rate of spectral means and ratio statistics.
    """

    delta: float = 0.5
    slowly_varying: Callable[[float], float] | None = None

    def __post_init__(self):
        if self.delta <= 0:
            raise ValueError("scaling exponent must be positive")

    def rate(self, n: int | float) -> float:
        a = float(n) ** self.delta
        if self.slowly_varying is not None:
            a *= float(self.slowly_varying(n))
        if not (a > 0 and np.isfinite(a)):
            raise ValueError(f"scaling rate at n={n} must be positive and finite")
        return a


class ConfidenceInterval(NamedTuple):
    lower: float
    upper: float


@dataclass(frozen=True)
class VarianceEstimate:
    """Skip-sampling variance estimate; ``corrected`` marks the hybrid adjustment."""

    v_hat: float
    q: int
    scaling: RootScaling
    corrected: bool = False

    def __post_init__(self):
        if self.v_hat < 0:
            raise ValueError("variance estimate must be nonnegative")


class EmpiricalRootDistribution:
    """Step distribution of the ``q`` centered, scaled skip-sample roots."""

    def __init__(self, roots, center: float, scaling: RootScaling, plan: SkipSamplePlan):
        roots = np.asarray(roots, dtype=float)
        if roots.ndim != 1 or roots.size != plan.n_subsamples:
            raise ValueError(
                f"expected exactly {plan.n_subsamples} roots, got {roots.size}"
            )
        if not np.all(np.isfinite(roots)):
            raise ValueError("roots must be finite")
        self.roots = roots
        self.center = float(center)
        self.scaling = scaling
        self.plan = plan
        self._sorted = np.sort(roots)

    @property
    def n_roots(self) -> int:
        return self.roots.size

    def cdf(self, x):
        """Right-continuous empirical distribution function (scalar in, scalar out)."""
        counts = np.searchsorted(self._sorted, x, side="right")
        out = counts / self.n_roots
        return float(out) if np.isscalar(x) else out

    def quantile(self, p: float) -> float:
        """Left-continuous generalized inverse: the smallest root whose cdf reaches ``p``."""
        if not 0.0 < p < 1.0:
            raise ValueError(f"quantile level must lie in (0, 1), got {p}")
        k = min(max(math.ceil(p * self.n_roots), 1), self.n_roots)
        return float(self._sorted[k - 1])


def _statistic_values(stats, plan: SkipSamplePlan) -> np.ndarray:
    values = []
    for stat in stats:
        if isinstance(stat, StatisticValue):
            if stat.plan is not None and stat.plan != plan:
                raise ValueError("all statistics must come from the same skip-sampling plan")
            values.append(stat.value)
        else:
            values.append(float(stat))
    out = np.asarray(values, dtype=float)
    if out.size < 2:
        raise InsufficientSubsamplesError(
            f"need at least 2 skip-sample statistics, got {out.size}"
        )
    if out.size != plan.n_subsamples:
        raise ValueError(
            f"expected {plan.n_subsamples} statistics for this plan, got {out.size}"
        )
    return out


def build_roots(stats, center: float, scaling: RootScaling, plan: SkipSamplePlan) -> EmpiricalRootDistribution:
    """Center and scale the skip-sample statistics into an empirical root distribution.

    ``center`` is the full-sample estimate for the feasible distribution, or
    the true parameter for the oracle variant used in simulations.
    """
    values = _statistic_values(stats, plan)
    a_b = scaling.rate(plan.block_length)
    return EmpiricalRootDistribution(a_b * (values - float(center)), center, scaling, plan)


def cdf(distribution: EmpiricalRootDistribution, x) -> float:
    return distribution.cdf(x)


def quantile(distribution: EmpiricalRootDistribution, p: float) -> float:
    return distribution.quantile(p)


def subsampling_ci(
    theta_hat: float,
    distribution: EmpiricalRootDistribution,
    alpha: float,
    scaling: RootScaling,
    n_effective: int,
) -> ConfidenceInterval:
    """Equal-tailed two-sided interval from the root quantiles.

    ``[theta_hat - q(1 - alpha/2)/a_T, theta_hat - q(alpha/2)/a_T]`` with
    ``a_T`` evaluated at the effective (truncated) length.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    a_t = scaling.rate(n_effective)
    lower = theta_hat - distribution.quantile(1.0 - alpha / 2.0) / a_t
    upper = theta_hat - distribution.quantile(alpha / 2.0) / a_t
    return ConfidenceInterval(float(lower), float(upper))


def variance_estimator(stats, scaling: RootScaling, plan: SkipSamplePlan) -> VarianceEstimate:
    """Scaled dispersion of the skip-sample statistics:
    ``(a_b**2 / q) * sum_j (stat_j - mean)**2``."""
    values = _statistic_values(stats, plan)
    a_b = scaling.rate(plan.block_length)
    v_hat = float(a_b**2 * np.mean((values - values.mean()) ** 2))
    return VarianceEstimate(v_hat=v_hat, q=values.size, scaling=scaling, corrected=False)


def normal_ci(
    theta_hat: float,
    variance: VarianceEstimate,
    alpha: float,
    n_effective: int,
    scaling: RootScaling,
) -> ConfidenceInterval:
    """Normal-quantile interval ``theta_hat +- z_{1-alpha/2} * sqrt(v_hat)/a_T``."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    z = float(ndtri(1.0 - alpha / 2.0))
    half_width = z * math.sqrt(variance.v_hat) / scaling.rate(n_effective)
    return ConfidenceInterval(float(theta_hat - half_width), float(theta_hat + half_width))


def hybrid_variance(variance: VarianceEstimate, eta: float, g_fhat_mean: float) -> VarianceEstimate:
    """Add the kurtosis term ``(eta - 3) * g_fhat_mean**2`` that skip-sampling
    alone cannot capture for non-Gaussian linear processes.

    A negative corrected value is clipped to zero with a warning; with
    ``eta = 3`` (Gaussian innovations) or a vanishing plug-in spectral mean
    the estimate is returned unchanged apart from the ``corrected`` flag.
    """
    if eta < 1.0:
        raise ValueError(f"kurtosis must be at least 1, got {eta}")
    corrected = variance.v_hat + (float(eta) - 3.0) * float(g_fhat_mean) ** 2
    if corrected < 0.0:
        warnings.warn(
            f"hybrid correction produced negative variance {corrected:.3e}; clipping to 0",
            NumericsWarning,
            stacklevel=2,
        )
        corrected = 0.0
    return VarianceEstimate(corrected, variance.q, variance.scaling, corrected=True)


def default_bandwidth(n: int) -> int:
    """Lag-window bandwidth used when the caller does not choose one."""
    return max(1, int(math.floor(n ** (1.0 / 3.0))))


def plug_in_spectral_mean_fhat(x, g: SpectralFunctional, bandwidth: int) -> float:
    """Spectral mean of ``g`` against a triangular lag-window density estimate.

    The density estimate is
    ``fhat(lam) = sum_{|k| <= bandwidth} (1 - |k|/(bandwidth+1)) * acov_k * exp(-1j*k*lam)``
    and the integral uses the same Riemann sum over the centered Fourier grid
    as the full-sample spectral mean.
    """
    x = as_time_series(x)
    n = x.size
    bandwidth = int(bandwidth)
    if not 1 <= bandwidth < n:
        raise ValueError(f"bandwidth must satisfy 1 <= bandwidth < {n}, got {bandwidth}")
    centered = x - x.mean()
    acov = np.array([centered[: n - k] @ centered[k:] for k in range(bandwidth + 1)]) / n
    weights = 1.0 - np.arange(bandwidth + 1) / (bandwidth + 1.0)
    # The grid sum n**-1 * sum_ell g(lam_ell) exp(-1j*k*lam_ell) for all lags k
    # at once is a fast transform of g's grid values.
    ell = frequency_indices(n)
    spread = np.zeros(n, dtype=complex)
    spread[np.mod(ell, n)] = g(TWO_PI * ell / n)
    g_coeffs = np.fft.fft(spread) / n
    total = weights[0] * acov[0] * g_coeffs[0] + np.sum(
        (weights[1:] * acov[1:]) * (g_coeffs[1 : bandwidth + 1] + g_coeffs[n - bandwidth : n][::-1])
    )
    return real_part(complex(total), "plug-in spectral mean")
