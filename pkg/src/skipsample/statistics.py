"""Full-sample and skip-sample spectral means and ratio statistics.

The full-sample spectral mean is the Riemann sum
``T**-1 * sum_ell g(2*pi*ell/T) * I(2*pi*ell/T)`` over the centered index
range; the zero-frequency term contributes nothing because the periodogram
is 0 there.  The ``j``-th skip-sample version sums the even part of ``g``
on the coarse grid ``2*pi*ell/b`` for ``ell = 1 .. [b/2]`` against the
periodogram displaced to ``2*pi*ell/b + 2*pi*j/T``, which are exact fine-grid
frequencies with index ``ell*q + j`` (read modulo ``T``).  Throughout the
skip-sample formulas, ``T`` means the effective (truncated) length.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from ._validation import as_time_series
from .dft import (
    TWO_PI,
    Periodogram,
    SkipSamplePlan,
    frequency_indices,
    index_positions,
    periodogram_at_fourier,
)
from .exceptions import DegenerateStatisticError, NumericsWarning
from .functionals import RatioSpec, SpectralFunctional

DEGENERATE_RATIO_RTOL = 1e-12


@dataclass(frozen=True)
class StatisticValue:
    """A computed statistic, tagged with the skip-sample plan when applicable."""

    value: float
    kind: str
    plan: SkipSamplePlan | None = None
    j: int | None = None

    def __post_init__(self):
        if not np.isfinite(self.value):
            raise ValueError("statistic value must be finite")
        if (self.plan is None) != (self.j is None):
            raise ValueError("plan and skip index must be supplied together")


def real_part(value: complex, context: str) -> float:
    """Discard the imaginary part of a spectral sum, warning if it is not noise.

    For complex weights such as ``exp(1j*k*lam)`` the imaginary part cancels
    analytically over the symmetric frequency grid; anything beyond rounding
    noise indicates a weight whose real-part convention loses information.
    """
    value = complex(value)
    if abs(value.imag) > 1e-8 * abs(value.real):
        warnings.warn(
            f"{context}: discarded imaginary part {value.imag:.3e} "
            f"(real part {value.real:.3e})",
            NumericsWarning,
            stacklevel=3,
        )
    return value.real


def _full_grid_sum(pgram: Periodogram, g: SpectralFunctional) -> complex:
    lam = TWO_PI * frequency_indices(pgram.n) / pgram.n
    return complex(np.sum(g(lam) * pgram.values))


def _coarse_frequencies(block_length: int) -> np.ndarray:
    return TWO_PI * np.arange(1, block_length // 2 + 1) / block_length


def _skip_positions(plan: SkipSamplePlan) -> np.ndarray:
    """(q, [b/2]) matrix of periodogram storage positions for every skip offset."""
    q = plan.n_subsamples
    ell = np.arange(1, plan.block_length // 2 + 1)
    j = np.arange(1, q + 1)
    return index_positions(plan.n_effective, ell[None, :] * q + j[:, None])


def _truncated_periodogram(x, plan: SkipSamplePlan) -> Periodogram:
    x = as_time_series(x)
    if x.size < plan.n_effective:
        raise ValueError(
            f"series has {x.size} observations, plan needs {plan.n_effective}"
        )
    return periodogram_at_fourier(x[: plan.n_effective])


def spectral_mean_full(x, g: SpectralFunctional) -> StatisticValue:
    """Riemann-sum estimate of the spectral mean of ``g`` over the full grid.

    With ``g = cos(k*lam)`` (or ``exp(1j*k*lam)``) this reproduces, exactly,
    the lag-``k`` sample autocovariance plus its alias at lag ``T - k``.
    """
    pgram = periodogram_at_fourier(x)
    value = real_part(_full_grid_sum(pgram, g) / pgram.n, "spectral mean")
    return StatisticValue(value, "spectral-mean")


def skip_spectral_means(x, g: SpectralFunctional, plan: SkipSamplePlan) -> np.ndarray:
    """All ``q`` skip-sample spectral means at once (shared periodogram)."""
    pgram = _truncated_periodogram(x, plan)
    weights = g.symmetrized(_coarse_frequencies(plan.block_length))
    sums = pgram.values[_skip_positions(plan)] @ weights / plan.block_length
    return np.array(
        [real_part(v, f"skip spectral mean j={j}") for j, v in enumerate(sums, start=1)]
    )


def spectral_mean_skip(x, g: SpectralFunctional, plan: SkipSamplePlan, j: int) -> StatisticValue:
    """The ``j``-th skip-sample spectral mean.

    Sums ``g(lam) + g(-lam)`` over the coarse frequencies ``2*pi*ell/b``,
    ``ell = 1 .. [b/2]`` (the zero-frequency term is excluded), against the
    periodogram of the truncated series at the displaced frequencies.
    """
    q = plan.n_subsamples
    if not 1 <= int(j) <= q:
        raise ValueError(f"skip index j must lie in 1..{q}, got {j}")
    j = int(j)
    pgram = _truncated_periodogram(x, plan)
    lam = _coarse_frequencies(plan.block_length)
    ell = np.arange(1, plan.block_length // 2 + 1)
    displaced = pgram.at_index(ell * q + j)
    total = np.sum(g.symmetrized(lam) * displaced) / plan.block_length
    value = real_part(total, f"skip spectral mean j={j}")
    return StatisticValue(value, "spectral-mean", plan, j)


def _denominator_floor(x: np.ndarray, weights) -> float:
    """Absolute scale below which a denominator sum is indistinguishable from
    transform rounding noise (relevant for numerically constant input, whose
    off-zero periodogram bins hold junk of order ``(eps * T * rms)**2``)."""
    n = x.size
    rms = float(np.sqrt(np.mean(x * x)))
    wmax = float(np.max(np.abs(weights))) if np.size(weights) else 1.0
    return (np.finfo(float).eps * n * rms) ** 2 * max(1.0, wmax)


def _checked_ratio(num: float, den: float, floor: float, context: str) -> float:
    if den == 0.0 or abs(den) < DEGENERATE_RATIO_RTOL * abs(num) or abs(den) <= floor:
        raise DegenerateStatisticError(
            f"{context}: denominator {den:.3e} is degenerate relative to numerator {num:.3e}"
        )
    return num / den


def ratio_full(x, spec: RatioSpec) -> StatisticValue:
    """Ratio of the two weighted periodogram sums over the full grid."""
    x = as_time_series(x)
    pgram = periodogram_at_fourier(x)
    lam = TWO_PI * frequency_indices(pgram.n) / pgram.n
    num = real_part(complex(np.sum(spec.numerator(lam) * pgram.values)), "ratio numerator")
    den = real_part(complex(np.sum(spec.denominator(lam) * pgram.values)), "ratio denominator")
    floor = _denominator_floor(x, spec.denominator(lam))
    return StatisticValue(_checked_ratio(num, den, floor, "ratio statistic"), "ratio")


def skip_ratio_statistics(x, spec: RatioSpec, plan: SkipSamplePlan) -> np.ndarray:
    """All ``q`` skip-sample ratio statistics at once (shared periodogram)."""
    x = as_time_series(x)
    pgram = _truncated_periodogram(x, plan)
    lam = _coarse_frequencies(plan.block_length)
    table = pgram.values[_skip_positions(plan)]
    wm = spec.denominator.symmetrized(lam)
    nums = table @ spec.numerator.symmetrized(lam) / plan.block_length
    dens = table @ wm / plan.block_length
    floor = _denominator_floor(x[: plan.n_effective], wm)
    out = np.empty(plan.n_subsamples)
    for i in range(plan.n_subsamples):
        num = real_part(nums[i], f"skip ratio numerator j={i + 1}")
        den = real_part(dens[i], f"skip ratio denominator j={i + 1}")
        out[i] = _checked_ratio(num, den, floor, f"skip ratio statistic j={i + 1}")
    return out


def ratio_skip(x, spec: RatioSpec, plan: SkipSamplePlan, j: int) -> StatisticValue:
    """The ``j``-th skip-sample ratio statistic (same displaced grid as the means)."""
    x = as_time_series(x)
    num = spectral_mean_skip(x, spec.numerator, plan, j)
    den = spectral_mean_skip(x, spec.denominator, plan, j)
    lam = _coarse_frequencies(plan.block_length)
    floor = _denominator_floor(x[: plan.n_effective], spec.denominator.symmetrized(lam))
    value = _checked_ratio(num.value, den.value, floor, f"skip ratio statistic j={j}")
    return StatisticValue(value, "ratio", plan, int(j))
