"""Discrete Fourier transform in the centered-frequency convention.

The transform of a length-``T`` series is stored at the Fourier frequencies
``2*pi*ell/T`` with the integer index ``ell`` running from ``[T/2] - T + 1``
up to ``[T/2]`` (``[.]`` is integer part).  Entry ``k`` (1-based) of the
stored vector corresponds to ``ell = [T/2] - T + k``, so the grid is centered
with the zero frequency in the middle rather than first.  All symmetry
bookkeeping below (conjugate reversal for real input, symmetrization of
arbitrary complex vectors, skip-sample extraction) is stated in this order.

The transform itself is unitary:

    entry(ell) = T**-0.5 * sum_{t=1..T} x_t * exp(-1j * t * 2*pi*ell/T)

Note the time index starts at 1, which introduces one extra phase twiddle
relative to the usual FFT definition.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._validation import as_complex_vector, as_time_series

TWO_PI = 2.0 * np.pi


def frequency_indices(n: int) -> np.ndarray:
    """Integer frequency indices of a length-``n`` transform, in storage order."""
    half = n // 2
    return np.arange(half - n + 1, half + 1)


def zero_frequency_position(n: int) -> int:
    """0-based storage position of the zero frequency."""
    return n - n // 2 - 1


def index_positions(n: int, ell) -> np.ndarray:
    """Map frequency indices ``ell`` (any integers, interpreted modulo ``n``)
    to 0-based storage positions."""
    offset = n // 2 - n + 1
    return np.mod(np.asarray(ell) - offset, n)


@dataclass(frozen=True)
class DftVector:
    """Complex transform values in the centered-frequency storage order.

    Attributes
    ----------
    entries : ndarray
        Complex values; ``entries[k - 1]`` sits at frequency index
        ``[n/2] - n + k``.
    """

    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "entries", as_complex_vector(self.entries))

    @property
    def n(self) -> int:
        return self.entries.size

    @property
    def frequency_indices(self) -> np.ndarray:
        return frequency_indices(self.n)

    @property
    def frequencies(self) -> np.ndarray:
        """Fourier frequencies ``2*pi*ell/n`` in storage order."""
        return TWO_PI * frequency_indices(self.n) / self.n

    def __len__(self) -> int:
        return self.entries.size


@dataclass(frozen=True)
class SkipSamplePlan:
    """Partition of a frequency grid into interleaved coarse grids.

    A plan splits the ``n_effective = block_length * n_subsamples`` stored
    transform entries into ``n_subsamples`` subvectors of length
    ``block_length``; subvector ``j`` collects the entries at 1-based
    positions ``j, q + j, ..., (b - 1) * q + j``.  When ``block_length``
    does not divide ``n_total``, the trailing ``n_total - n_effective``
    observations are dropped before transforming.
    """

    n_total: int
    block_length: int
    n_subsamples: int
    n_effective: int

    def __post_init__(self):
        if self.block_length < 2:
            raise ValueError("block length must be at least 2")
        if self.block_length > self.n_total:
            raise ValueError("block length cannot exceed the series length")
        if self.block_length * self.n_subsamples != self.n_effective:
            raise ValueError("inconsistent plan: b * q must equal the effective length")
        if not (self.n_total - self.block_length < self.n_effective <= self.n_total):
            raise ValueError("inconsistent plan: effective length violates the truncation rule")


def make_plan(n_total: int, block_length: int) -> SkipSamplePlan:
    """Build the skip-sampling plan for a series of length ``n_total``.

    ``n_subsamples`` is ``floor(n_total / block_length)``; observations past
    ``block_length * n_subsamples`` are ignored downstream.

    Raises
    ------
    ValueError
        If ``block_length < 2`` or ``block_length > n_total``.
    """
    n_total = int(n_total)
    block_length = int(block_length)
    if block_length < 2 or block_length > n_total:
        raise ValueError(
            f"block length must satisfy 2 <= b <= {n_total}, got {block_length}"
        )
    q = n_total // block_length
    return SkipSamplePlan(n_total, block_length, q, block_length * q)


def compute_dft(x) -> DftVector:
    """Unitary transform of a real series, in centered storage order.

    Uses a fast transform internally and re-orders (plus phase-corrects for
    the time origin at ``t = 1``) to the centered convention.

    Parameters
    ----------
    x : array_like
        Real observations, length >= 1.

    Returns
    -------
    DftVector
    """
    x = as_time_series(x)
    n = x.size
    ell = frequency_indices(n)
    coeffs = np.fft.fft(x)
    phase = np.exp(-1j * TWO_PI * ell / n)
    return DftVector(phase * coeffs[np.mod(ell, n)] / np.sqrt(n))


def inverse_dft(z) -> np.ndarray:
    """Invert the transform; the round trip with :func:`compute_dft` is the identity.

    The output is complex in general.  It is real (up to rounding) exactly
    when the input satisfies the conjugate-reversal symmetry checked by
    :func:`has_symmetry_property`; callers that need a real series from an
    arbitrary complex vector should :func:`symmetrize` first.
    """
    entries = z.entries if isinstance(z, DftVector) else as_complex_vector(z)
    n = entries.size
    spread = np.zeros(n, dtype=complex)
    spread[np.mod(frequency_indices(n), n)] = entries
    t = np.arange(1, n + 1)
    return np.sqrt(n) * np.fft.ifft(spread)[np.mod(t, n)]


def has_symmetry_property(z, tol: float) -> bool:
    """Check the conjugate-reversal structure of a real series' transform.

    For odd length the reversed vector must equal the conjugate vector and
    the middle entry must be real; for even length the reversal is composed
    with a one-step upward cyclic shift, and the entries at positions
    ``n/2`` and ``n`` (1-based) must be real.  All checks are entrywise
    within ``tol``.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    entries = z.entries if isinstance(z, DftVector) else as_complex_vector(z)
    n = entries.size
    conj = np.conj(entries)
    if n % 2 == 1:
        if np.max(np.abs(entries[::-1] - conj)) > tol:
            return False
        return abs(entries[n // 2].imag) <= tol
    shifted = np.empty_like(entries)
    shifted[: n - 1] = entries[n - 2 :: -1]
    shifted[n - 1] = entries[n - 1]
    if np.max(np.abs(shifted - conj)) > tol:
        return False
    return abs(entries[n // 2 - 1].imag) <= tol and abs(entries[n - 1].imag) <= tol


def symmetrize(z) -> DftVector:
    """Minimally edit a complex vector so it gains the conjugate-reversal symmetry.

    Odd length ``b``: the first ``[b/2]`` entries are replaced by the
    conjugates of the first ``[b/2]`` entries of the reversed vector, and the
    imaginary part of the middle entry is discarded.  Even length: entries
    ``1 .. b/2 - 1`` are replaced by the conjugates of entries ``b - 1`` down
    to ``b/2 + 1``, and the imaginary parts of entries ``b/2`` and ``b`` are
    discarded.  Realness is enforced by construction (imaginary parts set to
    zero), so the output passes :func:`has_symmetry_property` at any positive
    tolerance, and a vector that already has the symmetry is returned
    entrywise unchanged.
    """
    entries = z.entries if isinstance(z, DftVector) else as_complex_vector(z)
    out = entries.copy()
    b = out.size
    h = b // 2
    if b % 2 == 1:
        out[:h] = np.conj(entries[::-1][:h])
        out[h] = entries[h].real
    else:
        if h >= 2:
            out[: h - 1] = np.conj(entries[b - 2 : h - 1 : -1])
        out[h - 1] = entries[h - 1].real
        out[b - 1] = entries[b - 1].real
    return DftVector(out)


def skip_sample_extract(z, plan: SkipSamplePlan, j: int) -> np.ndarray:
    """Entries of the ``j``-th skip-sample: stored positions ``j, q + j, ..., (b-1)q + j``.

    Parameters
    ----------
    z : DftVector or array_like
        Transform of the truncated series; its length must equal
        ``plan.n_effective``.
    plan : SkipSamplePlan
    j : int
        Offset in ``1..plan.n_subsamples``.
    """
    entries = z.entries if isinstance(z, DftVector) else as_complex_vector(z)
    if entries.size != plan.n_effective:
        raise ValueError(
            f"expected a transform of length {plan.n_effective}, got {entries.size}"
        )
    q = plan.n_subsamples
    if not 1 <= j <= q:
        raise ValueError(f"skip index j must lie in 1..{q}, got {j}")
    idx = (j - 1) + q * np.arange(plan.block_length)
    return entries[idx].copy()


def interleave_reconstruct(parts, plan: SkipSamplePlan) -> DftVector:
    """Reassemble the full transform from all skip-samples (exact inverse of extraction)."""
    parts = list(parts)
    if len(parts) != plan.n_subsamples:
        raise ValueError(
            f"expected {plan.n_subsamples} skip-samples, got {len(parts)}"
        )
    out = np.empty(plan.n_effective, dtype=complex)
    for j, part in enumerate(parts, start=1):
        part = as_complex_vector(part)
        if part.size != plan.block_length:
            raise ValueError(
                f"skip-sample {j} has length {part.size}, expected {plan.block_length}"
            )
        out[j - 1 :: plan.n_subsamples] = part
    return DftVector(out)


def sample_autocovariance(x, k: int) -> float:
    """Biased-normalization sample autocovariance at lag ``k`` (even in ``k``).

    ``T**-1 * sum_{t=1}^{T-|k|} (x_t - mean)(x_{t+|k|} - mean)``.
    """
    x = as_time_series(x)
    k = abs(int(k))
    n = x.size
    if k >= n:
        raise ValueError(f"lag must satisfy |k| <= {n - 1}, got {k}")
    centered = x - x.mean()
    return float(centered[: n - k] @ centered[k:]) / n


@dataclass(frozen=True)
class Periodogram:
    """Squared transform magnitudes on the centered grid, with the zero bin pinned to 0.

    ``values[pos]`` is the periodogram at the frequency index stored at
    ``pos``; :meth:`at_index` resolves arbitrary integer frequency indices
    modulo the grid length, so frequencies outside ``(-pi, pi]`` alias onto
    the stored ones.
    """

    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1 or vals.size < 2:
            raise ValueError("periodogram needs at least two values")
        if np.any(vals < 0) or not np.all(np.isfinite(vals)):
            raise ValueError("periodogram values must be finite and nonnegative")
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def frequency_indices(self) -> np.ndarray:
        return frequency_indices(self.n)

    def at_index(self, ell) -> np.ndarray:
        """Periodogram at frequency index ``ell`` (scalar or array), modulo the grid."""
        return self.values[index_positions(self.n, ell)]


def periodogram_at_fourier(x) -> Periodogram:
    """Periodogram of ``x`` on the centered Fourier grid.

    At a nonzero Fourier frequency the value equals the squared modulus of the
    corresponding transform entry; the zero-frequency value is exactly 0 (the
    mean term is removed by convention).
    """
    x = as_time_series(x)
    if x.size < 2:
        raise ValueError("periodogram needs at least two observations")
    z = compute_dft(x)
    vals = np.abs(z.entries) ** 2
    vals[zero_frequency_position(x.size)] = 0.0
    return Periodogram(vals)
