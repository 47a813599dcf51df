"""Input validation helpers used by the public API."""

from __future__ import annotations

import numpy as np


def as_time_series(values) -> np.ndarray:
    """Coerce ``values`` to a 1-D float array of length >= 1 with finite entries."""
    x = np.asarray(values, dtype=float)
    if x.ndim != 1:
        x = np.ravel(x)
    if x.size < 1:
        raise ValueError("time series must contain at least one observation")
    if not np.all(np.isfinite(x)):
        raise ValueError("time series entries must be finite")
    return x


def as_complex_vector(values) -> np.ndarray:
    """Coerce ``values`` to a 1-D complex array of length >= 1 with finite entries."""
    z = np.asarray(values, dtype=complex)
    if z.ndim != 1:
        z = np.ravel(z)
    if z.size < 1:
        raise ValueError("vector must contain at least one entry")
    if not np.all(np.isfinite(z)):
        raise ValueError("vector entries must be finite")
    return z
