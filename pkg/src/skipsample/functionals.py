"""Weight functions on [-pi, pi] and declarative statistic specifications."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

STATISTIC_NAMES = ("variance", "autocovariance", "autocorrelation", "custom")


class SpectralFunctional:
    """A bounded weight function ``g`` on ``[-pi, pi]``.

    Provides the reflection ``g(-lam)`` and the even part
    ``g(lam) + g(-lam)`` used by skip-sample statistics.  ``fn`` should be
    vectorized over numpy arrays; scalar-only callables are evaluated
    elementwise as a fallback.
    """

    def __init__(self, fn: Callable, name: str | None = None):
        self.fn = fn
        self.name = name

    def __call__(self, lam):
        lam = np.asarray(lam, dtype=float)
        try:
            out = np.asarray(self.fn(lam))
            if out.shape != lam.shape:
                raise ValueError
        except (TypeError, ValueError):
            flat = np.atleast_1d(lam).ravel()
            out = np.asarray([self.fn(v) for v in flat]).reshape(lam.shape)
        return out

    def reflected(self, lam):
        """``g(-lam)``, the reflection about the vertical axis."""
        return self(-np.asarray(lam, dtype=float))

    def symmetrized(self, lam):
        """``g(lam) + g(-lam)``; always an even function of ``lam``."""
        return self(lam) + self.reflected(lam)

    def __repr__(self):
        return f"SpectralFunctional({self.name or self.fn!r})"

    @classmethod
    def constant(cls, value: float = 1.0) -> "SpectralFunctional":
        return cls(lambda lam, v=float(value): np.full_like(lam, v), name=f"const({value})")

    @classmethod
    def cosine_lag(cls, k: int) -> "SpectralFunctional":
        """``cos(k*lam)``: the real weight whose spectral mean is the lag-k autocovariance."""
        k = int(k)
        return cls(lambda lam: np.cos(k * lam), name=f"cos({k}w)")

    @classmethod
    def complex_exponential(cls, k: int) -> "SpectralFunctional":
        """``exp(1j*k*lam)``; equivalent to :meth:`cosine_lag` inside every even sum."""
        k = int(k)
        return cls(lambda lam: np.exp(1j * k * lam), name=f"exp({k}iw)")

    @classmethod
    def trig_polynomial(cls, cos_coefficients=(), sin_coefficients=()) -> "SpectralFunctional":
        """Real trigonometric polynomial ``sum_r c_r cos(r*lam) + sum_r s_r sin(r*lam)``.

        Cosine coefficients are indexed from ``r = 0`` (constant term), sine
        coefficients from ``r = 1``.
        """
        cos_c = np.asarray(cos_coefficients, dtype=float)
        sin_c = np.asarray(sin_coefficients, dtype=float)
        if cos_c.size == 0 and sin_c.size == 0:
            raise ValueError("a trigonometric polynomial needs at least one coefficient")

        def fn(lam):
            lam = np.asarray(lam, dtype=float)
            out = np.zeros_like(lam)
            for r, c in enumerate(cos_c):
                out = out + c * np.cos(r * lam)
            for r, s in enumerate(sin_c, start=1):
                out = out + s * np.sin(r * lam)
            return out

        return cls(fn, name="trig-polynomial")


@dataclass(frozen=True)
class RatioSpec:
    """Numerator and denominator weights of a ratio statistic."""

    numerator: SpectralFunctional
    denominator: SpectralFunctional

    @classmethod
    def autocorrelation(cls, k: int) -> "RatioSpec":
        """Lag-``k`` autocorrelation: ``p = cos(k*lam)``, ``m = 1``."""
        return cls(SpectralFunctional.cosine_lag(k), SpectralFunctional.constant(1.0))


@dataclass(frozen=True)
class StatisticSpec:
    """Declarative description of a named statistic.

    Serializable (so Monte Carlo configs and CLI requests round-trip through
    JSON) and buildable into the weight objects consumed by the estimators.
    """

    name: str = "variance"
    k: int = 1
    cos_coefficients: tuple = field(default=())
    sin_coefficients: tuple = field(default=())

    def __post_init__(self):
        if self.name not in STATISTIC_NAMES:
            raise ValueError(f"unknown statistic {self.name!r}; expected one of {STATISTIC_NAMES}")
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(self, "cos_coefficients", tuple(float(c) for c in self.cos_coefficients))
        object.__setattr__(self, "sin_coefficients", tuple(float(s) for s in self.sin_coefficients))
        if self.k < 0:
            raise ValueError("lag k must be nonnegative")
        if self.name == "custom" and not (self.cos_coefficients or self.sin_coefficients):
            raise ValueError("custom statistic needs cosine or sine coefficients")

    @property
    def kind(self) -> str:
        """'ratio' for autocorrelation, otherwise 'spectral-mean'."""
        return "ratio" if self.name == "autocorrelation" else "spectral-mean"

    def weight(self) -> SpectralFunctional:
        """The spectral-mean weight (only for spectral-mean kinds)."""
        if self.name == "variance":
            return SpectralFunctional.constant(1.0)
        if self.name == "autocovariance":
            return SpectralFunctional.cosine_lag(self.k)
        if self.name == "custom":
            return SpectralFunctional.trig_polynomial(self.cos_coefficients, self.sin_coefficients)
        raise ValueError(f"{self.name} is a ratio statistic; use ratio()")

    def ratio(self) -> RatioSpec:
        """The ratio weights (only for the ratio kind)."""
        if self.name != "autocorrelation":
            raise ValueError(f"{self.name} is not a ratio statistic")
        return RatioSpec.autocorrelation(self.k)

    def to_dict(self) -> dict:
        out = {"name": self.name}
        if self.name in ("autocovariance", "autocorrelation"):
            out["k"] = self.k
        if self.name == "custom":
            out["cos"] = list(self.cos_coefficients)
            out["sin"] = list(self.sin_coefficients)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "StatisticSpec":
        return cls(
            name=data.get("name", "variance"),
            k=data.get("k", 1),
            cos_coefficients=tuple(data.get("cos", ())),
            sin_coefficients=tuple(data.get("sin", ())),
        )
