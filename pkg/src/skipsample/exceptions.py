"""Exception and warning types shared across the package."""


class DegenerateStatisticError(ValueError):
    """The ratio denominator vanished; the statistic is undefined on this sample."""


class InsufficientSubsamplesError(ValueError):
    """Fewer than two skip-samples are available; dispersion-based inference needs q >= 2."""


class NonstationaryProcessError(ValueError):
    """Process parameters lie outside the stationarity region."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class NumericsWarning(UserWarning):
    """A numerical residual was discarded or a value was clipped."""
