"""Frequency-domain subsampling of the discrete Fourier transform.

The length-T transform of a stationary series is split into q interleaved
subvectors of length b; statistics recomputed on each subvector behave like
independent small-sample copies, and their centered, scaled dispersion yields
variance estimates and confidence intervals for spectral means and ratio
statistics.
"""

from .dft import (
    DftVector,
    Periodogram,
    SkipSamplePlan,
    compute_dft,
    frequency_indices,
    has_symmetry_property,
    interleave_reconstruct,
    inverse_dft,
    make_plan,
    periodogram_at_fourier,
    sample_autocovariance,
    skip_sample_extract,
    symmetrize,
)
from .estimator import SkipSamplingEstimator, auto_block_length
from .exceptions import (
    DegenerateStatisticError,
    InsufficientSubsamplesError,
    NonstationaryProcessError,
    NumericsWarning,
    QuadratureError,
)
from .functionals import RatioSpec, SpectralFunctional, StatisticSpec
from .inference import (
    ConfidenceInterval,
    EmpiricalRootDistribution,
    RootScaling,
    VarianceEstimate,
    build_roots,
    cdf,
    default_bandwidth,
    hybrid_variance,
    normal_ci,
    plug_in_spectral_mean_fhat,
    quantile,
    subsampling_ci,
    variance_estimator,
)
from .simulate import (
    AnalyticSpectrum,
    LinearProcessSpec,
    MonteCarloConfig,
    ar1_process,
    ar1_spectrum,
    asymptotic_variance_ratio,
    asymptotic_variance_spectral_mean,
    generate,
    process_autocovariance,
    process_spectrum,
    run_coverage,
    run_covariance_decay,
    run_variance_consistency,
    spectral_mean_of,
    spectrum_from_psi,
    true_parameter,
    white_noise,
)
from .statistics import (
    StatisticValue,
    ratio_full,
    ratio_skip,
    skip_ratio_statistics,
    skip_spectral_means,
    spectral_mean_full,
    spectral_mean_skip,
)

__version__ = "0.1.0"

__all__ = [
    "AnalyticSpectrum",
    "ConfidenceInterval",
    "DegenerateStatisticError",
    "DftVector",
    "EmpiricalRootDistribution",
    "InsufficientSubsamplesError",
    "LinearProcessSpec",
    "MonteCarloConfig",
    "NonstationaryProcessError",
    "NumericsWarning",
    "Periodogram",
    "QuadratureError",
    "RatioSpec",
    "RootScaling",
    "SkipSamplePlan",
    "SkipSamplingEstimator",
    "SpectralFunctional",
    "StatisticSpec",
    "StatisticValue",
    "VarianceEstimate",
    "ar1_process",
    "ar1_spectrum",
    "asymptotic_variance_ratio",
    "asymptotic_variance_spectral_mean",
    "auto_block_length",
    "build_roots",
    "cdf",
    "compute_dft",
    "default_bandwidth",
    "frequency_indices",
    "generate",
    "has_symmetry_property",
    "hybrid_variance",
    "interleave_reconstruct",
    "inverse_dft",
    "make_plan",
    "normal_ci",
    "periodogram_at_fourier",
    "plug_in_spectral_mean_fhat",
    "process_autocovariance",
    "process_spectrum",
    "quantile",
    "ratio_full",
    "ratio_skip",
    "run_coverage",
    "run_covariance_decay",
    "run_variance_consistency",
    "sample_autocovariance",
    "skip_ratio_statistics",
    "skip_sample_extract",
    "skip_spectral_means",
    "spectral_mean_full",
    "spectral_mean_of",
    "spectral_mean_skip",
    "spectrum_from_psi",
    "subsampling_ci",
    "symmetrize",
    "true_parameter",
    "variance_estimator",
    "white_noise",
]
