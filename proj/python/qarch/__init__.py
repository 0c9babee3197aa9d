"""Quadratic ARCH volatility forecasts, realized innovations and stability tests."""

from ._core import (  # noqa: F401
    DataError,
    InsufficientDataError,
    InvalidParameterError,
    KernelWeights,
    MomentSummary,
    SimulatedPath,
    TestReport,
    TestResult,
    analyze,
    ema_weights,
    horizon_innovations,
    implied_sigma_inf_factor,
    innovations,
    linear_variance,
    lm_arch_weights,
    mean_test,
    moments,
    normal_cdf,
    parse_kernel_spec,
    published_report,
    replica_seed,
    rma_weights,
    simulate,
    student_kurtosis,
    var_eps_squared,
    variance_test,
    volatility_doubling_time,
)

__version__ = "0.1.0"
