"""Exact MISE analysis of kernel distribution function estimators.

The kernel estimator F_nh(x) = n^-1 sum_j K((x - X_j)/h) of a CDF F has
a mean integrated squared error with exact Fourier-domain expressions
for its variance and squared-bias parts.  This package evaluates them
for a catalog of kernels (normal, trapezoidal flat-top, sinc) and
targets (a band-limited polynomial-tail family and the normal family),
locates MISE-minimizing bandwidths, reproduces the limiting bandwidth
and efficiency results for band-limited targets, and validates every
formula against a seeded Monte Carlo oracle.
"""

from .bandwidth import (
    BandwidthResult,
    EfficiencyCurve,
    SandwichReport,
    SearchConfig,
    asymptotic_relative_efficiency,
    bandwidth_sandwich_check,
    default_search,
    efficiency_curve,
    limit_bandwidth,
    optimal_bandwidth,
    relative_efficiency,
    sinc_critical_bandwidths,
)
from .distributions import (
    JDLVP_PSI_F,
    TargetDistribution,
    make_jdlvp,
    make_normal,
    psi_f_fourier,
    rescale,
    sample,
)
from .estimator import (
    MonteCarloMise,
    Sample,
    draw_sample,
    estimate_cdf,
    ise,
    monte_carlo_mise,
)
from .kernels import (
    KERNEL_NAMES,
    Kernel,
    kernel_by_name,
    make_normal_kernel,
    make_sinc_kernel,
    make_trapezoidal_superkernel,
    psi_k,
)
from .mise import (
    MISE_METHODS,
    MiseReport,
    isb_fourier,
    isb_space_oracle,
    iv_fourier,
    iv_space_oracle,
    mise,
    mise_normal_normal_closed,
    mise_normal_sinc_closed,
    mise_sinc_fourier,
)
from .numerics import (
    DEFAULT_QUADRATURE,
    QuadratureConfig,
    QuadratureResult,
    integrate,
    sine_integral,
    std_normal_cdf,
)

__version__ = "0.1.0"

__all__ = [
    "BandwidthResult",
    "DEFAULT_QUADRATURE",
    "EfficiencyCurve",
    "JDLVP_PSI_F",
    "KERNEL_NAMES",
    "Kernel",
    "MISE_METHODS",
    "MiseReport",
    "MonteCarloMise",
    "QuadratureConfig",
    "QuadratureResult",
    "Sample",
    "SandwichReport",
    "SearchConfig",
    "TargetDistribution",
    "asymptotic_relative_efficiency",
    "bandwidth_sandwich_check",
    "default_search",
    "draw_sample",
    "efficiency_curve",
    "estimate_cdf",
    "integrate",
    "isb_fourier",
    "isb_space_oracle",
    "ise",
    "iv_fourier",
    "iv_space_oracle",
    "kernel_by_name",
    "limit_bandwidth",
    "make_jdlvp",
    "make_normal",
    "make_normal_kernel",
    "make_sinc_kernel",
    "make_trapezoidal_superkernel",
    "mise",
    "mise_normal_normal_closed",
    "mise_normal_sinc_closed",
    "mise_sinc_fourier",
    "monte_carlo_mise",
    "optimal_bandwidth",
    "psi_f_fourier",
    "psi_k",
    "relative_efficiency",
    "rescale",
    "sample",
    "sine_integral",
    "sinc_critical_bandwidths",
    "std_normal_cdf",
]
