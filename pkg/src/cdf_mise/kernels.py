"""Kernel catalog: normal, trapezoidal superkernel, and sinc.

Each kernel carries its density k, integrated form K(x) = int_{-inf}^x k,
Fourier transform phi_k (real-valued, since all built-ins are symmetric),
and the spectral flatness constants

    s_k = inf { t >= 0 : phi_k(t) != 1 },
    t_k = inf { r >= 0 : phi_k(t) != 1 a.e. for t >= r }.

A kernel with s_k > 0 (flat transform near the origin) is a superkernel.
The roughness functional psi(K) = int K(1-K) is computed on the Fourier
side, psi(K) = (2 pi)^-1 int t^-2 {1 - phi_k(t)^2} dt, which is finite
for all built-ins even though the sinc kernel itself is not integrable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .numerics import (
    DEFAULT_QUADRATURE,
    QuadratureConfig,
    integrate,
    sine_integral,
    std_normal_cdf,
)

__all__ = [
    "Kernel",
    "make_normal_kernel",
    "make_trapezoidal_superkernel",
    "make_sinc_kernel",
    "kernel_by_name",
    "psi_k",
    "KERNEL_NAMES",
]

_SQRT2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class Kernel:
    """Immutable kernel descriptor.

    kernel_fn may be None only when the pointwise density is not usable
    as a Lebesgue-integrable function; the built-ins all provide it
    (the sinc density exists pointwise, it just is not integrable, which
    ``integrable=False`` records).  integrated_fn is K; for the
    trapezoidal and sinc kernels K is not monotone but still has limits
    0 and 1 at -/+ infinity.

    ft_knots lists the points where phi_k is not smooth, ft_support_end
    is the frequency beyond which phi_k vanishes identically (inf when
    it never does), and ft_sq_curvature is the limit of
    {1 - phi_k(t)^2} / t^2 as t -> 0, used to evaluate Fourier-side
    integrands at their removable singularity.  psi_k_analytic stores
    the exact roughness constant psi(K); :func:`psi_k` reproduces it by
    quadrature.
    """

    name: str
    kernel_fn: Optional[Callable[[np.ndarray], np.ndarray]]
    integrated_fn: Callable[[np.ndarray], np.ndarray]
    ft: Callable[[np.ndarray], np.ndarray]
    s_k: float
    t_k: float
    integrable: bool
    abs_first_moment_finite: bool
    psi_k_analytic: float
    ft_knots: tuple = field(default=())
    ft_support_end: float = field(default=math.inf)
    ft_sq_curvature: float = field(default=0.0)

    def __post_init__(self) -> None:
        if not (0.0 <= self.s_k <= self.t_k):
            raise ValueError("kernel constants must satisfy 0 <= s_k <= t_k")


def _normal_density(x):
    x = np.asarray(x, dtype=float)
    return np.exp(-0.5 * x * x) / _SQRT2PI


def _normal_ft(t):
    t = np.asarray(t, dtype=float)
    return np.exp(-0.5 * t * t)


def make_normal_kernel() -> Kernel:
    """Standard normal kernel: k = phi, K = Phi, phi_k(t) = exp(-t^2/2)."""
    return Kernel(
        name="normal",
        kernel_fn=_normal_density,
        integrated_fn=std_normal_cdf,
        ft=_normal_ft,
        s_k=0.0,
        t_k=0.0,
        integrable=True,
        abs_first_moment_finite=True,
        psi_k_analytic=1.0 / math.sqrt(math.pi),
        ft_knots=(),
        ft_support_end=math.inf,
        ft_sq_curvature=1.0,
    )


def _trapezoidal_density(x):
    # k(x) = (cos x - cos 2x) / (pi x^2), with the removable value
    # k(0) = 3/(2 pi); the series branch avoids cancellation near 0.
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 1e-3
    xs = np.where(small, 1.0, x)
    direct = (np.cos(xs) - np.cos(2.0 * xs)) / (math.pi * xs * xs)
    series = (1.5 - 0.625 * x * x) / math.pi
    return np.where(small, series, direct)


def _trapezoidal_integrated(x):
    # Antiderivative of k in terms of the sine integral:
    #   K(x) = 1/2 + 2 Si(2x) - Si(x) - (cos x - cos 2x)/(pi x),
    # obtained by integrating (cos x - cos 2x)/(pi x^2) by parts.  The
    # series branch handles the removable point at 0.
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 1e-2
    xs = np.where(small, 1.0, x)
    direct = (
        0.5
        + 2.0 * sine_integral(2.0 * xs)
        - sine_integral(xs)
        - (np.cos(xs) - np.cos(2.0 * xs)) / (math.pi * xs)
    )
    series = 0.5 + (1.5 * x - 0.625 * x ** 3 / 3.0) / math.pi
    out = np.where(small, series, direct)
    return float(out) if out.ndim == 0 else out


def _trapezoidal_ft(t):
    # Flat top on [-1, 1], linear flanks down to 0 at |t| = 2.
    t = np.abs(np.asarray(t, dtype=float))
    out = np.clip(2.0 - t, 0.0, 1.0)
    return float(out) if out.ndim == 0 else out


def make_trapezoidal_superkernel() -> Kernel:
    """Trapezoidal superkernel with s_k = t_k = 1.

    k(x) = (pi x^2)^-1 {cos x - cos 2x}; its transform equals 1 on
    [0, 1], falls linearly to 0 at 2, and vanishes beyond.  K is stored
    in closed form through the sine integral (exact, no interpolation).
    """
    return Kernel(
        name="trapezoidal",
        kernel_fn=_trapezoidal_density,
        integrated_fn=_trapezoidal_integrated,
        ft=_trapezoidal_ft,
        s_k=1.0,
        t_k=1.0,
        integrable=True,
        # int |y k(y)| dy diverges logarithmically (|cos y - cos 2y|/|y|
        # has nonvanishing mean), even though all Fourier-side formulas
        # remain valid for this kernel.
        abs_first_moment_finite=False,
        psi_k_analytic=(4.0 * math.log(2.0) - 2.0) / math.pi,
        ft_knots=(1.0, 2.0),
        ft_support_end=2.0,
        ft_sq_curvature=0.0,
    )


def _sinc_density(x):
    x = np.asarray(x, dtype=float)
    # sin(x)/(pi x) = sinc(x/pi) in numpy's normalization; exact at 0.
    return np.sinc(x / math.pi) / math.pi


def _sinc_integrated(x):
    out = 0.5 + sine_integral(x)
    return out


def _sinc_ft(t):
    t = np.abs(np.asarray(t, dtype=float))
    out = (t <= 1.0).astype(float)
    return float(out) if out.ndim == 0 else out


def make_sinc_kernel() -> Kernel:
    """Sinc kernel: K(x) = 1/2 + Si(x), phi_k = indicator of [-1, 1].

    The density sin(x)/(pi x) is not Lebesgue integrable, so the
    estimator and all formulas use the integrated form directly.
    """
    return Kernel(
        name="sinc",
        kernel_fn=_sinc_density,
        integrated_fn=_sinc_integrated,
        ft=_sinc_ft,
        s_k=1.0,
        t_k=1.0,
        integrable=False,
        abs_first_moment_finite=False,
        psi_k_analytic=1.0 / math.pi,
        ft_knots=(1.0,),
        ft_support_end=1.0,
        ft_sq_curvature=0.0,
    )


KERNEL_NAMES = ("normal", "trapezoidal", "sinc")


def kernel_by_name(name: str) -> Kernel:
    """Look up a built-in kernel: 'normal' | 'trapezoidal' | 'sinc'."""
    table = {
        "normal": make_normal_kernel,
        "trapezoidal": make_trapezoidal_superkernel,
        "sinc": make_sinc_kernel,
    }
    try:
        return table[name]()
    except KeyError:
        raise ValueError(
            f"unknown kernel {name!r}; available: {', '.join(KERNEL_NAMES)}"
        ) from None


def psi_k(kernel: Kernel, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Roughness psi(K) = (2 pi)^-1 int t^-2 {1 - phi_k(t)^2} dt.

    Evaluated over (0, inf) by symmetry.  The integrand vanishes
    identically below s_k, and equals t^-2 beyond the transform's
    support, so the quadrature runs on [s_k, inf) with panels split at
    the transform's knots.
    """
    curv = kernel.ft_sq_curvature

    def integrand(t: float) -> float:
        if t == 0.0:
            return curv
        p = float(kernel.ft(t))
        return (1.0 - p * p) / (t * t)

    res = integrate(integrand, kernel.s_k, math.inf, cfg, points=kernel.ft_knots)
    if not res.converged:
        raise RuntimeError(f"psi_k quadrature failed to converge for {kernel.name}")
    return res.value / math.pi
