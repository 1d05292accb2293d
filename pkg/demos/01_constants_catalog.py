"""Catalog walk: every built-in distribution, kernel, and pair constant.

The library ships closed-form values for the roughness functionals
psi(F) = int F(1-F) and psi(K), the spectral constants (c_f, d_f) and
(s_k, t_k), and the derived pair quantities: the limit bandwidth
s_k/d_f and the asymptotic relative efficiency 1 - psi_k s_k/(psi_f d_f).
Each analytic value is printed next to an independent Fourier-side
quadrature so the agreement is visible at a glance.
"""

import math

from cdf_mise.bandwidth import asymptotic_relative_efficiency, limit_bandwidth
from cdf_mise.distributions import make_jdlvp, make_normal, psi_f_fourier, rescale
from cdf_mise.kernels import KERNEL_NAMES, kernel_by_name, psi_k


def main() -> None:
    dists = [make_jdlvp(), rescale(make_jdlvp(), 2.0),
             make_normal(1.0), make_normal(0.5)]
    kernels = [kernel_by_name(name) for name in KERNEL_NAMES]

    print("distributions")
    print(f"  {'name':<16}{'psi_f':>16}{'quadrature':>16}{'c_f':>6}{'d_f':>6}"
          f"{'variance':>10}")
    for dist in dists:
        quad = psi_f_fourier(dist)
        print(f"  {dist.name:<16}{dist.psi_f:>16.10f}{quad:>16.10f}"
              f"{dist.c_f:>6g}{dist.d_f:>6g}{dist.variance:>10g}")

    print("\nkernels")
    print(f"  {'name':<16}{'psi_k':>16}{'closed form':>16}{'s_k':>6}{'t_k':>6}")
    closed = {
        "normal": 1.0 / math.sqrt(math.pi),
        "trapezoidal": (4.0 * math.log(2.0) - 2.0) / math.pi,
        "sinc": 1.0 / math.pi,
    }
    for kernel in kernels:
        print(f"  {kernel.name:<16}{psi_k(kernel):>16.10f}"
              f"{closed[kernel.name]:>16.10f}{kernel.s_k:>6g}{kernel.t_k:>6g}")

    # A pair gets a first-order MISE improvement exactly when the kernel
    # transform is flat (s_k > 0) out to a positive fraction of the
    # distribution's band limit (d_f < inf).
    print("\npairs")
    print(f"  {'pair':<28}{'limit bandwidth':>16}{'asympt. rel. eff.':>20}")
    for dist in (make_jdlvp(), make_normal(1.0)):
        for kernel in kernels:
            h_star = limit_bandwidth(dist, kernel)
            are = asymptotic_relative_efficiency(dist, kernel)
            print(f"  {dist.name + ' + ' + kernel.name:<28}"
                  f"{h_star:>16g}{are:>20.10f}")


if __name__ == "__main__":
    main()
