"""Tour of the numerical kernel.

Everything downstream leans on four primitives: the Gaussian tail Q, the
Gamma function, modified Bessel functions K0/K1, and a Gauss-Legendre
rule on (0, pi/2). This script checks each one against something you can
verify by hand.
"""

import math

import numpy as np

from irsperf.special_fn import bessel_k, gamma_fn, gauss_legendre, integrate, one_minus_xk1, q_func

print("Q(0) =", q_func(0.0))
print("Q(8) =", q_func(8.0), "(tail stays accurate, no cancellation)")
print("Q(1) + Q(-1) =", q_func(1.0) + q_func(-1.0))

print("\nGamma(1/2)^2 =", gamma_fn(0.5) ** 2, "vs pi =", math.pi)

x = 1e-9
print(f"\nx K1(x) at x={x:g}: {x * bessel_k(1, x):.12f}  (tends to 1)")
print(f"1 - x K1(x) naive : {1 - x * bessel_k(1, x):.3e}")
print(f"1 - x K1(x) series: {one_minus_xk1(x):.3e}  (what the outage formula uses)")

rule = gauss_legendre(64)
print("\n64-node rule on (0, pi/2):")
print("  int 1         =", integrate(rule, np.ones_like))
print("  int sin^2     =", integrate(rule, lambda t: np.sin(t) ** 2), "vs pi/4 =", math.pi / 4)
