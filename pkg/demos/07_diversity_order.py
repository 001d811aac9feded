"""Diversity order: what the log-log slope really looks like.

The power law P_out ~ (1/gamma_bar)^M holds only asymptotically. At any
finite SNR the exact curves carry logarithmic corrections, so a fitted
slope creeps towards M from below.
"""

import numpy as np

from irsperf import IrsLink, asymptotic_params, estimate_diversity_slope, outage_exact_m1
from irsperf.asymptotics import asymptotic_outage, outage_convolution

for lo in (20, 60, 120, 300):
    g = 10 ** (np.arange(lo, lo + 21, 5) / 10)
    s1 = estimate_diversity_slope(zip(g, outage_exact_m1(0.25, g, 1.0)))
    s2 = estimate_diversity_slope(zip(g, outage_convolution(0.5, 0.5, g, 1.0)))
    print(f"{lo:3d}-{lo + 20:3d} dB: M=1 slope {s1:.3f}   M=2 slope {s2:.3f}")

apar = asymptotic_params(IrsLink.uniform(2))
g = 10 ** (np.arange(60, 81, 5) / 10)
print("asymptote, M=2:", estimate_diversity_slope(zip(g, asymptotic_outage(apar, g, 1.0))))
