"""Average BPSK error rate with a 32-element surface, four deployments.

Reads off the transmit SNR each curve needs to reach a target error
rate. The distance to the surface matters a lot; the reflection
coefficient shifts the curve by about 20 log10(0.9/0.5) = 5.1 dB.
"""

import numpy as np

from irsperf import BPSK, Geometry, PathLossModel, build_link, clt_params, path_loss_linear, ser
from irsperf.metrics import ser_direct_rayleigh

pl = PathLossModel(42.0, 3.5)


def snr_for(fn, target, lo=-50.0, hi=400.0):
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if fn(10 ** (mid / 10)) > target else (lo, mid)
    return hi


cases = {"d=51 m, eta=0.9": (51.0, 0.9), "d=51 m, eta=0.5": (51.0, 0.5),
         "d=80 m, eta=0.9": (80.0, 0.9), "d=170 m, eta=0.9": (170.0, 0.9)}
for target in (1e-1, 1e-4):
    print(f"SER target {target:g}")
    for name, (d, eta) in cases.items():
        p = clt_params(build_link(Geometry(d, d), pl, 32, eta))
        print(f"  {name:18s} {snr_for(lambda g: ser(p, g, BPSK), target):7.2f} dB")
    zeta_sd = path_loss_linear(pl, 100.0)
    print(f"  {'direct, 100 m':18s} {snr_for(lambda g: ser_direct_rayleigh(g * zeta_sd, BPSK), target):7.2f} dB")
