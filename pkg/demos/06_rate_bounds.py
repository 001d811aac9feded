"""Jensen upper bound and Taylor lower bound on the achievable rate.

The two bounds squeeze the simulated rate and the gap closes as M grows
because Var[gamma] / E[gamma]^2 falls like 1/M.
"""

import numpy as np

from irsperf import Geometry, PathLossModel, build_link, clt_params, estimate_rate
from irsperf.metrics import rate_lower, rate_upper

geom, pl = Geometry(30.0, 20.0), PathLossModel(42.0, 3.5)
snr_db = np.array([160.0, 180.0, 200.0])

for m in (32, 64, 128, 256):
    link = build_link(geom, pl, m, 0.9)
    p = clt_params(link)
    g = 10 ** (snr_db / 10)
    est = estimate_rate(link, g, 50_000, seed=3)
    for s, gb, e in zip(snr_db, g, est):
        print(f"M={m:4d} {s:5.0f} dB: {rate_lower(p, gb):7.4f} <= {e.value:7.4f} <= {rate_upper(p, gb):7.4f}")
