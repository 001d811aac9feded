"""Outage probability versus surface size.

Doubling M doubles the mean of Y, so the received SNR grows by about
6 dB per doubling, plus a little more because the law also narrows.
"""

from irsperf import Geometry, PathLossModel, build_link, clt_params, outage

geom, pl = Geometry(30.0, 20.0), PathLossModel(42.0, 3.5)


def snr_for(p, target=1e-4, lo=50.0, hi=250.0):
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if outage(p, 10 ** (mid / 10), 1.0) > target else (lo, mid)
    return hi


prev = None
for m in (32, 64, 128, 256, 512):
    s = snr_for(clt_params(build_link(geom, pl, m, 0.9)))
    step = "" if prev is None else f"  ({prev - s:.2f} dB less than M/2)"
    print(f"M={m:4d}: P_out = 1e-4 at {s:7.2f} dB{step}")
    prev = s
