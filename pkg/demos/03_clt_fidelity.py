"""How good is the Gaussian approximation of the envelope sum?

Y = sum of M product-Rayleigh terms is modeled as a normal truncated at
zero. The Kolmogorov distance to the empirical law shrinks roughly like
1/sqrt(M), which is the usual Berry-Esseen rate for a skewed summand.
"""

import numpy as np

from irsperf import IrsLink, clt_params
from irsperf.clt_model import y_cdf
from irsperf.montecarlo import sample_y

n = 400_000
for m in (8, 32, 128):
    link = IrsLink.uniform(m, eta=0.8)
    y = np.sort(sample_y(link, n, seed=1))
    cdf = y_cdf(clt_params(link), y)
    k = np.arange(1, n + 1)
    dist = max(np.max(k / n - cdf), np.max(cdf - (k - 1) / n))
    print(f"M={m:4d}: Kolmogorov distance {dist:.4f}   sqrt(M)*D = {np.sqrt(m) * dist:.3f}")

print("\nFor the histogram overlay run:  irsperf reproduce fig2 --out figures")
