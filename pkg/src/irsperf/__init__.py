"""Performance analysis of IRS-assisted Rayleigh links.

Closed forms (outage, rate bounds, average SER, high-SNR asymptotics)
together with a seeded Monte Carlo simulator to check them against.
"""

from .asymptotics import (
    AsymptoticParams,
    asymptotic_outage,
    asymptotic_params,
    asymptotic_ser,
    calibrate,
    coding_gain,
    estimate_diversity_slope,
    product_rayleigh_mgf,
    product_rayleigh_pdf,
)
from .clt_model import CltParams, GammaMoments, clt_params, gamma_moments, snr_cdf, y_pdf
from .metrics import (
    BPSK,
    Modulation,
    outage,
    outage_exact_m1,
    rate_lower,
    rate_upper,
    ser,
    ser_direct_rayleigh,
    ser_exact_m1,
    ser_upper,
)
from .montecarlo import (
    ChannelDraw,
    Estimate,
    estimate_outage,
    estimate_rate,
    estimate_ser,
    optimal_snr,
    sample_channels,
)
from .scenario import Geometry, IrsLink, PathLossModel, build_link, db_to_linear, linear_to_db, path_loss_linear
from .special_fn import QuadratureRule, bessel_k, gamma_fn, gauss_legendre, integrate, q_func

__version__ = "0.1.0"
