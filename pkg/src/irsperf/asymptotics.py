"""High-SNR behaviour: product-Rayleigh statistics and diversity order.

Each element contributes ``X_m = rho_m nu_m eta_m``, a product of two
independent Rayleigh envelopes with density ``(x/lambda^2) K0(x/lambda)``.
Near the origin the density of ``Y = sum X_m`` behaves like ``y^(2M-1)``,
which is what makes the outage decay as ``gamma_bar^(-M)``.

The intercept of the asymptotic power law carries a free constant `xi`,
so only the slope is a hard prediction. :func:`calibrate` fixes `xi`
from a single reference point when one is available.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy import integrate as spi

from .metrics import Modulation
from .scenario import IrsLink
from .special_fn import DomainError, bessel_k, one_minus_xk1

__all__ = [
    "AsymptoticParams",
    "asymptotic_params",
    "calibrate",
    "product_rayleigh_pdf",
    "product_rayleigh_cdf",
    "product_rayleigh_mgf",
    "product_rayleigh_mgf_half_exponent",
    "sum_mgf",
    "asymptotic_outage",
    "coding_gain",
    "asymptotic_ser",
    "estimate_diversity_slope",
    "sum_cdf_quad",
    "sum_pdf_grid",
    "outage_convolution",
]


@dataclass(frozen=True)
class AsymptoticParams:
    """Power-law parameters ``P_out ~ omega_op * (gamma_th/gamma_bar)**M``.

    ``omega_op`` spans hundreds of decades for realistic path losses, so
    it is stored as its natural log.
    """

    diversity_order: int
    log_omega_op: float
    xi: float = 1.0
    calibrated: bool = False

    @property
    def omega_op(self) -> float:
        """Intercept coefficient (may overflow to ``inf``)."""
        try:
            return math.exp(self.log_omega_op)
        except OverflowError:
            return math.inf


def asymptotic_params(link: IrsLink, xi: float = 1.0) -> AsymptoticParams:
    """``omega_op = xi * prod(1/lambda_m^2) / (2M)!``.

    With the default ``xi = 1`` the intercept is only defined up to that
    constant; see :func:`calibrate`.
    """
    if not xi > 0:
        raise ValueError("xi must be positive")
    m = link.m_elements
    log_omega = (math.log(xi) - float(np.sum(np.log(link.lambda_sq)))
                 - math.lgamma(2 * m + 1))
    return AsymptoticParams(m, log_omega, float(xi))


def calibrate(link: IrsLink, gamma_bar: float, gamma_th: float, reference: float) -> AsymptoticParams:
    """Fit `xi` so the power law passes through one reference outage value.

    Use the highest-SNR point available; the fit only makes sense where
    the reference curve has already reached its asymptotic slope.
    """
    if not (reference > 0 and gamma_bar > 0 and gamma_th > 0):
        raise ValueError("reference, gamma_bar and gamma_th must be positive")
    base = asymptotic_params(link, 1.0)
    log_pred = base.log_omega_op + base.diversity_order * math.log(gamma_th / gamma_bar)
    log_xi = math.log(reference) - log_pred
    return AsymptoticParams(base.diversity_order, base.log_omega_op + log_xi,
                            math.exp(log_xi), calibrated=True)


# -- per-element product-Rayleigh law ----------------------------------------

def product_rayleigh_pdf(lambda_m: float, x):
    """Density ``(x / lambda^2) K0(x / lambda)`` for ``x > 0``; 0 otherwise."""
    if not lambda_m > 0:
        raise ValueError("lambda_m must be positive")
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 0
    if np.any(pos):
        u = x[pos] / lambda_m
        out[pos] = u * np.asarray(bessel_k(0, u)) / lambda_m
    return float(out) if out.ndim == 0 else out


def product_rayleigh_cdf(lambda_m: float, x):
    """``1 - (x/lambda) K1(x/lambda)`` for ``x >= 0``; 0 otherwise."""
    if not lambda_m > 0:
        raise ValueError("lambda_m must be positive")
    x = np.asarray(x, dtype=float)
    out = np.asarray(one_minus_xk1(np.maximum(x, 0.0) / lambda_m))
    out = np.where(x > 0, out, 0.0)
    return float(out) if out.ndim == 0 else out


def _check_mgf_domain(a):
    if np.any(a <= 1.0) or not np.all(np.isfinite(a)):
        raise DomainError("MGF closed form requires s * lambda_m > 1")


def product_rayleigh_mgf(lambda_m: float, s):
    """``E[exp(-s X)]`` for a product-Rayleigh element, ``s * lambda_m > 1``.

    With ``a = s * lambda_m``::

        M(s) = (a * arccosh(a) / sqrt(a^2 - 1) - 1) / (a^2 - 1)

    i.e. the Laplace transform of ``u K0(u)`` evaluated at ``a``. A
    variant that raises ``sqrt(a^2 - 1)`` to the power ``-1/2`` instead
    of ``-1`` circulates; it is kept as
    :func:`product_rayleigh_mgf_half_exponent` and disagrees with direct
    numerical Laplace transforms of the density.
    """
    if not lambda_m > 0:
        raise ValueError("lambda_m must be positive")
    a = np.asarray(s, dtype=float) * lambda_m
    _check_mgf_domain(a)
    root = np.sqrt((a - 1.0) * (a + 1.0))
    out = (a * np.arccosh(a) / root - 1.0) / (root * root)
    return float(out) if out.ndim == 0 else out


def product_rayleigh_mgf_half_exponent(lambda_m: float, s):
    """The MGF with a trailing exponent of ``-1/2`` on ``sqrt(a^2 - 1)``.

    Kept only for comparison; do not use for computation.
    """
    a = np.asarray(s, dtype=float) * lambda_m
    _check_mgf_domain(a)
    root = np.sqrt(a * a - 1.0)
    out = (a * np.log(a + root) * root ** -0.5 - 1.0) / (a * a - 1.0)
    return float(out) if out.ndim == 0 else out


def sum_mgf(link: IrsLink, s):
    """MGF of ``Y = sum_m X_m``: product of the per-element MGFs."""
    s = np.asarray(s, dtype=float)
    out = np.ones_like(s)
    for lam in link.lam:
        out = out * np.asarray(product_rayleigh_mgf(float(lam), s))
    return float(out) if out.ndim == 0 else out


# -- asymptotic outage / SER --------------------------------------------------

def asymptotic_outage(apar: AsymptoticParams, gamma_bar, gamma_th):
    """``omega_op * (gamma_th / gamma_bar)**M``, a line of slope -M in log-log."""
    g = np.asarray(gamma_bar, dtype=float)
    if np.any(g <= 0):
        raise ValueError("gamma_bar must be positive")
    log_p = apar.log_omega_op + apar.diversity_order * (np.log(gamma_th) - np.log(g))
    with np.errstate(over="ignore"):
        out = np.exp(log_p)
    return float(out) if out.ndim == 0 else out


def _log_coding_gain(apar: AsymptoticParams, mod: Modulation) -> float:
    m = apar.diversity_order
    log_k = (math.log(mod.alpha) + apar.log_omega_op + (m - 1) * math.log(2.0)
             + math.lgamma(m + 0.5) - 0.5 * math.log(math.pi) - m * math.log(mod.beta))
    return -log_k / m


def coding_gain(apar: AsymptoticParams, mod: Modulation) -> float:
    """``G_c = (alpha omega 2^(M-1) Gamma(M+1/2) / (sqrt(pi) beta^M))^(-1/M)``."""
    return math.exp(_log_coding_gain(apar, mod))


def asymptotic_ser(apar: AsymptoticParams, gamma_bar, mod: Modulation):
    """High-SNR SER ``(G_c * gamma_bar)**(-M)``."""
    g = np.asarray(gamma_bar, dtype=float)
    if np.any(g <= 0):
        raise ValueError("gamma_bar must be positive")
    log_p = -apar.diversity_order * (_log_coding_gain(apar, mod) + np.log(g))
    with np.errstate(over="ignore"):
        out = np.exp(log_p)
    return float(out) if out.ndim == 0 else out


def estimate_diversity_slope(curve: Iterable[Sequence[float]]) -> float:
    """Least-squares slope of ``-log10(value)`` against ``log10(gamma_bar)``.

    Parameters
    ----------
    curve : iterable of (gamma_bar, value)
        Linear-scale SNRs and the corresponding outage/SER values.
    """
    pts = np.asarray(list(curve), dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
        raise ValueError("need at least two (gamma_bar, value) pairs")
    g, v = pts[:, 0], pts[:, 1]
    if np.any(v <= 0) or np.any(g <= 0):
        raise DomainError("gamma_bar and values must be positive for a log-log fit")
    if np.unique(g).size != g.size:
        raise ValueError("gamma_bar values must be distinct")
    x = np.log10(g)
    y = -np.log10(v)
    xc = x - x.mean()
    return float(np.dot(xc, y - y.mean()) / np.dot(xc, xc))


# -- convolution reference for the exact law of Y --------------------------

def sum_cdf_quad(lam_1: float, lam_2: float, y: float) -> float:
    """``Pr(X_1 + X_2 <= y)`` by adaptive quadrature of ``f_1 * F_2``.

    Integrates ``f_1(x) F_2(y - x)`` over ``[0, y]`` after rescaling to
    the unit interval; accurate from moderate `y` down to the deep tail.
    """
    if y <= 0:
        return 0.0

    def g(t):
        x = y * t
        return y * product_rayleigh_pdf(lam_1, x) * product_rayleigh_cdf(lam_2, y - x)

    val, _ = spi.quad(g, 0.0, 1.0, limit=200, epsabs=0.0, epsrel=1e-11)
    return float(val)


def sum_pdf_grid(lams: Sequence[float], step: float | None = None,
                 support: float | None = None):
    """Density of ``sum X_m`` by repeated discrete convolution on a grid.

    Defaults: ``step = min(lambda)/200`` and support to ``40 * max(lambda)``
    per element. Returns ``(centers, pdf)``; each value is a cell average,
    and convolving cell masses shifts the centers by ``len(lams)/2`` cells.
    """
    lams = [float(v) for v in lams]
    step = min(lams) / 200.0 if step is None else step
    support = 40.0 * max(lams) * len(lams) if support is None else support
    n = int(math.ceil(support / step)) + 1
    # exact per-cell masses from the closed-form CDF
    edges = np.arange(n + 1) * step
    pdf = None
    for lam in lams:
        mass = np.diff(np.asarray(product_rayleigh_cdf(lam, edges)))
        if pdf is None:
            pdf = mass
        else:
            pdf = np.convolve(pdf, mass)[:n]
    centers = (np.arange(n) + 0.5 * len(lams)) * step
    return centers, pdf / step


def outage_convolution(lam_1: float, lam_2: float, gamma_bar, gamma_th: float):
    """Exact two-element outage ``Pr(gamma_bar * Y**2 <= gamma_th)``.

    Independent of both the CLT approximation and Monte Carlo.
    """
    g = np.atleast_1d(np.asarray(gamma_bar, dtype=float))
    out = np.array([sum_cdf_quad(lam_1, lam_2, math.sqrt(gamma_th / gb)) for gb in g])
    return float(out[0]) if np.ndim(gamma_bar) == 0 else out
