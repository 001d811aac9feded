"""Gaussian (CLT) approximation of the co-phased envelope sum.

With optimal phases the received SNR is ``gamma_bar * Y**2`` where
``Y = sum_m rho_m nu_m eta_m``. For moderate M, Y is modeled as a normal
variable truncated to ``y >= 0``; the truncation normalizer is `psi`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .scenario import IrsLink
from .special_fn import q_func

__all__ = [
    "CltParams",
    "GammaMoments",
    "clt_params",
    "snr_cdf",
    "y_cdf",
    "y_pdf",
    "gamma_moments",
]

# Var[rho * nu] / lambda^2 for one element: (16 - pi^2) / 4.
_VAR_FACTOR = (16.0 - math.pi**2) / 4.0


@dataclass(frozen=True)
class CltParams:
    """Mean/variance of Y plus derived ``kappa`` and ``psi``.

    ``lambda_sq_sum`` is carried along because the rate bounds are
    written in terms of ``sum(lambda_m**2)``.
    """

    mu_y: float
    sigma_y_sq: float
    lambda_sq_sum: float
    m_elements: int = 0

    @property
    def sigma_y(self) -> float:
        return math.sqrt(self.sigma_y_sq)

    @property
    def kappa(self) -> float:
        return self.mu_y**2 / self.sigma_y_sq

    @property
    def psi(self) -> float:
        return 1.0 / q_func(-math.sqrt(self.kappa))

    @classmethod
    def from_moments(cls, mu_y: float, sigma_y_sq: float) -> "CltParams":
        """Bundle built straight from (mu_Y, sigma_Y^2).

        ``lambda_sq_sum`` is back-computed from the variance relation.
        """
        if not (mu_y >= 0 and sigma_y_sq > 0):
            raise ValueError("need mu_y >= 0 and sigma_y_sq > 0")
        return cls(float(mu_y), float(sigma_y_sq), float(sigma_y_sq) / _VAR_FACTOR)


@dataclass(frozen=True)
class GammaMoments:
    """Mean and variance of ``gamma = gamma_bar * Y**2`` (untruncated law)."""

    mean_gamma: float
    var_gamma: float


def clt_params(link: IrsLink) -> CltParams:
    lam_sq = link.lambda_sq
    mu = float(np.sum(math.pi * np.sqrt(lam_sq) / 2.0))
    s = float(np.sum(lam_sq))
    return CltParams(mu, s * _VAR_FACTOR, s, link.m_elements)


def y_pdf(params: CltParams, y):
    """Truncated-normal density of Y; zero for ``y < 0``."""
    y = np.asarray(y, dtype=float)
    s2 = params.sigma_y_sq
    dens = params.psi * np.exp(-((y - params.mu_y) ** 2) / (2.0 * s2)) / math.sqrt(2.0 * math.pi * s2)
    out = np.where(y >= 0, dens, 0.0)
    return float(out) if out.ndim == 0 else out


def y_cdf(params: CltParams, y):
    """``1 - psi * Q((y - mu)/sigma)`` for ``y >= 0``, zero below.

    Evaluated as ``psi * (Phi(arg) - Phi(-sqrt(kappa)))`` so that values
    near the origin (deep outage) keep their relative precision.
    """
    y = np.asarray(y, dtype=float)
    arg = (np.maximum(y, 0.0) - params.mu_y) / params.sigma_y
    floor = q_func(math.sqrt(params.kappa))  # Phi(-sqrt(kappa))
    tail = np.asarray(q_func(np.abs(arg)))
    phi = np.where(arg <= 0, tail, 1.0 - tail)
    out = np.where(y >= 0, params.psi * (phi - floor), 0.0)
    out = np.clip(out, 0.0, 1.0)
    return float(out) if out.ndim == 0 else out


def snr_cdf(params: CltParams, gamma_bar: float, z):
    """CDF of the approximated SNR, ``Pr(gamma_bar * Y**2 <= z)``."""
    if not gamma_bar > 0:
        raise ValueError("gamma_bar must be positive")
    z = np.asarray(z, dtype=float)
    y = np.sqrt(np.maximum(z, 0.0) / gamma_bar)
    out = np.where(z > 0, y_cdf(params, y), 0.0)
    return float(out) if out.ndim == 0 else out


def gamma_moments(params: CltParams, gamma_bar: float) -> GammaMoments:
    """Non-central chi-square (one degree of freedom) moments of gamma.

    The truncation at ``y >= 0`` is ignored here on purpose; these are the
    moments the rate bounds are built from.
    """
    if not gamma_bar > 0:
        raise ValueError("gamma_bar must be positive")
    s2, mu = params.sigma_y_sq, params.mu_y
    mean = gamma_bar * (s2 + mu**2)
    var = 2.0 * s2 * gamma_bar**2 * (s2 + 2.0 * mu**2)
    return GammaMoments(mean, var)
