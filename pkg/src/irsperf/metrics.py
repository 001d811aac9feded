"""Closed-form link metrics: outage, rate bounds and average SER.

Every function takes linear-scale SNRs. ``gamma_bar`` is the average
transmit SNR ``P / sigma_N^2``; path loss enters through the
:class:`~irsperf.clt_model.CltParams` (or ``lambda1_sq`` for the exact
single-element results).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .clt_model import CltParams, gamma_moments, snr_cdf
from .special_fn import (
    QuadratureError,
    QuadratureRule,
    bessel_k,
    gauss_legendre,
    integrate,
    one_minus_xk1,
    q_func,
)

__all__ = [
    "Modulation",
    "BPSK",
    "outage",
    "outage_exact_m1",
    "rate_upper",
    "rate_lower",
    "rate_clt",
    "ser_coefficients",
    "ser_integrand",
    "ser",
    "ser_upper",
    "ser_exact_m1",
    "ser_direct_rayleigh",
    "DEFAULT_RULE",
]

_LN2 = math.log(2.0)

DEFAULT_RULE = gauss_legendre(64)


@dataclass(frozen=True)
class Modulation:
    """Conditional error model ``Pe|gamma = alpha * Q(sqrt(beta * gamma))``."""

    alpha: float = 1.0
    beta: float = 2.0

    def __post_init__(self):
        for name in ("alpha", "beta"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be finite and positive, got {v!r}")


BPSK = Modulation(1.0, 2.0)


def _check_snr(gamma_bar: float) -> None:
    if not (gamma_bar > 0 and math.isfinite(gamma_bar)):
        raise ValueError(f"gamma_bar must be finite and positive, got {gamma_bar!r}")


# -- outage -------------------------------------------------------------------

def outage(params: CltParams, gamma_bar: float, gamma_th):
    """Outage probability under the CLT approximation of the SNR law."""
    _check_snr(gamma_bar)
    if np.any(np.asarray(gamma_th) < 0):
        raise ValueError("gamma_th must be non-negative")
    return snr_cdf(params, gamma_bar, gamma_th)


def outage_exact_m1(lambda1_sq: float, gamma_bar: float, gamma_th):
    """Exact outage of a single-element link: ``1 - x K1(x)``.

    ``x = sqrt(gamma_th / (gamma_bar * lambda1_sq))``. Accurate down to
    ~1e-300 because the small-x branch never forms ``1 - x K1(x)``
    explicitly.
    """
    gb = np.asarray(gamma_bar, dtype=float)
    if not (np.all(gb > 0) and np.all(np.isfinite(gb))):
        raise ValueError(f"gamma_bar must be finite and positive, got {gamma_bar!r}")
    if not lambda1_sq > 0:
        raise ValueError("lambda1_sq must be positive")
    gth = np.asarray(gamma_th, dtype=float)
    if np.any(gth < 0):
        raise ValueError("gamma_th must be non-negative")
    x = np.sqrt(gth / (gb * lambda1_sq))
    out = np.clip(np.asarray(one_minus_xk1(x)), 0.0, 1.0)
    return float(out) if out.ndim == 0 else out


# -- achievable rate ----------------------------------------------------------

def rate_upper(params: CltParams, gamma_bar: float) -> float:
    """Jensen upper bound ``log2(1 + E[gamma])`` in bits/s/Hz."""
    _check_snr(gamma_bar)
    return math.log1p(gamma_moments(params, gamma_bar).mean_gamma) / _LN2


def rate_lower(params: CltParams, gamma_bar: float) -> float:
    """Lower bound ``log2(1 + 1/E[1/gamma])`` with the second-order
    Taylor estimate ``E[1/gamma] ~ 1/E + Var/E**3``.

    Written as ``E / (1 + Var/E**2)``; the ratio ``Var/E**2`` does not
    depend on `gamma_bar`, which keeps tiny SNRs from underflowing.
    """
    _check_snr(gamma_bar)
    unit = gamma_moments(params, 1.0)
    ratio = unit.var_gamma / unit.mean_gamma**2
    return math.log1p(gamma_bar * unit.mean_gamma / (1.0 + ratio)) / _LN2


def rate_clt(params: CltParams, gamma_bar: float, n_nodes: int = 256) -> float:
    """``E[log2(1 + gamma_bar * Y**2)]`` under the truncated-normal law of Y.

    This is the quantity both bounds bracket; it is evaluated by
    Gauss-Legendre quadrature over ``mu +- 12 sigma`` (clipped at 0).
    """
    from .clt_model import y_pdf

    _check_snr(gamma_bar)
    sigma = params.sigma_y
    lo = max(0.0, params.mu_y - 12.0 * sigma)
    hi = params.mu_y + 12.0 * sigma
    rule = gauss_legendre(n_nodes, lo, hi)
    return integrate(rule, lambda y: np.log1p(gamma_bar * y * y) * y_pdf(params, y)) / _LN2


# -- average SER --------------------------------------------------------------

def ser_coefficients(params: CltParams, gamma_bar: float, mod: Modulation):
    """``(Delta, a, b, c)`` of the Gaussian-integral form of the SER.

    ``SER = Delta * int_0^inf Q(sqrt(a) x) exp(-(b x^2 - 2 c x)) dx``.
    """
    s2, mu = params.sigma_y_sq, params.mu_y
    delta = mod.alpha * params.psi * math.exp(-(mu**2) / (2.0 * s2)) / math.sqrt(2.0 * math.pi * s2)
    return delta, mod.beta * gamma_bar, 1.0 / (2.0 * s2), mu / (2.0 * s2)


def ser_integrand(params: CltParams, gamma_bar: float,
                  mod: Modulation) -> Callable[[np.ndarray], np.ndarray]:
    """Integrand over ``theta in (0, pi/2)`` whose integral is the SER.

    After Craig's form of Q and the inner Gaussian integral,

        f(theta) = Delta/sqrt(pi) * exp(c^2/A) / sqrt(A) * Q(-sqrt(2) c / sqrt(A)),
        A(theta) = a / (2 sin^2 theta) + b.

    ``Delta`` carries ``exp(-mu^2 / 2 sigma^2)``; it is folded into the
    ``exp(c^2/A)`` factor so neither overflows when kappa is large.
    """
    if not (gamma_bar >= 0 and math.isfinite(gamma_bar)):
        raise ValueError("gamma_bar must be finite and non-negative")
    s2, mu = params.sigma_y_sq, params.mu_y
    half_kappa = mu**2 / (2.0 * s2)
    scale = mod.alpha * params.psi / (math.sqrt(2.0 * math.pi * s2) * math.sqrt(math.pi))
    _, a, b, c = ser_coefficients(params, gamma_bar, mod)

    def f(theta):
        sin2 = np.sin(theta) ** 2
        big_a = a / (2.0 * sin2) + b
        expo = c * c / big_a - half_kappa
        return scale * np.exp(expo) / np.sqrt(big_a) * q_func(-math.sqrt(2.0) * c / np.sqrt(big_a))

    return f


def ser(params: CltParams, gamma_bar: float, mod: Modulation,
        rule: QuadratureRule | None = None) -> float:
    """Average SER under the CLT approximation, by quadrature over theta."""
    if not (gamma_bar >= 0 and math.isfinite(gamma_bar)):
        raise ValueError("gamma_bar must be finite and non-negative")
    rule = DEFAULT_RULE if rule is None else rule
    value = integrate(rule, ser_integrand(params, gamma_bar, mod))
    if not math.isfinite(value):
        raise QuadratureError("SER quadrature produced a non-finite value")
    return value


def ser_upper(params: CltParams, gamma_bar: float, mod: Modulation) -> float:
    """Upper bound on :func:`ser`: the integrand is largest at theta = pi/2."""
    return (math.pi / 2.0) * float(ser_integrand(params, gamma_bar, mod)(np.pi / 2.0))


# Beyond this argument the Hankel expansion of K1 - K0 is used directly.
_HANKEL_FROM = 50.0


def _scaled_k_diff_hankel(d: float) -> float:
    """``d * exp(d) * (K1(d) - K0(d))`` from the large-argument expansion.

    ``K_v(d) ~ sqrt(pi/2d) e^-d sum_k a_k(v) / d^k`` with
    ``a_k(v) = prod_{j<=k} (4v^2 - (2j-1)^2) / (k! 8^k)``; subtracting the
    coefficients term by term avoids the cancellation of the two values.
    """
    t0, t1 = 1.0, 1.0  # a_k(0) / d^k and a_k(1) / d^k
    acc = 0.0
    for k in range(1, 60):
        odd = (2 * k - 1) ** 2
        t0 *= -odd / (8.0 * k * d)
        t1 *= (4.0 - odd) / (8.0 * k * d)
        term = t1 - t0
        acc += term
        if abs(term) < 1e-17 * abs(acc):
            break
    return d * math.sqrt(math.pi / (2.0 * d)) * acc


def _one_minus_scaled_k_diff(d: float) -> float:
    """``1 - d * exp(d) * (K1(d) - K0(d))`` for ``d > 0``."""
    if d >= _HANKEL_FROM:
        return 1.0 - _scaled_k_diff_hankel(d)
    if d >= 1.0:
        return 1.0 - d * (bessel_k(1, d, scaled=True) - bessel_k(0, d, scaled=True))
    # small d: d e^d K1 = e^d (1 - T1) with T1 = 1 - d K1(d) from its series
    ed = math.exp(d)
    return -math.expm1(d) + ed * (one_minus_xk1(d) + d * bessel_k(0, d))


def ser_exact_m1(lambda1_sq: float, gamma_bar: float, mod: Modulation) -> float:
    """Exact average SER of a single-element link.

    ``alpha/2 - (alpha d / 2) e^d (K1(d) - K0(d))`` with
    ``d = 1 / (4 beta gamma_bar lambda1_sq)``. Scaled Bessel functions
    handle large ``d`` (low SNR); a series handles small ``d``.
    """
    if not lambda1_sq > 0:
        raise ValueError("lambda1_sq must be positive")
    if not (gamma_bar >= 0 and math.isfinite(gamma_bar)):
        raise ValueError("gamma_bar must be finite and non-negative")
    if gamma_bar == 0:
        return mod.alpha / 2.0
    d = 1.0 / (4.0 * mod.beta * gamma_bar * lambda1_sq)
    if not math.isfinite(d):
        return mod.alpha / 2.0
    return float(0.5 * mod.alpha * _one_minus_scaled_k_diff(d))


def ser_direct_rayleigh(gamma_bar_direct, mod: Modulation):
    """Average of ``alpha Q(sqrt(beta gamma))`` over a Rayleigh SISO link.

    `gamma_bar_direct` already includes the direct-path attenuation.
    """
    g = np.asarray(gamma_bar_direct, dtype=float)
    if np.any(g < 0) or not np.all(np.isfinite(g)):
        raise ValueError("gamma_bar_direct must be finite and non-negative")
    x = mod.beta * g / 2.0
    s = np.sqrt(x / (1.0 + x))
    # 1 - s rewritten to avoid cancellation at high SNR
    out = 0.5 * mod.alpha / ((1.0 + x) * (1.0 + s))
    return float(out) if out.ndim == 0 else out
