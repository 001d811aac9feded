"""Numerical kernel: Gaussian Q, Gamma, Bessel K0/K1 and fixed-node quadrature.

All functions accept scalars or numpy arrays and return the same shape
(a plain ``float`` for scalar input).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import special as sps

__all__ = [
    "DomainError",
    "QuadratureError",
    "QuadratureRule",
    "q_func",
    "bessel_k",
    "gamma_fn",
    "one_minus_xk1",
    "gauss_legendre",
    "integrate",
]

# Cephes switches from the small-argument to the large-argument expansion here.
BESSEL_SEAM = 2.0

_EULER_GAMMA = 0.5772156649015329


class DomainError(ValueError):
    """Argument outside the domain on which a function is defined."""


class QuadratureError(ArithmeticError):
    """Integrand produced a non-finite value at a quadrature node."""


def _unwrap(x: np.ndarray):
    return float(x) if np.ndim(x) == 0 else x


def q_func(x):
    """Gaussian tail probability ``Q(x) = P(N(0, 1) > x)``.

    Evaluated through ``Q(x) = erfc(x / sqrt(2)) / 2``; erfc keeps full
    relative precision in the upper tail, so values down to ~1e-300 are
    meaningful.

    Raises
    ------
    DomainError
        If any element of `x` is nan or infinite.
    """
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("q_func requires finite arguments")
    return _unwrap(0.5 * sps.erfc(x / math.sqrt(2.0)))


def bessel_k(order: int, x, scaled: bool = False):
    """Modified Bessel function of the second kind, order 0 or 1.

    Parameters
    ----------
    order : {0, 1}
    x : float or ndarray
        Strictly positive argument.
    scaled : bool
        If true return ``exp(x) * K_order(x)``, which stays finite for
        arguments where ``K`` itself underflows (x > ~700).
    """
    if order not in (0, 1):
        raise DomainError(f"bessel_k supports orders 0 and 1, got {order!r}")
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)) or np.any(x <= 0):
        raise DomainError("bessel_k requires finite x > 0 (K_v diverges at 0)")
    if scaled:
        out = sps.k0e(x) if order == 0 else sps.k1e(x)
    else:
        out = sps.k0(x) if order == 0 else sps.k1(x)
    return _unwrap(out)


def gamma_fn(t):
    """Euler Gamma function for ``t > 0``."""
    t = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(t)) or np.any(t <= 0):
        raise DomainError("gamma_fn requires finite t > 0")
    return _unwrap(sps.gamma(t))


def one_minus_xk1(x):
    """Return ``1 - x K1(x)`` without cancellation for small ``x``.

    ``x K1(x) -> 1`` as ``x -> 0``, so the naive difference loses every
    digit once ``x`` is below ~1e-8. Below 1 the ascending series

        1 - x K1(x) = -sum_k (x^2/4)^(k+1) / (k! (k+1)!)
                      * [2 ln(x/2) - psi(k+1) - psi(k+2)]

    is used instead. ``x = 0`` returns 0 (the limit).
    """
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)) or np.any(x < 0):
        raise DomainError("one_minus_xk1 requires finite x >= 0")
    out = np.zeros_like(x)
    big = x >= 1.0
    if np.any(big):
        xb = x[big]
        out[big] = 1.0 - xb * sps.k1(xb)
    small = (x > 0) & ~big
    if np.any(small):
        xs = x[small]
        q = xs * xs / 4.0
        log_half = 2.0 * np.log(xs / 2.0)
        term = q.copy()  # (x^2/4)^(k+1) / (k! (k+1)!) at k = 0
        # psi(1) + psi(2) = 1 - 2*gamma
        psi_sum = 1.0 - 2.0 * _EULER_GAMMA
        acc = term * (log_half - psi_sum)
        for k in range(1, 30):
            term = term * q / (k * (k + 1))
            # psi(k+1) = psi(k) + 1/k, psi(k+2) = psi(k+1) + 1/(k+1)
            psi_sum += 1.0 / k + 1.0 / (k + 1)
            acc = acc + term * (log_half - psi_sum)
            if np.all(np.abs(term) < 1e-18 * np.abs(acc)):
                break
        out[small] = -acc
    return _unwrap(out)


@dataclass(frozen=True)
class QuadratureRule:
    """Fixed-node rule on an open interval (no endpoint nodes).

    Attributes
    ----------
    nodes : ndarray
        Strictly increasing abscissae inside ``(lower, upper)``.
    weights : ndarray
        Positive weights, same length as `nodes`.
    lower, upper : float
        Integration limits the rule was built for.
    """

    nodes: np.ndarray
    weights: np.ndarray
    lower: float = 0.0
    upper: float = math.pi / 2

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.ndim != 1 or nodes.shape != weights.shape or nodes.size == 0:
            raise ValueError("nodes and weights must be equal-length 1-D arrays")
        if np.any(np.diff(nodes) <= 0):
            raise ValueError("nodes must be strictly increasing")
        if nodes[0] <= self.lower or nodes[-1] >= self.upper:
            raise ValueError("nodes must lie in the open interval (lower, upper)")
        if np.any(weights <= 0):
            raise ValueError("weights must be positive")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def __len__(self) -> int:
        return self.nodes.size


def gauss_legendre(n: int = 64, lower: float = 0.0, upper: float = math.pi / 2) -> QuadratureRule:
    """Gauss-Legendre rule with `n` nodes mapped onto ``(lower, upper)``."""
    if n < 1:
        raise ValueError("need at least one node")
    if not upper > lower:
        raise ValueError("upper must exceed lower")
    t, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (upper - lower)
    return QuadratureRule(lower + half * (t + 1.0), half * w, lower, upper)


def integrate(rule: QuadratureRule, f: Callable[[np.ndarray], np.ndarray]) -> float:
    """Weighted sum of `f` over the rule's nodes.

    `f` is called once with the full node array and must return an array
    of the same shape.
    """
    vals = np.asarray(f(rule.nodes), dtype=float)
    if vals.shape != rule.nodes.shape:
        vals = np.broadcast_to(vals, rule.nodes.shape)
    bad = ~np.isfinite(vals)
    if np.any(bad):
        i = int(np.argmax(bad))
        raise QuadratureError(
            f"integrand is {vals[i]!r} at node {i} (theta={rule.nodes[i]!r})"
        )
    return float(np.dot(rule.weights, vals))
