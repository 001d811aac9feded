"""Deployment geometry and path loss to per-element link parameters."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .special_fn import DomainError

__all__ = [
    "PathLossModel",
    "Geometry",
    "IrsLink",
    "path_loss_linear",
    "build_link",
    "db_to_linear",
    "linear_to_db",
    "REFERENCE_PATH_LOSS",
]


def db_to_linear(db):
    """Power ratio from decibels."""
    if np.ndim(db):
        return 10.0 ** (np.asarray(db, dtype=float) / 10.0)
    return 10.0 ** (float(db) / 10.0)


def linear_to_db(x):
    """Decibels from a power ratio."""
    if np.ndim(x):
        return 10.0 * np.log10(np.asarray(x, dtype=float))
    return 10.0 * math.log10(x)


@dataclass(frozen=True)
class PathLossModel:
    """Log-distance path loss ``L[dB] = zeta0_db + 10 * exponent * log10(d)``.

    `d` is in meters with a 1 m reference distance.
    """

    zeta0_db: float = 42.0
    exponent: float = 3.5

    def __post_init__(self):
        if not math.isfinite(self.zeta0_db):
            raise ValueError("zeta0_db must be finite")
        if not (math.isfinite(self.exponent) and self.exponent > 0):
            raise ValueError("path-loss exponent must be positive")


REFERENCE_PATH_LOSS = PathLossModel(42.0, 3.5)


@dataclass(frozen=True)
class Geometry:
    """Node distances in meters.

    `d_sd` only matters for the direct source-destination baseline.
    """

    d_si: float
    d_di: float
    d_sd: float = 100.0

    def __post_init__(self):
        for name in ("d_si", "d_di", "d_sd"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be a positive distance, got {v!r}")


def path_loss_linear(model: PathLossModel, d):
    """Linear power gain ``10**(-L[dB]/10)`` at distance `d`.

    The dB figure is an attenuation, so the returned gain is below 1 for
    any realistic (model, d) pair and multiplies the unit-power fading.
    """
    d_arr = np.asarray(d, dtype=float)
    if not np.all(np.isfinite(d_arr)) or np.any(d_arr <= 0):
        raise DomainError("distance must be finite and > 0")
    loss_db = model.zeta0_db + 10.0 * model.exponent * np.log10(d_arr)
    out = 10.0 ** (-loss_db / 10.0)
    return float(out) if out.ndim == 0 else out


def _readonly(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class IrsLink:
    """Per-element statistics of an M-element reflecting surface.

    ``lambda_sq[m] = zeta_h[m] * zeta_g[m] * eta[m]**2 / 4`` is derived at
    construction; passing it explicitly is not supported.
    """

    eta: np.ndarray
    zeta_h: np.ndarray
    zeta_g: np.ndarray
    lambda_sq: np.ndarray = field(init=False)

    def __post_init__(self):
        eta, zh, zg = _readonly(self.eta), _readonly(self.zeta_h), _readonly(self.zeta_g)
        if eta.ndim != 1 or eta.size == 0:
            raise ValueError("need at least one element")
        if not (eta.shape == zh.shape == zg.shape):
            raise ValueError("eta, zeta_h and zeta_g must have the same length")
        if not np.all((eta > 0) & (eta <= 1)):
            raise ValueError("reflection coefficients must lie in (0, 1]")
        if not (np.all(np.isfinite(zh)) and np.all(np.isfinite(zg))):
            raise ValueError("path gains must be finite")
        if np.any(zh <= 0) or np.any(zg <= 0):
            raise ValueError("path gains must be positive")
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "zeta_h", zh)
        object.__setattr__(self, "zeta_g", zg)
        object.__setattr__(self, "lambda_sq", _readonly(zh * zg * eta**2 / 4.0))

    @property
    def m_elements(self) -> int:
        return int(self.eta.size)

    @property
    def lam(self) -> np.ndarray:
        """Per-element scale ``lambda_m`` (square root of `lambda_sq`)."""
        return np.sqrt(self.lambda_sq)

    @classmethod
    def uniform(cls, m_elements: int, eta: float = 1.0, zeta_h: float = 1.0,
                zeta_g: float = 1.0) -> "IrsLink":
        """Identical elements; the default gives ``lambda_sq = 1/4``."""
        if int(m_elements) != m_elements or m_elements < 1:
            raise ValueError("m_elements must be a positive integer")
        ones = np.ones(int(m_elements))
        return cls(eta * ones, zeta_h * ones, zeta_g * ones)


def build_link(geom: Geometry, model: PathLossModel, m_elements: int,
               eta: float | Sequence[float]) -> IrsLink:
    """Link for an IRS treated as a point: every element sees `d_si`/`d_di`.

    Parameters
    ----------
    eta : float or sequence of float
        One coefficient for all elements, or one per element.
    """
    if isinstance(m_elements, bool) or int(m_elements) != m_elements or m_elements < 1:
        raise ValueError(f"m_elements must be a positive integer, got {m_elements!r}")
    m = int(m_elements)
    eta_arr = np.asarray(eta, dtype=float)
    if eta_arr.ndim == 0:
        eta_arr = np.full(m, float(eta_arr))
    elif eta_arr.shape != (m,):
        raise ValueError(f"expected {m} reflection coefficients, got {eta_arr.size}")
    zh = path_loss_linear(model, geom.d_si)
    zg = path_loss_linear(model, geom.d_di)
    return IrsLink(eta_arr, np.full(m, zh), np.full(m, zg))
