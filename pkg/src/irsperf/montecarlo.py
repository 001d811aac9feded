"""Seeded Monte Carlo simulator of the IRS channel.

Draws are generated in fixed-size chunks. Chunk ``k`` uses its own
generator seeded from ``(seed, k)`` and partial statistics are merged in
chunk order, so results depend only on ``(seed, n, link, chunk_rows)``
and never on how many worker threads ran the chunks.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from .metrics import Modulation
from .scenario import IrsLink
from .special_fn import q_func

__all__ = [
    "ChannelDraw",
    "Estimate",
    "chunk_rng",
    "default_chunk_rows",
    "sample_channels",
    "envelope_sum",
    "optimal_snr",
    "snr_with_phases",
    "sample_y",
    "estimate_outage",
    "estimate_ser",
    "estimate_rate",
    "estimate_y_moments",
    "estimate_direct_ser",
    "empirical_pdf_y",
]

Z95 = 1.959963984540054

# Gaussian variates generated per chunk (rows * M); bounds chunk memory.
CHUNK_ELEMENTS = 1 << 19


@dataclass(frozen=True)
class ChannelDraw:
    """A batch of channel realizations, arrays of shape ``(n, M)``.

    ``nu``/``phi`` describe the source-to-element hops, ``rho``/``omega``
    the element-to-destination hops.
    """

    nu: np.ndarray
    rho: np.ndarray
    phi: np.ndarray
    omega: np.ndarray

    def __len__(self) -> int:
        return self.nu.shape[0]


@dataclass(frozen=True)
class Estimate:
    """Monte Carlo estimate with a 95 % confidence half-width.

    ``flag`` is ``"zero_events"`` when a proportion estimate saw no
    events; the half-width is then the rule-of-three bound ``3/n``.
    """

    value: float
    ci_half_width: float
    n_samples: int
    seed: int
    flag: str | None = None

    def contains(self, x: float, k: float = 1.0) -> bool:
        """True if `x` lies within `k` half-widths of the estimate."""
        return abs(x - self.value) <= k * self.ci_half_width


def default_chunk_rows(m_elements: int) -> int:
    return max(1, CHUNK_ELEMENTS // m_elements)


def chunk_rng(seed: int, index: int) -> np.random.Generator:
    """Generator for chunk `index`; a pure function of ``(seed, index)``."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), int(index)])))


def _chunk_sizes(n: int, rows: int) -> list[int]:
    full, rest = divmod(n, rows)
    return [rows] * full + ([rest] if rest else [])


def _draw_chunk(link: IrsLink, rng: np.random.Generator, rows: int) -> ChannelDraw:
    m = link.m_elements
    z = rng.standard_normal((4, rows, m))
    h = (z[0] + 1j * z[1]) * np.sqrt(link.zeta_h / 2.0)
    g = (z[2] + 1j * z[3]) * np.sqrt(link.zeta_g / 2.0)
    phi = np.angle(h)
    omega = np.angle(g)
    # np.angle returns -pi only for a negative real part with -0.0 imaginary
    phi[phi == -np.pi] = np.pi
    omega[omega == -np.pi] = np.pi
    return ChannelDraw(np.abs(h), np.abs(g), phi, omega)


def sample_channels(link: IrsLink, seed: int, n: int,
                    chunk_rows: int | None = None) -> Iterator[ChannelDraw]:
    """Yield the ``n`` channel draws as consecutive :class:`ChannelDraw` batches.

    ``h_m = sqrt(zeta_h) * CN(0, 1)`` and ``g_m = sqrt(zeta_g) * CN(0, 1)``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    rows = chunk_rows or default_chunk_rows(link.m_elements)
    for k, size in enumerate(_chunk_sizes(n, rows)):
        yield _draw_chunk(link, chunk_rng(seed, k), size)


def envelope_sum(draw: ChannelDraw, link: IrsLink) -> np.ndarray:
    """``Y = sum_m rho_m nu_m eta_m`` for every draw in the batch."""
    return (draw.rho * draw.nu * link.eta).sum(axis=-1)


def optimal_snr(draw: ChannelDraw, link: IrsLink, gamma_bar: float):
    """SNR with co-phased reflections, ``gamma_bar * Y**2``."""
    y = envelope_sum(draw, link)
    return gamma_bar * y * y


def snr_with_phases(draw: ChannelDraw, link: IrsLink, gamma_bar: float, theta) -> np.ndarray:
    """SNR for arbitrary element phases `theta` (broadcast against ``(n, M)``).

    ``theta = -(phi + omega)`` reproduces :func:`optimal_snr`.
    """
    terms = draw.rho * draw.nu * link.eta * np.exp(1j * (draw.phi + draw.omega + theta))
    return gamma_bar * np.abs(terms.sum(axis=-1)) ** 2


def _default_workers() -> int:
    return min(4, os.cpu_count() or 1)


def _map_chunks(link: IrsLink, n: int, seed: int, fn: Callable[[np.ndarray], object],
                workers: int | None, chunk_rows: int | None) -> list:
    """Apply `fn` to the envelope sums of every chunk; results in chunk order."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rows = chunk_rows or default_chunk_rows(link.m_elements)
    sizes = _chunk_sizes(n, rows)

    def run(k: int):
        draw = _draw_chunk(link, chunk_rng(seed, k), sizes[k])
        return fn(envelope_sum(draw, link))

    workers = _default_workers() if workers is None else workers
    if workers <= 1 or len(sizes) == 1:
        return [run(k) for k in range(len(sizes))]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run, range(len(sizes))))


def sample_y(link: IrsLink, n: int, seed: int, workers: int | None = None,
             chunk_rows: int | None = None) -> np.ndarray:
    """All ``n`` draws of the co-phased envelope sum Y, in chunk order."""
    return np.concatenate(_map_chunks(link, n, seed, lambda y: y, workers, chunk_rows))


def _mean_var(parts: list[tuple[int, np.ndarray, np.ndarray]]):
    """Merge per-chunk (count, mean, M2) triples in order (Chan et al.)."""
    count, mean, m2 = parts[0]
    for c, mu, s in parts[1:]:
        tot = count + c
        delta = mu - mean
        mean = mean + delta * (c / tot)
        m2 = m2 + s + delta * delta * (count * c / tot)
        count = tot
    var = m2 / (count - 1) if count > 1 else np.zeros_like(m2)
    return count, mean, var


def _moment_reducer(values: Callable[[np.ndarray], np.ndarray]):
    def fn(y):
        v = values(y)
        mu = v.mean(axis=0)
        return v.shape[0], mu, ((v - mu) ** 2).sum(axis=0)
    return fn


def _as_snr_vector(gamma_bar) -> tuple[np.ndarray, bool]:
    g = np.asarray(gamma_bar, dtype=float)
    if np.any(g < 0) or not np.all(np.isfinite(g)):
        raise ValueError("gamma_bar must be finite and non-negative")
    return np.atleast_1d(g), g.ndim == 0


def _normal_estimates(parts, seed: int, scalar: bool):
    count, mean, var = _mean_var(parts)
    half = Z95 * np.sqrt(var / count)
    est = [Estimate(float(m), float(h), int(count), int(seed)) for m, h in zip(mean, half)]
    return est[0] if scalar else est


def _wilson(k: int, n: int) -> tuple[float, float]:
    p = k / n
    z2 = Z95 * Z95
    denom = 1.0 + z2 / n
    center = (p + z2 / (2 * n)) / denom
    half = Z95 * math.sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom
    return center, half


def estimate_outage(link: IrsLink, gamma_bar, gamma_th: float, n: int, seed: int,
                    workers: int | None = None, chunk_rows: int | None = None):
    """Fraction of draws with ``optimal_snr <= gamma_th``, Wilson 95 % interval.

    `gamma_bar` may be an array; one :class:`Estimate` per entry is then
    returned, all sharing the same channel draws.
    """
    g, scalar = _as_snr_vector(gamma_bar)
    if gamma_th < 0:
        raise ValueError("gamma_th must be non-negative")

    def fn(y):
        return np.count_nonzero(g[None, :] * (y * y)[:, None] <= gamma_th, axis=0)

    counts = np.sum(_map_chunks(link, n, seed, fn, workers, chunk_rows), axis=0)
    out = []
    for k in counts:
        k = int(k)
        if k == 0:
            out.append(Estimate(0.0, 3.0 / n, n, int(seed), "zero_events"))
        else:
            _, half = _wilson(k, n)
            out.append(Estimate(k / n, half, n, int(seed)))
    return out[0] if scalar else out


def estimate_ser(link: IrsLink, gamma_bar, mod: Modulation, n: int, seed: int,
                 workers: int | None = None, chunk_rows: int | None = None):
    """Sample mean of the conditional error ``alpha Q(sqrt(beta * SNR))``."""
    g, scalar = _as_snr_vector(gamma_bar)
    vals = lambda y: mod.alpha * q_func(np.sqrt(mod.beta * g[None, :] * (y * y)[:, None]))
    parts = _map_chunks(link, n, seed, _moment_reducer(vals), workers, chunk_rows)
    return _normal_estimates(parts, seed, scalar)


def estimate_rate(link: IrsLink, gamma_bar, n: int, seed: int,
                  workers: int | None = None, chunk_rows: int | None = None):
    """Sample mean of ``log2(1 + SNR)`` in bits/s/Hz."""
    g, scalar = _as_snr_vector(gamma_bar)
    vals = lambda y: np.log1p(g[None, :] * (y * y)[:, None]) / math.log(2.0)
    parts = _map_chunks(link, n, seed, _moment_reducer(vals), workers, chunk_rows)
    return _normal_estimates(parts, seed, scalar)


def estimate_y_moments(link: IrsLink, n: int, seed: int, workers: int | None = None,
                       chunk_rows: int | None = None) -> tuple[Estimate, float]:
    """Sample mean of Y (with CI) and its sample variance."""
    vals = lambda y: y[:, None]
    parts = _map_chunks(link, n, seed, _moment_reducer(vals), workers, chunk_rows)
    count, mean, var = _mean_var(parts)
    half = Z95 * math.sqrt(var[0] / count)
    return Estimate(float(mean[0]), half, int(count), int(seed)), float(var[0])


def estimate_direct_ser(gamma_bar_direct, mod: Modulation, n: int, seed: int):
    """Monte Carlo SER of a single Rayleigh link (conditional-SER estimator)."""
    g, scalar = _as_snr_vector(gamma_bar_direct)
    rng = chunk_rng(seed, 0)
    h2 = rng.exponential(1.0, size=n)
    v = mod.alpha * q_func(np.sqrt(mod.beta * g[None, :] * h2[:, None]))
    parts = [(n, v.mean(axis=0), ((v - v.mean(axis=0)) ** 2).sum(axis=0))]
    return _normal_estimates(parts, seed, scalar)


def empirical_pdf_y(link: IrsLink, n: int, seed: int, bins: int = 100,
                    range_: tuple[float, float] | None = None):
    """Normalized histogram of Y.

    Returns ``(edges, density)``; ``sum(density * diff(edges)) == 1``.
    """
    if bins < 10:
        raise ValueError("bins must be at least 10")
    y = sample_y(link, n, seed)
    density, edges = np.histogram(y, bins=bins, range=range_, density=True)
    return edges, density
