"""Declarative SNR sweeps, config files and CSV output.

Config files are INI-style: ``[section]`` headers followed by
``key = value`` lines. All SNR and threshold values are given in dB and
converted to linear scale here, once.
"""

from __future__ import annotations

import configparser
import io
import math
import re
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

import numpy as np

from . import asymptotics as asy
from . import metrics as met
from . import montecarlo as mc
from .clt_model import clt_params, y_pdf
from .scenario import Geometry, IrsLink, PathLossModel, build_link, db_to_linear, path_loss_linear
from .special_fn import gauss_legendre

__all__ = [
    "ConfigError",
    "McConfig",
    "SweepSpec",
    "CSV_COLUMNS",
    "HIST_COLUMNS",
    "DIVERSITY_COLUMNS",
    "parse_config",
    "load_config",
    "snr_grid_db",
    "run_sweep",
    "sweep_rows",
    "run_histogram",
    "run_diversity",
    "format_csv",
    "direct_rows",
    "histogram_rows",
]

METRICS = ("outage", "ser", "rate", "pdf", "diversity")

CSV_COLUMNS = ("metric", "M", "eta", "snr_db", "analytic", "analytic_lb", "analytic_ub",
               "asymptotic", "mc_value", "mc_ci", "n_samples", "seed")
HIST_COLUMNS = ("M", "eta", "bin_center", "density", "analytic_density")
DIVERSITY_COLUMNS = ("M", "source", "snr_db_min", "snr_db_max", "n_points", "slope")


class ConfigError(ValueError):
    """Invalid sweep configuration; carries the offending field and line."""

    def __init__(self, message: str, field: str | None = None, line: int | None = None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


@dataclass(frozen=True)
class McConfig:
    n_samples: int = 100_000
    seed: int = 12345

    def __post_init__(self):
        if self.n_samples < 1:
            raise ValueError("n_samples must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")


@dataclass(frozen=True)
class SweepSpec:
    """One experiment grid: every M in `m_list` at every SNR in `snr_db`.

    ``snr_db`` is ``(start, stop, step)`` with `stop` included when it
    falls on the grid.
    """

    metric: str
    snr_db: tuple[float, float, float]
    m_list: tuple[int, ...]
    eta: float
    geometry: Geometry
    pathloss: PathLossModel = PathLossModel()
    modulation: met.Modulation = met.BPSK
    gamma_th_db: float = 0.0
    mc: McConfig | None = None
    quad_nodes: int = 64
    xi: float = 1.0
    bins: int = 80

    def __post_init__(self):
        def check(ok: bool, field: str, msg: str):
            if not ok:
                raise ConfigError(msg, field=field)

        check(self.metric in METRICS, "sweep.metric", f"metric must be one of {', '.join(METRICS)}")
        start, stop, step = self.snr_db
        check(step > 0, "sweep.snr_db", "snr step must be positive")
        check(start <= stop, "sweep.snr_db", "snr start must not exceed stop")
        check(len(self.m_list) > 0, "sweep.m_list", "m_list must not be empty")
        check(all(int(m) == m and m >= 1 for m in self.m_list), "sweep.m_list",
              "element counts must be positive integers")
        check(0 < self.eta <= 1, "sweep.eta", "eta must lie in (0, 1]")
        check(self.quad_nodes >= 2, "sweep.quad_nodes", "quad_nodes must be at least 2")
        check(self.xi > 0, "sweep.xi", "xi must be positive")
        check(self.bins >= 10, "sweep.bins", "bins must be at least 10")

    def link(self, m: int) -> IrsLink:
        return build_link(self.geometry, self.pathloss, m, self.eta)


# -- config parsing -----------------------------------------------------------

_FIELDS = {
    "sweep": {"metric", "snr_db", "m_list", "eta", "gamma_th_db", "xi", "bins", "quad_nodes"},
    "geometry": {"d_si", "d_di", "d_sd"},
    "pathloss": {"zeta0_db", "exponent"},
    "modulation": {"alpha", "beta"},
    "mc": {"n_samples", "seed"},
}


def _line_of(text: str, section: str, key: str | None) -> int | None:
    cur = None
    for i, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        m = re.fullmatch(r"\[\s*([^\]]+?)\s*\]", s)
        if m:
            cur = m.group(1).lower()
            if key is None and cur == section:
                return i
            continue
        if cur == section and key is not None:
            k = re.split(r"[=:]", s, maxsplit=1)[0].strip().lower()
            if k == key:
                return i
    return None


def parse_config(text: str) -> SweepSpec:
    """Parse INI-style sweep configuration text into a :class:`SweepSpec`."""
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"), interpolation=None)
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        line = getattr(exc, "lineno", None)
        raise ConfigError(str(exc).splitlines()[0], line=line) from None

    for section in cp.sections():
        if section not in _FIELDS:
            raise ConfigError(f"unknown section [{section}]", line=_line_of(text, section, None))
        for key in cp[section]:
            if key not in _FIELDS[section]:
                raise ConfigError(f"unknown key in [{section}]", field=f"{section}.{key}",
                                  line=_line_of(text, section, key))

    def get(section: str, key: str, conv, default=None, required=False):
        if not cp.has_option(section, key):
            if required:
                raise ConfigError("missing required value", field=f"{section}.{key}",
                                  line=_line_of(text, section, None))
            return default
        raw = cp.get(section, key)
        try:
            return conv(raw)
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"bad value {raw!r} ({exc})", field=f"{section}.{key}",
                              line=_line_of(text, section, key)) from None

    def floats(raw: str) -> tuple[float, ...]:
        vals = tuple(float(v) for v in raw.replace(",", " ").split())
        if not vals:
            raise ValueError("empty list")
        return vals

    def ints(raw: str) -> tuple[int, ...]:
        vals = tuple(int(v) for v in raw.replace(",", " ").split())
        if not vals:
            raise ValueError("empty list")
        return vals

    def triple(raw: str) -> tuple[float, float, float]:
        v = floats(raw)
        if len(v) != 3:
            raise ValueError("expected start, stop, step")
        return v  # type: ignore[return-value]

    def build(section: str, factory, *args):
        try:
            return factory(*args)
        except ValueError as exc:
            msg = str(exc)
            # point at the offending key when the validator names it
            key = next((k for k in sorted(_FIELDS[section]) if k in msg), None)
            field = f"{section}.{key}" if key else section
            line = _line_of(text, section, key) if key else None
            raise ConfigError(msg, field=field,
                              line=line or _line_of(text, section, None)) from None

    if not cp.has_section("geometry"):
        raise ConfigError("missing section [geometry]")
    geometry = build("geometry", Geometry,
                     get("geometry", "d_si", float, required=True),
                     get("geometry", "d_di", float, required=True),
                     get("geometry", "d_sd", float, 100.0))
    pathloss = build("pathloss", PathLossModel,
                     get("pathloss", "zeta0_db", float, 42.0),
                     get("pathloss", "exponent", float, 3.5))
    modulation = build("modulation", met.Modulation,
                       get("modulation", "alpha", float, 1.0),
                       get("modulation", "beta", float, 2.0))
    mc_cfg = None
    if cp.has_section("mc"):
        mc_cfg = build("mc", McConfig, get("mc", "n_samples", int, 100_000),
                       get("mc", "seed", int, 12345))
    try:
        return SweepSpec(
            metric=get("sweep", "metric", str.strip, required=True),
            snr_db=get("sweep", "snr_db", triple, required=True),
            m_list=get("sweep", "m_list", ints, required=True),
            eta=get("sweep", "eta", float, 1.0),
            geometry=geometry, pathloss=pathloss, modulation=modulation,
            gamma_th_db=get("sweep", "gamma_th_db", float, 0.0), mc=mc_cfg,
            quad_nodes=get("sweep", "quad_nodes", int, 64),
            xi=get("sweep", "xi", float, 1.0),
            bins=get("sweep", "bins", int, 80),
        )
    except ConfigError as exc:
        if exc.line is not None or exc.field is None:
            raise
        section, key = exc.field.split(".", 1)
        raise ConfigError(str(exc).split(": ", 1)[-1], field=exc.field,
                          line=_line_of(text, section, key)) from None


def load_config(path: str) -> SweepSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


# -- sweeps -------------------------------------------------------------------

def snr_grid_db(snr_db: Sequence[float]) -> np.ndarray:
    start, stop, step = snr_db
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return np.round(start + step * np.arange(n), 12)


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    v = float(v)
    if math.isnan(v):
        return ""
    return f"{v:.10g}"


def format_csv(rows: Iterable[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(row.get(c)) if c not in ("metric", "source") else str(row.get(c, ""))
                           for c in columns) + "\n")
    return buf.getvalue()


def _row(metric: str, m: int, eta: float, snr_db: float, **cells) -> dict:
    row = dict.fromkeys(CSV_COLUMNS)
    row.update(metric=metric, M=m, eta=eta, snr_db=snr_db)
    row.update(cells)
    return row


def _mc_cells(est: mc.Estimate | None) -> dict:
    if est is None:
        return {}
    return dict(mc_value=est.value, mc_ci=est.ci_half_width, n_samples=est.n_samples, seed=est.seed)


def sweep_rows(spec: SweepSpec) -> list[dict]:
    """Rows for every (M, snr) grid point, ordered by M then SNR."""
    if spec.metric == "pdf":
        raise ValueError("use run_histogram for metric 'pdf'")
    snrs_db = snr_grid_db(spec.snr_db)
    g = db_to_linear(snrs_db)
    gth = db_to_linear(spec.gamma_th_db)
    rule = gauss_legendre(spec.quad_nodes)
    rows = []
    for m in sorted(set(int(v) for v in spec.m_list)):
        link = spec.link(m)
        p = clt_params(link)
        apar = asy.asymptotic_params(link, spec.xi)
        est = [None] * len(g)
        metric = spec.metric
        if metric in ("outage", "diversity"):
            if spec.mc:
                est = mc.estimate_outage(link, g, gth, spec.mc.n_samples, spec.mc.seed)
            for i, gb in enumerate(g):
                ana = (met.outage_exact_m1(float(link.lambda_sq[0]), gb, gth) if m == 1
                       else met.outage(p, gb, gth))
                rows.append(_row(metric, m, spec.eta, snrs_db[i], analytic=ana,
                                 asymptotic=asy.asymptotic_outage(apar, gb, gth), **_mc_cells(est[i])))
        elif metric == "ser":
            if spec.mc:
                est = mc.estimate_ser(link, g, spec.modulation, spec.mc.n_samples, spec.mc.seed)
            for i, gb in enumerate(g):
                if m == 1:
                    ana, ub = met.ser_exact_m1(float(link.lambda_sq[0]), gb, spec.modulation), None
                else:
                    ana = met.ser(p, gb, spec.modulation, rule)
                    ub = met.ser_upper(p, gb, spec.modulation)
                rows.append(_row(metric, m, spec.eta, snrs_db[i], analytic=ana, analytic_ub=ub,
                                 asymptotic=asy.asymptotic_ser(apar, gb, spec.modulation),
                                 **_mc_cells(est[i])))
        elif metric == "rate":
            if spec.mc:
                est = mc.estimate_rate(link, g, spec.mc.n_samples, spec.mc.seed)
            for i, gb in enumerate(g):
                rows.append(_row(metric, m, spec.eta, snrs_db[i], analytic=met.rate_clt(p, gb),
                                 analytic_lb=met.rate_lower(p, gb), analytic_ub=met.rate_upper(p, gb),
                                 **_mc_cells(est[i])))
    return rows


def run_sweep(spec: SweepSpec) -> str:
    """CSV document for `spec` (histogram layout when ``metric == 'pdf'``)."""
    if spec.metric == "pdf":
        return run_histogram(spec)
    return format_csv(sweep_rows(spec), CSV_COLUMNS)


def direct_rows(spec: SweepSpec) -> list[dict]:
    """Rayleigh source-destination baseline at distance ``geometry.d_sd``.

    Reported with ``metric = ser_direct`` and ``M = 0`` (no surface).
    """
    snrs_db = snr_grid_db(spec.snr_db)
    gain = path_loss_linear(spec.pathloss, spec.geometry.d_sd)
    g = db_to_linear(snrs_db) * gain
    est = [None] * len(g)
    if spec.mc:
        est = mc.estimate_direct_ser(g, spec.modulation, spec.mc.n_samples, spec.mc.seed)
    return [_row("ser_direct", 0, 1.0, s, analytic=met.ser_direct_rayleigh(gd, spec.modulation),
                 **_mc_cells(e)) for s, gd, e in zip(snrs_db, g, est)]


def histogram_rows(spec: SweepSpec) -> list[dict]:
    """Normalized histogram of Y against the truncated-normal density."""
    mc_cfg = spec.mc or McConfig(1_000_000)
    rows = []
    for m in sorted(set(int(v) for v in spec.m_list)):
        link = spec.link(m)
        p = clt_params(link)
        hi = p.mu_y + 6.0 * p.sigma_y
        lo = max(0.0, p.mu_y - 6.0 * p.sigma_y)
        edges, dens = mc.empirical_pdf_y(link, mc_cfg.n_samples, mc_cfg.seed, spec.bins, (lo, hi))
        centers = 0.5 * (edges[1:] + edges[:-1])
        ana = y_pdf(p, centers)
        rows.extend(dict(M=m, eta=spec.eta, bin_center=c, density=d, analytic_density=a)
                    for c, d, a in zip(centers, dens, ana))
    return rows


def run_histogram(spec: SweepSpec) -> str:
    return format_csv(histogram_rows(spec), HIST_COLUMNS)


def run_diversity(spec: SweepSpec) -> str:
    """Log-log slopes of the outage curves of `spec` over its SNR window."""
    spec = replace(spec, metric="outage")
    rows = sweep_rows(spec)
    out = []
    for m in sorted(set(int(v) for v in spec.m_list)):
        sub = [r for r in rows if r["M"] == m]
        snr = np.array([r["snr_db"] for r in sub])
        g = db_to_linear(snr)
        for source, key in (("analytic", "analytic"), ("asymptotic", "asymptotic"), ("mc", "mc_value")):
            vals = np.array([np.nan if r[key] is None else r[key] for r in sub], dtype=float)
            ok = np.isfinite(vals) & (vals > 0)
            if key == "mc_value" and spec.mc is None:
                continue
            slope = (asy.estimate_diversity_slope(zip(g[ok], vals[ok])) if ok.sum() >= 2 else None)
            out.append(dict(M=m, source=source, snr_db_min=snr[ok].min() if ok.any() else None,
                            snr_db_max=snr[ok].max() if ok.any() else None,
                            n_points=int(ok.sum()), slope=slope))
    return format_csv(out, DIVERSITY_COLUMNS)
