"""Built-in sweeps that regenerate the reference figures as CSV.

Each figure maps to one or more *families*; a family is one CSV
document. Parameters the captions leave open are fixed here:

* fig2 uses unit path gains, so ``Y`` is in units of ``lambda``.
* fig4 uses ``eta = 0.9`` for Cases 2 and 3; the direct link (Case 4)
  is a Rayleigh link over ``d_sd = 100`` m.
* fig5 and fig6 use ``eta = 0.9``. fig5 runs M = 128, 256, 512; the
  first entry is the baseline for the double/quadruple comparisons.
"""

from __future__ import annotations

from dataclasses import replace

from .metrics import BPSK
from .scenario import REFERENCE_PATH_LOSS, Geometry, PathLossModel
from .sweep import (
    CSV_COLUMNS,
    HIST_COLUMNS,
    McConfig,
    SweepSpec,
    direct_rows,
    format_csv,
    histogram_rows,
    sweep_rows,
)

__all__ = ["FIGURES", "DEFAULT_SEED", "figure_specs", "reproduce"]

DEFAULT_SEED = 12345

FIGURES = ("fig2", "fig4", "fig5", "fig6")

FIG5_M = (128, 256, 512)
FIG6_M = (32, 64, 128, 256)

_UNIT_GAIN = PathLossModel(0.0, 2.0)  # 0 dB at the 1 m reference distance


def figure_specs(figure: str, n_samples: int | None = None, seed: int = DEFAULT_SEED,
                 quad_nodes: int = 64) -> dict[str, SweepSpec]:
    """Family name -> :class:`SweepSpec` for one figure."""
    if figure not in FIGURES:
        raise KeyError(figure)

    def mc(default_n: int) -> McConfig:
        return McConfig(n_samples or default_n, seed)

    if figure == "fig2":
        base = SweepSpec("pdf", (0.0, 0.0, 1.0), (32,), 0.8, Geometry(1.0, 1.0),
                         _UNIT_GAIN, mc=mc(1_000_000), bins=80)
        pairs = ((8, 0.8), (32, 0.8), (128, 0.8), (32, 0.5))
        return {f"fig2_M{m}_eta{eta}": replace(base, m_list=(m,), eta=eta) for m, eta in pairs}

    if figure == "fig4":
        snr = (100.0, 240.0, 1.0)
        out = {}
        for name, d, eta in (("case1_eta0.9", 51.0, 0.9), ("case1_eta0.5", 51.0, 0.5),
                             ("case2", 80.0, 0.9), ("case3", 170.0, 0.9)):
            out[f"fig4_{name}"] = SweepSpec("ser", snr, (32,), eta, Geometry(d, d, 100.0),
                                            REFERENCE_PATH_LOSS, BPSK, mc=mc(100_000),
                                            quad_nodes=quad_nodes)
        out["fig4_direct"] = SweepSpec("ser", snr, (1,), 1.0, Geometry(51.0, 51.0, 100.0),
                                       REFERENCE_PATH_LOSS, BPSK, mc=mc(100_000))
        return out

    if figure == "fig5":
        return {"fig5": SweepSpec("outage", (110.0, 170.0, 1.0), FIG5_M, 0.9,
                                  Geometry(30.0, 20.0), REFERENCE_PATH_LOSS, gamma_th_db=0.0,
                                  mc=mc(100_000), quad_nodes=quad_nodes)}

    return {"fig6": SweepSpec("rate", (120.0, 200.0, 2.0), FIG6_M, 0.9, Geometry(30.0, 20.0),
                              REFERENCE_PATH_LOSS, mc=mc(100_000), quad_nodes=quad_nodes)}


def reproduce(figure: str, n_samples: int | None = None, seed: int = DEFAULT_SEED,
              quad_nodes: int = 64) -> dict[str, str]:
    """Family name -> CSV text for `figure`."""
    out = {}
    for name, spec in figure_specs(figure, n_samples, seed, quad_nodes).items():
        if spec.metric == "pdf":
            out[name] = format_csv(histogram_rows(spec), HIST_COLUMNS)
        elif name == "fig4_direct":
            out[name] = format_csv(direct_rows(spec), CSV_COLUMNS)
        else:
            out[name] = format_csv(sweep_rows(spec), CSV_COLUMNS)
    return out
