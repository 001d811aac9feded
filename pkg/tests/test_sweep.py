import csv
import io
import math

import numpy as np
import pytest

from irsperf.asymptotics import asymptotic_outage, asymptotic_params
from irsperf.clt_model import clt_params
from irsperf.figures import FIG6_M, figure_specs, reproduce
from irsperf.metrics import BPSK, outage, outage_exact_m1, ser, ser_upper
from irsperf.scenario import REFERENCE_PATH_LOSS, Geometry, build_link
from irsperf.sweep import (
    CSV_COLUMNS,
    HIST_COLUMNS,
    ConfigError,
    McConfig,
    SweepSpec,
    format_csv,
    parse_config,
    run_diversity,
    run_sweep,
    snr_grid_db,
)

FIG5_CONFIG = """\
# outage grid in the fig5 setting
[sweep]
metric = outage
snr_db = 110, 150, 10
m_list = 16, 32, 64
eta = 0.9
gamma_th_db = 0

[geometry]
d_si = 30
d_di = 20

[pathloss]
zeta0_db = 42
exponent = 3.5
"""


def _rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_parse_full_config():
    spec = parse_config(FIG5_CONFIG + "\n[mc]\nn_samples = 500\nseed = 9\n[modulation]\nalpha = 1\nbeta = 2\n")
    assert spec.metric == "outage"
    assert spec.snr_db == (110.0, 150.0, 10.0)
    assert spec.m_list == (16, 32, 64)
    assert spec.geometry == Geometry(30.0, 20.0, 100.0)
    assert spec.mc == McConfig(500, 9)
    assert spec.modulation == BPSK


def test_snr_grid_includes_stop():
    assert list(snr_grid_db((0, 30, 7.5))) == [0, 7.5, 15, 22.5, 30]
    assert list(snr_grid_db((0, 1, 0.3))) == [0, 0.3, 0.6, 0.9]


def test_fig5_style_sweep_matches_library_calls():
    rows = _rows(run_sweep(parse_config(FIG5_CONFIG)))
    assert len(rows) == 3 * 5
    assert list(rows[0].keys()) == list(CSV_COLUMNS)
    for r in rows[::4]:
        m = int(r["M"])
        link = build_link(Geometry(30.0, 20.0), REFERENCE_PATH_LOSS, m, 0.9)
        g = 10 ** (float(r["snr_db"]) / 10)
        assert float(r["analytic"]) == pytest.approx(outage(clt_params(link), g, 1.0), rel=1e-9)
        assert float(r["asymptotic"]) == pytest.approx(
            asymptotic_outage(asymptotic_params(link), g, 1.0), rel=1e-9)
        assert r["mc_value"] == "" and r["seed"] == ""


def test_single_element_rows_use_exact_outage():
    spec = SweepSpec("outage", (0.0, 20.0, 10.0), (1,), 1.0, Geometry(1.0, 1.0),
                     REFERENCE_PATH_LOSS.__class__(0.0, 2.0))
    rows = _rows(run_sweep(spec))
    for r in rows:
        g = 10 ** (float(r["snr_db"]) / 10)
        assert float(r["analytic"]) == pytest.approx(outage_exact_m1(0.25, g, 1.0), rel=1e-9)
        assert r["asymptotic"] != ""


def test_ser_rows_carry_upper_bound():
    spec = SweepSpec("ser", (150.0, 160.0, 10.0), (8,), 0.9, Geometry(20.0, 20.0), REFERENCE_PATH_LOSS)
    rows = _rows(run_sweep(spec))
    link = spec.link(8)
    g = 10 ** 15
    assert float(rows[0]["analytic"]) == pytest.approx(ser(clt_params(link), g, BPSK), rel=1e-9)
    assert float(rows[0]["analytic_ub"]) == pytest.approx(ser_upper(clt_params(link), g, BPSK), rel=1e-9)


def test_same_spec_same_bytes():
    text = FIG5_CONFIG.replace("[sweep]", "[mc]\nn_samples = 2000\nseed = 3\n\n[sweep]")
    assert run_sweep(parse_config(text)) == run_sweep(parse_config(text))


def test_mc_columns_filled_when_requested():
    text = FIG5_CONFIG + "\n[mc]\nn_samples = 2000\nseed = 3\n"
    rows = _rows(run_sweep(parse_config(text)))
    assert all(r["n_samples"] == "2000" and r["seed"] == "3" for r in rows)


def test_format_csv_blank_cells_and_lf():
    out = format_csv([dict(metric="x", M=2, eta=0.5, snr_db=1.0, analytic=float("nan"))], CSV_COLUMNS)
    assert "\r" not in out
    assert out.splitlines()[1] == "x,2,0.5,1,,,,,,,,"


@pytest.mark.parametrize(
    "mutation,field,line",
    [
        (("eta = 0.9", "eta = 1.9"), "sweep.eta", 6),
        (("m_list = 16, 32, 64", "m_list = 16, x"), "sweep.m_list", 5),
        (("exponent = 3.5", "exponent = -2"), "pathloss.exponent", 15),
        (("metric = outage", "metric = bler"), "sweep.metric", 3),
        (("d_di = 20", "d_dj = 20"), "geometry.d_dj", 11),
    ],
)
def test_config_errors_identify_line_and_field(mutation, field, line):
    bad = FIG5_CONFIG.replace(*mutation)
    with pytest.raises(ConfigError) as info:
        parse_config(bad)
    assert info.value.field == field
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_config_unknown_section_and_syntax():
    with pytest.raises(ConfigError) as info:
        parse_config(FIG5_CONFIG + "[extras]\nfoo = 1\n")
    assert info.value.line == 16
    with pytest.raises(ConfigError):
        parse_config("metric = outage\n")
    with pytest.raises(ConfigError):
        parse_config(FIG5_CONFIG.replace("d_si = 30\n", ""))


def test_diversity_output():
    text = FIG5_CONFIG.replace("snr_db = 110, 150, 10", "snr_db = 150, 170, 5").replace(
        "m_list = 16, 32, 64", "m_list = 16")
    rows = _rows(run_diversity(parse_config(text)))
    assert [r["source"] for r in rows] == ["analytic", "asymptotic"]
    assert float(rows[1]["slope"]) == pytest.approx(16.0, abs=1e-9)


def test_reproduce_fig4_families():
    docs = reproduce("fig4", n_samples=500)
    assert set(docs) == {"fig4_case1_eta0.9", "fig4_case1_eta0.5", "fig4_case2", "fig4_case3", "fig4_direct"}
    direct = _rows(docs["fig4_direct"])
    assert {r["metric"] for r in direct} == {"ser_direct"} and direct[0]["M"] == "0"
    specs = figure_specs("fig4")
    assert specs["fig4_case2"].geometry.d_si == 80.0
    assert specs["fig4_case3"].geometry.d_si == 170.0
    assert specs["fig4_case1_eta0.5"].eta == 0.5


def test_reproduce_fig6_columns():
    rows = _rows(reproduce("fig6", n_samples=500)["fig6"])
    assert sorted({int(r["M"]) for r in rows}) == list(FIG6_M)
    assert all(r["analytic_lb"] and r["analytic_ub"] and r["mc_value"] for r in rows)


def test_reproduce_fig2_histograms():
    docs = reproduce("fig2", n_samples=20_000)
    assert len(docs) == 4
    for text in docs.values():
        rows = _rows(text)
        assert list(rows[0].keys()) == list(HIST_COLUMNS)
        centers = np.array([float(r["bin_center"]) for r in rows])
        dens = np.array([float(r["density"]) for r in rows])
        assert np.sum(dens) * (centers[1] - centers[0]) == pytest.approx(1.0, abs=1e-2)


def test_spec_validation():
    with pytest.raises(ConfigError):
        SweepSpec("outage", (10.0, 0.0, 1.0), (4,), 0.9, Geometry(1.0, 1.0))
    with pytest.raises(ConfigError):
        SweepSpec("outage", (0.0, 10.0, 1.0), (), 0.9, Geometry(1.0, 1.0))
