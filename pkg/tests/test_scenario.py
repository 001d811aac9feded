import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from irsperf.scenario import (
    REFERENCE_PATH_LOSS,
    Geometry,
    IrsLink,
    PathLossModel,
    build_link,
    db_to_linear,
    linear_to_db,
    path_loss_linear,
)
from irsperf.special_fn import DomainError


def test_reference_distance_leaves_only_zeta0():
    assert path_loss_linear(REFERENCE_PATH_LOSS, 1.0) == pytest.approx(10 ** -4.2, rel=1e-14)


def test_free_space_like_value():
    assert path_loss_linear(PathLossModel(0.0, 2.0), 10.0) == pytest.approx(1e-2, rel=1e-14)


def test_fig5_source_distance():
    oracle = 10 ** (-(42 + 35 * math.log10(30)) / 10)
    assert path_loss_linear(REFERENCE_PATH_LOSS, 30.0) == pytest.approx(oracle, rel=1e-13)


@pytest.mark.parametrize("d", [0.0, -3.0, math.inf])
def test_path_loss_domain(d):
    with pytest.raises(DomainError):
        path_loss_linear(REFERENCE_PATH_LOSS, d)


@given(st.floats(1.01, 1e4), st.floats(1.001, 2.0), st.floats(1.0, 6.0))
def test_path_loss_decreasing_in_distance_and_exponent(d, factor, ups):
    model = PathLossModel(30.0, ups)
    assert path_loss_linear(model, d * factor) < path_loss_linear(model, d)
    assert path_loss_linear(PathLossModel(30.0, ups + 0.5), d) < path_loss_linear(model, d)


def test_db_roundtrip():
    x = np.array([-20.0, 0.0, 3.0, 150.0])
    assert np.allclose(linear_to_db(db_to_linear(x)), x)
    assert db_to_linear(10.0) == pytest.approx(10.0)


def test_unit_link_lambda():
    link = IrsLink.uniform(1)
    assert link.lambda_sq[0] == 0.25
    assert link.m_elements == 1


def test_fig4_case1_link_all_equal():
    link = build_link(Geometry(51.0, 51.0, 100.0), REFERENCE_PATH_LOSS, 32, 0.9)
    z = path_loss_linear(REFERENCE_PATH_LOSS, 51.0)
    assert link.m_elements == 32
    assert np.all(link.lambda_sq == link.lambda_sq[0])
    assert link.lambda_sq[0] == pytest.approx(z * z * 0.81 / 4, rel=1e-14)


def test_heterogeneous_elements_match_elementwise_oracle():
    eta = np.array([0.5, 0.9])
    zh = np.array([1e-6, 3e-7])
    zg = np.array([2e-5, 4e-8])
    link = IrsLink(eta, zh, zg)
    oracle = [zh[i] * zg[i] * eta[i] ** 2 / 4 for i in range(2)]
    assert list(link.lambda_sq) == oracle


def test_build_link_recompute_is_bit_stable():
    link = build_link(Geometry(30.0, 20.0), REFERENCE_PATH_LOSS, 16, 0.7)
    again = link.zeta_h * link.zeta_g * link.eta**2 / 4.0
    assert np.array_equal(again, link.lambda_sq)


def test_link_is_read_only():
    link = IrsLink.uniform(4)
    with pytest.raises(ValueError):
        link.lambda_sq[0] = 1.0
    with pytest.raises(AttributeError):
        link.eta = np.ones(4)


def test_per_element_eta_list():
    link = build_link(Geometry(10.0, 10.0), REFERENCE_PATH_LOSS, 2, [0.5, 0.9])
    assert link.lambda_sq[1] / link.lambda_sq[0] == pytest.approx((0.9 / 0.5) ** 2)


@pytest.mark.parametrize(
    "kwargs",
    [dict(m_elements=0, eta=0.5), dict(m_elements=3, eta=1.5), dict(m_elements=3, eta=[0.5, 0.5]),
     dict(m_elements=2.5, eta=0.5), dict(m_elements=2, eta=0.0)],
)
def test_build_link_rejects_bad_inputs(kwargs):
    with pytest.raises(ValueError):
        build_link(Geometry(10.0, 10.0), REFERENCE_PATH_LOSS, **kwargs)


@pytest.mark.parametrize("args", [(0.0, 1.0), (1.0, -1.0), (1.0, 1.0, math.nan)])
def test_geometry_validation(args):
    with pytest.raises(ValueError):
        Geometry(*args)


def test_empty_link_rejected():
    with pytest.raises(ValueError):
        IrsLink(np.array([]), np.array([]), np.array([]))
