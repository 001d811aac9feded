import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate as spi

from irsperf.clt_model import CltParams
from irsperf.metrics import BPSK, ser_integrand
from irsperf.special_fn import (
    BESSEL_SEAM,
    DomainError,
    QuadratureError,
    QuadratureRule,
    bessel_k,
    gamma_fn,
    gauss_legendre,
    integrate,
    one_minus_xk1,
    q_func,
)


# -- Q ------------------------------------------------------------------------

def test_q_at_zero_is_half():
    assert q_func(0.0) == 0.5


def test_q_far_tail_vanishes():
    assert 0.0 <= q_func(40.0) < 1e-300


def test_q_matches_trapezoid_of_defining_integral():
    # trapezoid rule on [1, 40] with the Euler-Maclaurin end correction
    t, h = np.linspace(1.0, 40.0, 400_001, retstep=True)
    dens = np.exp(-t * t / 2.0) / math.sqrt(2.0 * math.pi)
    trap = h * (dens.sum() - 0.5 * (dens[0] + dens[-1]))
    deriv = -t * dens
    oracle = trap - h * h / 12.0 * (deriv[-1] - deriv[0])
    assert q_func(1.0) == pytest.approx(oracle, abs=1e-12)


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_q_rejects_non_finite(bad):
    with pytest.raises(DomainError):
        q_func(bad)


def test_q_symmetry_on_random_points():
    x = np.random.default_rng(7).uniform(-10, 10, 1000)
    assert np.max(np.abs(q_func(x) + q_func(-x) - 1.0)) < 1e-12


def test_q_tail_relative_accuracy():
    # Mills-ratio asymptotic series at x = 8 as an independent reference
    x = 8.0
    series = sum((-1) ** k * math.prod(range(1, 2 * k, 2)) / x ** (2 * k) for k in range(8))
    ref = math.exp(-x * x / 2) / (x * math.sqrt(2 * math.pi)) * series
    assert q_func(x) == pytest.approx(ref, rel=1e-9)


@given(st.floats(-30, 30), st.floats(0.001, 5))
def test_q_monotone_decreasing(x, dx):
    assert q_func(x + dx) <= q_func(x)


def test_q_array_shape_preserved():
    out = q_func(np.zeros((2, 3)))
    assert out.shape == (2, 3)
    assert isinstance(q_func(1.0), float)


# -- Bessel K -----------------------------------------------------------------

def test_xk1_small_argument_limit():
    assert 1e-8 * bessel_k(1, 1e-8) == pytest.approx(1.0, abs=1e-6)


def test_k0_matches_integral_representation():
    oracle, _ = spi.quad(lambda t: math.exp(-math.cosh(t)), 0.0, 10.0, epsabs=1e-15, limit=200)
    assert bessel_k(0, 1.0) == pytest.approx(oracle, rel=1e-12)


def test_u_k0_integrates_to_one():
    val, _ = spi.quad(lambda u: u * bessel_k(0, u), 0.0, np.inf, epsabs=1e-12, limit=200)
    assert val == pytest.approx(1.0, abs=1e-8)


def test_k1_exceeds_k0_positive():
    x = np.logspace(-6, math.log10(50.0), 400)
    k0, k1 = bessel_k(0, x), bessel_k(1, x)
    assert np.all(k0 > 0) and np.all(k1 > k0)


@pytest.mark.parametrize("order", [0, 1])
def test_bessel_continuous_at_regime_seam(order):
    lo = bessel_k(order, BESSEL_SEAM * (1 - 1e-13))
    hi = bessel_k(order, BESSEL_SEAM * (1 + 1e-13))
    mid = bessel_k(order, BESSEL_SEAM)
    assert abs(lo - mid) / mid < 1e-10 and abs(hi - mid) / mid < 1e-10


@pytest.mark.parametrize("x", [0.5, 3.0, 40.0, 800.0])
def test_scaled_bessel_consistent(x):
    for order in (0, 1):
        scaled = bessel_k(order, x, scaled=True)
        assert scaled > 0
        if x < 700:
            assert scaled == pytest.approx(math.exp(x) * bessel_k(order, x), rel=1e-12)


@pytest.mark.parametrize("bad", [0.0, -1.0, math.nan])
def test_bessel_domain(bad):
    with pytest.raises(DomainError):
        bessel_k(0, bad)


def test_bessel_order_restricted():
    with pytest.raises(DomainError):
        bessel_k(2, 1.0)


def test_one_minus_xk1_series_matches_direct():
    x = np.array([0.05, 0.3, 0.7, 0.99, 1.0, 1.5])
    direct = 1.0 - x * bessel_k(1, x)
    assert np.allclose(one_minus_xk1(x), direct, rtol=1e-11, atol=0)


def test_one_minus_xk1_tiny_argument_keeps_precision():
    # leading term (x^2/4) * (2 ln(x/2) - 1 + 2 gamma) has the opposite sign
    x = 1e-60
    lead = -(x * x / 4) * (2 * math.log(x / 2) - 1 + 2 * 0.5772156649015329)
    assert one_minus_xk1(x) == pytest.approx(lead, rel=1e-12)
    assert one_minus_xk1(0.0) == 0.0


# -- Gamma ----------------------------------------------------------------------

def test_gamma_identities():
    assert gamma_fn(1.0) == pytest.approx(1.0, rel=1e-15)
    assert gamma_fn(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)


def test_gamma_half_integer_from_recurrence():
    m = 3
    oracle = math.sqrt(math.pi)
    for k in range(m):
        oracle *= k + 0.5
    assert gamma_fn(m + 0.5) == pytest.approx(oracle, rel=1e-13)


@settings(max_examples=200)
@given(st.floats(0.1, 20.0))
def test_gamma_recurrence(t):
    assert gamma_fn(t + 1) / gamma_fn(t) == pytest.approx(t, rel=1e-12)


@pytest.mark.parametrize("bad", [0.0, -2.0, math.inf])
def test_gamma_domain(bad):
    with pytest.raises(DomainError):
        gamma_fn(bad)


# -- quadrature -----------------------------------------------------------------

def test_rule_invariants():
    rule = gauss_legendre()
    assert len(rule) == 64
    assert np.all(np.diff(rule.nodes) > 0)
    assert rule.nodes[0] > 0 and rule.nodes[-1] < math.pi / 2
    assert np.all(rule.weights > 0)
    assert integrate(rule, lambda t: np.ones_like(t)) == pytest.approx(math.pi / 2, abs=1e-12)


def test_rule_sin_squared():
    assert integrate(gauss_legendre(), lambda t: np.sin(t) ** 2) == pytest.approx(math.pi / 4, abs=1e-10)


def test_rule_validation():
    with pytest.raises(ValueError):
        QuadratureRule(np.array([0.0, 1.0]), np.array([1.0, 1.0]))
    with pytest.raises(ValueError):
        QuadratureRule(np.array([0.5, 0.2]), np.array([1.0, 1.0]))
    with pytest.raises(ValueError):
        QuadratureRule(np.array([0.2, 0.5]), np.array([1.0, -1.0]))


def test_integrate_names_bad_node():
    rule = gauss_legendre(8)
    target = rule.nodes[3]

    def f(t):
        return np.where(t == target, np.nan, 1.0)

    with pytest.raises(QuadratureError, match="node 3"):
        integrate(rule, f)


def _adaptive_simpson_oracle(f, a, b, tol=1e-12):
    """Composite Simpson with interval halving until successive results agree."""
    n = 16
    prev = None
    while True:
        x = np.linspace(a, b, 2 * n + 1)
        y = f(x[1:-1])
        # the integrand tends to 0 as theta -> 0
        y0 = 0.0
        y1 = f(np.array([b]))[0]
        y = np.concatenate([[y0], y, [y1]])
        h = (b - a) / (2 * n)
        cur = h / 3 * (y[0] + y[-1] + 4 * y[1:-1:2].sum() + 2 * y[2:-1:2].sum())
        if prev is not None and abs(cur - prev) < tol:
            return cur
        prev = cur
        n *= 2


@pytest.mark.parametrize("gamma_bar", [0.3, 3.0, 30.0])
def test_ser_integrand_matches_adaptive_oracle(gamma_bar):
    p = CltParams.from_moments(2.0, 0.6)
    f = ser_integrand(p, gamma_bar, BPSK)
    got = integrate(gauss_legendre(), f)
    assert f(np.array([1e-9]))[0] < 1e-6
    oracle = _adaptive_simpson_oracle(f, 0.0, math.pi / 2)
    assert got == pytest.approx(oracle, abs=1e-9)


@pytest.mark.parametrize("gamma_bar", [0.01, 1.0, 100.0, 1e4])
def test_node_doubling_converges(gamma_bar):
    p = CltParams.from_moments(5.0, 1.5)
    f = ser_integrand(p, gamma_bar, BPSK)
    a = integrate(gauss_legendre(64), f)
    b = integrate(gauss_legendre(128), f)
    assert abs(a - b) <= 1e-9 * abs(b)
