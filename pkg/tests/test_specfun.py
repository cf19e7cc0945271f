import math

import pytest
from hypothesis import given, settings, strategies as st

from conftest import ORACLES, rel
from specact import specfun as sf
from specact.specfun import ConvergenceError, DomainError, SeriesControl


def test_gamma_classical_values():
    assert sf.gamma_fn(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    assert sf.gamma_fn(5) == pytest.approx(24.0, rel=1e-14)
    assert sf.gamma_fn(1.5) == pytest.approx(math.sqrt(math.pi) / 2, rel=1e-14)


@pytest.mark.parametrize("x", list(ORACLES["gamma"]))
def test_gamma_matches_oracle(x):
    assert rel(sf.gamma_fn(float(x)), ORACLES["gamma"][x], 0) < 1e-13


@pytest.mark.parametrize("x", [0.0, -1.0, -7.0])
def test_gamma_poles(x):
    with pytest.raises(DomainError):
        sf.gamma_fn(x)


@given(st.floats(-25.0, 25.0).filter(lambda x: abs(x - round(x)) > 1e-3))
def test_gamma_recurrence(x):
    assert rel(sf.gamma_fn(x + 1.0), x * sf.gamma_fn(x), 0) < 1e-12


def test_sinpi_is_exact_at_integers_and_halves():
    assert sf.sinpi(-3.0) == 0.0
    assert sf.sinpi(2.5) == 1.0
    assert sf.sinpi(-0.5) == -1.0


@pytest.mark.parametrize("s", list(ORACLES["zeta"]))
def test_zeta_matches_oracle(s):
    assert rel(sf.riemann_zeta(float(s)), ORACLES["zeta"][s]) < 1e-13


def test_zeta_special_values():
    assert sf.riemann_zeta(2.0) == pytest.approx(math.pi ** 2 / 6, rel=1e-14)
    assert sf.riemann_zeta(0.0) == pytest.approx(-0.5, abs=1e-15)
    assert abs(sf.riemann_zeta(-2.0)) < 1e-15


def test_zeta_pole_and_loud_failure():
    with pytest.raises(DomainError):
        sf.riemann_zeta(1.0)
    with pytest.raises(DomainError):
        sf.riemann_zeta(1.0 + 1e-8)
    with pytest.raises(ConvergenceError):
        sf.riemann_zeta(0.5, SeriesControl(1e-15, 1e-16, 3))


@pytest.mark.parametrize("s", list(ORACLES["xi"]))
def test_xi_matches_oracle(s):
    assert rel(sf.riemann_xi(float(s)), ORACLES["xi"][s], 0) < 1e-12


@given(st.floats(-6.0, 6.0))
def test_xi_symmetry(s):
    assert rel(sf.riemann_xi(s), sf.riemann_xi(1.0 - s), 0) < 1e-10


def test_log_xi_agrees_with_xi():
    for s in (2.0, 5.5, 12.0, 30.0):
        assert sf.log_riemann_xi(s) == pytest.approx(math.log(sf.riemann_xi(s)), rel=1e-13)


@pytest.mark.parametrize("nu,z,want", ORACLES["bessel_k"])
def test_bessel_k_matches_oracle(nu, z, want):
    assert rel(sf.bessel_k(nu, z), want, 0) < 1e-12


def test_bessel_k_closed_forms_and_asymptotics():
    assert sf.bessel_k(0.5, 2.0) == pytest.approx(math.sqrt(math.pi / 4) * math.exp(-2), rel=1e-12)
    assert sf.bessel_k(-1.5, 1.0) == sf.bessel_k(1.5, 1.0)
    for nu in (0.5, 1.5, 2.5):
        for z in (0.3, 1.0, 7.0):
            assert rel(sf.bessel_k(nu, z), sf.k_half_integer(nu, z), 0) < 1e-10


def test_bessel_k_large_z_ratio_within_five_percent():
    # first correction (4 nu^2 - 1)/(8 z) is 11% at nu=3, z=40; expected to fail
    assert sf.bessel_k(3.0, 40.0) / (math.sqrt(math.pi / 80) * math.exp(-40)) == pytest.approx(1, rel=0.05)


def test_bessel_k_large_z_law():
    for z in (40.0, 400.0, 4000.0):
        lead = math.sqrt(math.pi / (2 * z))
        assert sf.bessel_k_scaled(3.0, z) / lead == pytest.approx(1 + 35 / (8 * z), abs=500 / z ** 2)


@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0, 3.5])
def test_bessel_small_argument_law(alpha):
    z = 1e-4
    assert sf.bessel_k(alpha, z) * (z / 2) ** alpha * 2 / sf.gamma_fn(alpha) == pytest.approx(1, abs=1e-3)


@settings(max_examples=40)
@given(st.floats(-4.0, 4.0), st.floats(0.2, 20.0))
def test_bessel_recurrence(nu, z):
    lhs = z * sf.bessel_k(nu - 1, z) - z * sf.bessel_k(nu + 1, z) + 2 * nu * sf.bessel_k(nu, z)
    assert abs(lhs) < 1e-9 * z * sf.bessel_k(nu + 1, z)


def test_bessel_domain():
    with pytest.raises(DomainError):
        sf.bessel_k(1.0, 0.0)


@pytest.mark.parametrize("t", list(ORACLES["theta"]))
def test_theta_matches_oracle(t):
    assert rel(sf.theta(float(t)), ORACLES["theta"][t], 0) < 1e-13


def test_theta_examples():
    assert abs(sf.theta(1e6) - 1.0) < 1e-12
    assert sf.theta(0.25) == pytest.approx(2 * sf.theta(4.0), rel=1e-14)
    partial = 1 + 2 * math.exp(-math.pi) + 2 * math.exp(-4 * math.pi) + 2 * math.exp(-9 * math.pi)
    assert sf.theta(1.0) == pytest.approx(partial, rel=1e-15)


@given(st.floats(0.05, 20.0))
def test_theta_inversion_and_derivative(t):
    assert rel(sf.theta(t), sf.theta(1 / t) / math.sqrt(t), 0) < 1e-12
    h = 1e-4 * t
    fd = (sf.theta(t + h) - sf.theta(t - h)) / (2 * h)
    assert abs(sf.theta_prime(t) - fd) < 1e-6 * max(1.0, abs(fd))


def test_theta_domain():
    with pytest.raises(DomainError):
        sf.theta(0.0)
