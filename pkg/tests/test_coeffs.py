import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import ORACLES, rel
from specact import coeffs
from specact.coeffs import CoeffKind, MomentKind, Representation as R, coeff, limit_coeff
from specact.kernels import Quantity, Statistics
from specact.specfun import DomainError, bessel_k

KINDS = list(CoeffKind)


@pytest.mark.parametrize("kind,a,mu,want", ORACLES["coeff"])
def test_bessel_series_matches_oracle(kind, a, mu, want):
    assert rel(coeff(CoeffKind(kind), a, mu, R.BESSEL).value, want) < 1e-12


@pytest.mark.parametrize("kind,a,mu,want", ORACLES["coeff"])
def test_poisson_series_matches_oracle(kind, a, mu, want):
    r = coeff(CoeffKind(kind), a, mu, R.POISSON)
    assert abs(r.value - want) <= max(r.est_error, 1e-12 * max(1, abs(want)))


@pytest.mark.parametrize("kind,a,mu,want", ORACLES["coeff"])
def test_xi_series_matches_oracle(kind, a, mu, want):
    k = CoeffKind(kind)
    if (k, a) in ((CoeffKind.OMEGA, 0.5), (CoeffKind.KAPPA, 0.5), (CoeffKind.CHI, 0.0)):
        pytest.skip("limit function has a pole here; the series needs its own limit")
    assert rel(coeff(k, a, mu, R.XI).value, want) < 1e-8


@pytest.mark.parametrize("kind,a,mu,want",
                         [r for r in ORACLES["coeff"] if r[1] < 0 and r[2] == -1])
def test_quadrature_routes_match_oracle(kind, a, mu, want):
    k = CoeffKind(kind)
    assert rel(coeffs.mellin_coeff_oracle(k, a, mu), want) < 1e-7
    assert rel(coeff(k, a, mu, R.QUADRATURE).value, want) < 1e-7


def test_mellin_route_needs_negative_order():
    with pytest.raises(DomainError):
        coeffs.mellin_coeff_oracle(CoeffKind.GAMMA, 0.0, -1.0)


@pytest.mark.parametrize("a", [-2, -1, -0.5, 0, 0.5, 1, 2])
def test_gamma_two_series_agree(a):
    b = coeff(CoeffKind.GAMMA, a, -1.0, R.BESSEL).value
    p = coeff(CoeffKind.GAMMA, a, -1.0, R.POISSON).value
    assert abs(b - p) < 1e-9


@pytest.mark.parametrize("a", [-1, 0, 1, 2])
def test_chi_two_series_agree(a):
    b = coeff(CoeffKind.CHI, a, -1.0, R.BESSEL).value
    p = coeff(CoeffKind.CHI, a, -1.0, R.POISSON).value
    assert abs(b - p) < 1e-9


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(KINDS), st.floats(-3.0, 3.0), st.floats(-4.0, -0.3))
def test_bessel_and_poisson_agree_within_estimates(kind, a, mu):
    b = coeff(kind, a, mu, R.BESSEL)
    p = coeff(kind, a, mu, R.POISSON)
    assert abs(b.value - p.value) <= b.est_error + p.est_error + 1e-12 * max(1, abs(b.value))


@pytest.mark.parametrize("kind,a,want", ORACLES["limit"])
def test_limit_functions_match_oracle(kind, a, want):
    assert rel(limit_coeff(CoeffKind(kind), a), want) < 1e-13


def test_limit_constants():
    assert limit_coeff(CoeffKind.GAMMA, 0.0) == pytest.approx(math.log(2), rel=1e-14)
    assert limit_coeff(CoeffKind.GAMMA, 0.5) == pytest.approx(1 / (2 * math.sqrt(math.pi)), rel=1e-14)
    assert limit_coeff(CoeffKind.CHI, 1.0) == pytest.approx(1 / 24, rel=1e-14)


@pytest.mark.parametrize("kind,a", [(CoeffKind.CHI, 0.0), (CoeffKind.OMEGA, 0.5), (CoeffKind.KAPPA, 0.5)])
def test_limit_function_poles(kind, a):
    with pytest.raises(DomainError):
        limit_coeff(kind, a)


@pytest.mark.parametrize("a", [-1.0, 0.5, 1.0, 2.0])
def test_small_potential_recovers_limit(a):
    target = limit_coeff(CoeffKind.GAMMA, a)
    gaps = [abs(coeff(CoeffKind.GAMMA, a, mu).value - target) for mu in (-1e-1, -1e-2, -1e-3)]
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 1e-4


def test_gamma_half_near_zero_potential_any_rep():
    for rep in (R.POISSON, R.XI):
        assert coeff(CoeffKind.GAMMA, 0.5, -1e-6, rep).value == pytest.approx(
            1 / (2 * math.sqrt(math.pi)), abs=1e-6)


@pytest.mark.parametrize("kind", KINDS)
def test_xi_radius_is_a_hard_error(kind):
    with pytest.raises(DomainError):
        coeff(kind, 0.3, -1.01 * kind.xi_radius, R.XI)


def test_fermi_xi_series_refuses_mu_minus_four():
    with pytest.raises(DomainError):
        coeff(CoeffKind.GAMMA, 1.0, -4.0, R.XI)


def test_positive_potential_rejected():
    with pytest.raises(DomainError):
        coeff(CoeffKind.GAMMA, 1.0, 0.5)
    with pytest.raises(DomainError):
        coeff(CoeffKind.CHI, 1.0, 0.0)


@pytest.mark.parametrize("kind", [CoeffKind.OMEGA, CoeffKind.KAPPA])
@pytest.mark.parametrize("mu", [-0.5, -4.0])
def test_poisson_limit_points_agree_with_bessel(kind, mu):
    for a in (0.5, -0.5, -1.5, -2.5):
        b = coeff(kind, a, mu, R.BESSEL).value
        p = coeff(kind, a, mu, R.POISSON).value
        assert abs(b - p) < 1e-6 * max(1, abs(b))


def test_bessel_terms_alternate_between_fermi_and_bose():
    for a in (-1.0, 0.5, 2.0):
        g = coeffs.bessel_terms(CoeffKind.GAMMA, a, -1.0, 10)
        c = coeffs.bessel_terms(CoeffKind.CHI, a, -1.0, 10)
        sign = np.array([(-1) ** (n + 1) for n in range(1, 11)])
        np.testing.assert_allclose(g, sign * c, rtol=1e-15, atol=0)


def test_bose_weight_route_fails_at_zero_potential():
    with pytest.raises(DomainError):
        coeff(CoeffKind.KAPPA, -1.0, 0.0, R.QUADRATURE)
    v = coeff(CoeffKind.OMEGA, -1.0, 0.0, R.QUADRATURE).value
    assert rel(v, limit_coeff(CoeffKind.OMEGA, -1.0)) < 1e-8


@pytest.mark.parametrize("kind,nu,mu,want", ORACLES["moment"])
def test_moment_closed_forms(kind, nu, mu, want):
    mk = MomentKind.FERMI_ENTROPY if kind == "gamma" else MomentKind.BOSE_ENTROPY
    assert rel(coeffs.moment_closed(mk, nu, mu), want) < 1e-12
    stat = Statistics.FERMI if kind == "gamma" else Statistics.BOSE
    assert rel(coeffs.moment_quadrature(stat, Quantity.ENTROPY, nu, mu), want) < 1e-8


def test_moment_fermi_nu0_mu1_as_bessel_sum():
    s = sum((-1) ** (n + 1) * bessel_k(2.0, n) for n in range(1, 60))
    assert coeffs.moment_closed(MomentKind.FERMI_ENTROPY, 0.0, -1.0) == pytest.approx(s, rel=1e-13)


def test_moment_domain():
    with pytest.raises(DomainError):
        coeffs.moment_closed(MomentKind.FERMI_ENTROPY, -1.0, -1.0)
    with pytest.raises(DomainError):
        coeffs.moment_closed(MomentKind.BOSE_ENTROPY, 1.0, 0.0)


@pytest.mark.parametrize("nu,mu", [(0.0, -1.0), (2.0, -1.0)])
def test_log_and_energy_moments(nu, mu):
    q_log = coeffs.moment_quadrature(Statistics.FERMI, Quantity.ENTROPY, nu, mu) - \
        coeffs.moment_quadrature(Statistics.FERMI, Quantity.ENERGY, nu, mu)
    assert rel(coeffs.fermi_log_moment(nu, mu), q_log) < 1e-8
    assert rel(coeffs.fermi_energy_moment(nu, mu),
               coeffs.moment_quadrature(Statistics.FERMI, Quantity.ENERGY, nu, mu)) < 1e-8


def test_auto_representation_switches():
    assert coeffs.auto_representation(CoeffKind.GAMMA, -1.0) is R.BESSEL
    assert coeffs.auto_representation(CoeffKind.GAMMA, -0.01) is R.XI


def test_result_fields():
    r = coeff(CoeffKind.GAMMA, 1.0, -1.0, R.BESSEL)
    assert r.rep is R.BESSEL and r.terms_used > 0 and r.est_error >= 0
