import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from specact.spectra import (
    HeatExpansion, MissingZetaDatum, Spectrum, SpectrumFileError, circle_heat_expansion,
    circle_spectrum, direct_sum, empty_heat_expansion, heat_trace, heat_trace_k, parse_spectrum,
    rho_lk, spectrum_from_file, torus_heat_expansion, torus_spectrum,
)
from specact.specfun import DomainError

spectra = st.lists(st.tuples(st.floats(-50, 50).filter(lambda x: abs(x) > 1e-3),
                             st.integers(1, 5)), max_size=12).map(Spectrum)


def test_circle_modes():
    assert circle_spectrum(3).modes == ((-3, 1), (-2, 1), (-1, 1), (1, 1), (2, 1), (3, 1))


def test_circle_leading_heat_trace_as_printed():
    # sqrt(t) * trace = sqrt(pi) - sqrt(t); the constant term is 1e-2 here; expected to fail
    t = 1e-4
    trace = heat_trace(circle_spectrum(2000), t)
    assert abs(math.sqrt(t) * trace - math.sqrt(math.pi)) < 1e-6


def test_circle_leading_heat_trace():
    t = 1e-4
    trace = heat_trace(circle_spectrum(2000), t)
    assert abs(math.sqrt(t) * (trace + 1) - math.sqrt(math.pi)) < 1e-6


@pytest.mark.parametrize("t", [1e-5, 1e-4, 1e-3])
def test_circle_two_term_law(t):
    assert abs(heat_trace(circle_spectrum(5000), t) - (math.sqrt(math.pi / t) - 1)) < 1e-8


def test_torus_reduces_to_circle_in_one_dimension():
    assert torus_spectrum(1, 7).modes == circle_spectrum(7).modes


def test_torus_two_dimensional_leading_term():
    t = 1e-4
    assert abs(t * heat_trace(torus_spectrum(2, 300), t) - 2 * math.pi) < 1e-3


def test_torus_has_no_zero_mode_and_counts_lattice():
    s = torus_spectrum(2, 2)
    assert 0 not in s.eigenvalues
    # 24 nonzero lattice vectors, spinor dimension 2
    assert s.total_multiplicity == 24 * 2
    with pytest.raises(DomainError):
        torus_spectrum(4, 2)


def test_direct_sum_merges():
    s = direct_sum(circle_spectrum(2), circle_spectrum(2))
    assert all(m == 2 for _, m in s.modes)


@given(spectra, spectra, st.integers(0, 3), st.floats(1e-3, 2.0))
def test_heat_trace_additive(s1, s2, k, t):
    whole = heat_trace_k(direct_sum(s1, s2), k, t)
    parts = heat_trace_k(s1, k, t) + heat_trace_k(s2, k, t)
    assert whole == pytest.approx(parts, rel=1e-13, abs=1e-300)


@given(st.integers(0, 3), st.floats(1e-3, 1.0))
def test_heat_trace_decreasing(k, t):
    s = circle_spectrum(50)
    assert heat_trace_k(s, k, t) > heat_trace_k(s, k, t * 1.01) > 0


def test_file_format(tmp_path):
    p = tmp_path / "s.txt"
    p.write_text("# two modes\n1.0,2\n-1.0,2\n")
    s = spectrum_from_file(p)
    assert s.modes == ((-1.0, 2), (1.0, 2))
    p.write_text("0.0,1\n")
    with pytest.raises(DomainError):
        spectrum_from_file(p)
    with pytest.raises(SpectrumFileError, match="line 2"):
        parse_spectrum("1,1\nnope\n")


def test_trace_examples():
    assert heat_trace_k(Spectrum(((1.0, 1),)), 0, 1.0) == pytest.approx(math.exp(-1), rel=1e-15)
    s, t, h = circle_spectrum(2000), 1e-4, 1e-8
    fd = -(heat_trace(s, t + h) - heat_trace(s, t - h)) / (2 * h)
    assert heat_trace_k(s, 2, t) == pytest.approx(fd, rel=1e-6)
    assert heat_trace_k(s, 1, t) == pytest.approx(1 / t, rel=1e-2)


def test_circle_expansion_terms():
    h = circle_heat_expansion()
    for t in (1e-3, 0.1, 2.0):
        assert rho_lk(h, 0, 0, t) == pytest.approx(math.sqrt(math.pi / t), rel=1e-15)
        assert rho_lk(h, 1, 0, t) == pytest.approx(-1.0, rel=1e-15)
    # z + k/2 = -1 uses the factorial branch: 2 zeta(-2) vanishes
    assert abs(rho_lk(h, 1, 0, 1.0) - -1.0) < 1e-15
    assert h.zeta_value(-1.0) == pytest.approx(0.0, abs=1e-15)


def test_heat_expansion_consistency():
    for h in (circle_heat_expansion(), torus_heat_expansion(2), torus_heat_expansion(3)):
        assert h.consistency_residual() < 1e-13


def test_heat_expansion_json_round_trip(tmp_path):
    h = circle_heat_expansion()
    path = tmp_path / "h.json"
    h.dump(path)
    back = HeatExpansion.load(path)
    assert back.groups == h.groups and back.zeta_residues == h.zeta_residues
    assert back.zeta_value(0.0) == -1.0
    with pytest.raises(MissingZetaDatum):
        back.zeta_value(-3.0)


def test_missing_residue_named():
    h = HeatExpansion((((0.75, 1.0),),))
    with pytest.raises(MissingZetaDatum, match="0.75"):
        h.residue(0.75)
    assert empty_heat_expansion().scale == ()
