"""Entropy and energy of free Fermi and Bose gases over a spectrum, their
spectral-action coefficient functions and small-beta expansions."""

from ._jit import backend
from .asymptotics import ExpansionRequest, ExpansionResult, compare_exact, expand_primed, expand_unprimed
from .coeffs import CoeffKind, CoeffResult, Representation, coeff, limit_coeff
from .gibbs import ThermoParams, ThermoReport, entropy_energy_via_kernels, mode_energy, thermo
from .kernels import Quantity, Statistics, Variant, kernel_value, laplace_reconstruct, laplace_weight
from .spectra import (
    HeatExpansion,
    Spectrum,
    TailPolicy,
    circle_heat_expansion,
    circle_spectrum,
    direct_sum,
    heat_trace,
    heat_trace_k,
    rho_lk,
    spectrum_from_file,
    torus_heat_expansion,
    torus_spectrum,
)
from .specfun import ConvergenceError, DomainError, QuadratureControl, SeriesControl

__version__ = "0.1.0"

__all__ = [
    "backend", "ExpansionRequest", "ExpansionResult", "compare_exact", "expand_primed",
    "expand_unprimed", "CoeffKind", "CoeffResult", "Representation", "coeff", "limit_coeff",
    "ThermoParams", "ThermoReport", "entropy_energy_via_kernels", "mode_energy", "thermo",
    "Quantity", "Statistics", "Variant", "kernel_value", "laplace_reconstruct",
    "laplace_weight", "HeatExpansion", "Spectrum", "TailPolicy", "circle_heat_expansion",
    "circle_spectrum", "direct_sum", "heat_trace", "heat_trace_k", "rho_lk",
    "spectrum_from_file", "torus_heat_expansion", "torus_spectrum", "ConvergenceError",
    "DomainError", "QuadratureControl", "SeriesControl",
]
