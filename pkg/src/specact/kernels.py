"""Entropy and energy kernels of the free Fermi and Bose gases, their
Laplace weights, and a quadrature check that rebuilds a kernel from its
weight.

Kernel arguments
----------------
``kernel_value(stat, qty, var, mu, x)`` evaluates the one-mode function at
the scaled one-particle energy ``E(x)``:

====================  ==========================
Fermi, SqrtShift      E = sqrt(x^2 + mu^2)
Fermi, LinearShift    E = |x| - mu
Bose, SqrtShift       E = sqrt(x^2 + mu^2)
Bose, LinearShift     E = x^2 - mu
====================  ==========================

Entropy kernels are ``E/(e^E + 1) + log(1 + e^-E)`` (Fermi) and
``E/(e^E - 1) - log(1 - e^-E)`` (Bose); energy kernels keep only the first
term.  With ``x = beta*lambda`` (``x = sqrt(beta)*lambda`` for Bose
LinearShift) and ``mu -> beta*mu`` they give the per-mode entropy and
``beta`` times the per-mode energy.

Every kernel is a Laplace transform in ``x^2``,
``kernel(x) = int_0^inf exp(-t x^2) W(t) dt``, of a weight built from the
mu = 0 weight by ``W_mu(t) = exp(-mu^2 t) W_0(t)``.
"""

from __future__ import annotations

import math
from enum import Enum

import numpy as np

from . import _kernels
from .quadrature import integrate, integrate_to_inf
from .specfun import (
    DEFAULT_QUAD,
    DEFAULT_SERIES,
    ConvergenceError,
    DomainError,
    QuadratureControl,
    SeriesControl,
)


class Statistics(Enum):
    FERMI = "fermi"
    BOSE = "bose"


class Quantity(Enum):
    ENTROPY = "entropy"
    ENERGY = "energy"


class Variant(Enum):
    SQRT_SHIFT = "sqrt"
    LINEAR_SHIFT = "linear"


_WEIGHT_CODE = {
    (Statistics.FERMI, Quantity.ENTROPY): _kernels.W_FERMI_ENTROPY,
    (Statistics.FERMI, Quantity.ENERGY): _kernels.W_FERMI_ENERGY,
    (Statistics.BOSE, Quantity.ENTROPY): _kernels.W_BOSE_ENTROPY,
    (Statistics.BOSE, Quantity.ENERGY): _kernels.W_BOSE_ENERGY,
}

# Weights are summed to machine precision; they are cheap and the
# reconstruction oracle should not be limited by them.
WEIGHT_SERIES = SeriesControl(rel_tol=1e-17, abs_tol=1e-300, max_terms=100_000)


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _check_mu(mu: float) -> float:
    mu = float(mu)
    if mu > 0:
        raise DomainError(f"chemical potential must be <= 0, got {mu}")
    return mu


def scaled_energy(stat: Statistics, var: Variant, mu: float, x):
    """The argument E(x) fed to the one-mode functions (see module doc)."""
    x, _ = _as_array(x)
    if var is Variant.SQRT_SHIFT:
        return np.hypot(x, mu)
    if stat is Statistics.FERMI:
        return np.abs(x) - mu
    return x * x - mu


def fermi_entropy_fn(e):
    """E/(e^E+1) + log(1+e^-E) for E >= 0."""
    q = np.exp(-e)
    return e * q / (1.0 + q) + np.log1p(q)


def fermi_energy_fn(e):
    q = np.exp(-e)
    return e * q / (1.0 + q)


def bose_entropy_fn(e):
    """k(E) = E/(e^E-1) - log(1-e^-E) for E > 0."""
    one_minus = -np.expm1(-e)
    return e * np.exp(-e) / one_minus - np.log(one_minus)


def bose_energy_fn(e):
    return e * np.exp(-e) / -np.expm1(-e)


def bose_entropy_derivative(e):
    """k'(E) = -E / (4 sinh^2(E/2))."""
    s = np.sinh(0.5 * e)
    return -e / (4.0 * s * s)


_FUNCS = {
    (Statistics.FERMI, Quantity.ENTROPY): fermi_entropy_fn,
    (Statistics.FERMI, Quantity.ENERGY): fermi_energy_fn,
    (Statistics.BOSE, Quantity.ENTROPY): bose_entropy_fn,
    (Statistics.BOSE, Quantity.ENERGY): bose_energy_fn,
}


def kernel_value(stat: Statistics, qty: Quantity, var: Variant, mu: float, x):
    """Pointwise value of one of the eight kernels; scalar in, float out."""
    mu = _check_mu(mu)
    x, scalar = _as_array(x)
    e = scaled_energy(stat, var, mu, x)
    if stat is Statistics.BOSE and np.any(e <= 0):
        raise DomainError("Bose kernel evaluated at non-positive energy")
    out = _FUNCS[(stat, qty)](e)
    return float(out) if scalar else out


def laplace_weight(stat: Statistics, qty: Quantity, mu: float, t,
                   ctl: SeriesControl = WEIGHT_SERIES):
    """The Laplace weight W_mu(t) of the SqrtShift kernel.

    For (Bose, Entropy) this returns f(t)/(2t) with
    f(t) = sum_n (2 (2 pi n)^2 t - 1) exp(-(2 pi n)^2 t), times exp(-mu^2 t).
    That function is *minus* the weight of k_mu; ``laplace_reconstruct``
    applies the sign.
    """
    mu = _check_mu(mu)
    if stat is Statistics.BOSE and qty is Quantity.ENERGY and mu == 0.0:
        raise DomainError("the Bose energy weight does not exist at mu = 0")
    t, scalar = _as_array(t)
    if np.any(t <= 0):
        raise DomainError("laplace_weight needs t > 0")
    flat = np.ascontiguousarray(t.reshape(-1))
    out, status = _kernels.weight_many(_WEIGHT_CODE[(stat, qty)], mu * mu, flat,
                                       ctl.rel_tol, ctl.max_terms)
    if status != _kernels.OK:
        raise ConvergenceError("weight series hit max_terms")
    out = out.reshape(t.shape)
    return float(out) if scalar else out


def weight_sign(stat: Statistics, qty: Quantity) -> float:
    """Sign turning ``laplace_weight`` into the true Laplace weight."""
    return -1.0 if (stat is Statistics.BOSE and qty is Quantity.ENTROPY) else 1.0


def laplace_reconstruct(stat: Statistics, qty: Quantity, mu: float, x: float,
                        qctl: QuadratureControl = DEFAULT_QUAD,
                        sctl: SeriesControl = WEIGHT_SERIES,
                        var: Variant = Variant.SQRT_SHIFT) -> float:
    """Numerically integrate exp(-t q(x)) W_mu(t) over t in (0, inf).

    SqrtShift uses q = x^2.  LinearShift completes the square,
    (|x| - mu)^2 = x^2 - 2 mu |x| + mu^2 (Fermi) and
    (x^2 - mu)^2 = x^4 - 2 mu x^2 + mu^2 (Bose), so the same mu-weight is
    used with q = x^2 - 2 mu |x| or q = x^4 - 2 mu x^2.
    """
    mu = _check_mu(mu)
    x = float(x)
    if var is Variant.SQRT_SHIFT:
        q = x * x
    elif stat is Statistics.FERMI:
        q = x * x - 2.0 * mu * abs(x)
    else:
        q = x ** 4 - 2.0 * mu * x * x
    if stat is Statistics.BOSE and q + mu * mu == 0.0:
        raise DomainError("Bose kernel diverges at zero energy")
    sign = weight_sign(stat, qty)

    def f(t):
        return sign * np.exp(-t * q) * laplace_weight(stat, qty, mu, t, sctl)

    s = qctl.domain_split
    v1, _ = integrate(f, 0.0, s, qctl)
    v2, _ = integrate_to_inf(f, s, qctl)
    return v1 + v2


def eisenstein_partial(x: float, n_terms: int) -> tuple[float, float]:
    """Symmetric partial sum over |n| <= n_terms of
    ((2 pi n)^2 - x) / ((2 pi n)^2 + x)^2, with a bound on the rest.

    Summands behave like (2 pi n)^-2, so the omitted tail is at most
    2 * sum_{n > N} (2 pi n)^-2 <= 2 / (4 pi^2 N).
    """
    total = -1.0 / x
    for n in range(1, n_terms + 1):
        c = (2.0 * math.pi * n) ** 2
        total += 2.0 * (c - x) / (c + x) ** 2
    return total, 2.0 / (4.0 * math.pi ** 2 * n_terms)
