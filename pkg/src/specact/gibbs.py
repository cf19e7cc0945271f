"""Exact grand-canonical thermodynamics of a free Fermi or Bose gas over a
one-particle spectrum: log Z, von Neumann entropy and mean energy."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .kernels import Quantity, Statistics, Variant, kernel_value
from .spectra import DEFAULT_TAIL, Spectrum, TailPolicy, shells
from .specfun import DomainError


@dataclass(frozen=True)
class ThermoParams:
    beta: float
    mu: float
    stat: Statistics
    variant: Variant = Variant.SQRT_SHIFT

    def __post_init__(self):
        if not (self.beta > 0 and math.isfinite(self.beta)):
            raise DomainError(f"beta must be positive and finite, got {self.beta}")
        mu_ok = self.mu <= 0 if (self.stat is Statistics.FERMI and
                                 self.variant is Variant.SQRT_SHIFT) else self.mu < 0
        if not mu_ok:
            raise DomainError(
                f"mu={self.mu} not allowed for {self.stat.value}/{self.variant.value}")


@dataclass(frozen=True)
class ThermoReport:
    log_Z: float
    entropy: float
    energy: float
    modes_used: int
    tail_bound: float
    reliable: bool = True

    def as_dict(self) -> dict:
        return {"log_Z": self.log_Z, "entropy": self.entropy, "energy": self.energy,
                "modes_used": self.modes_used, "tail_bound": self.tail_bound}


def mode_energy(variant: Variant, stat: Statistics, mu: float, lam):
    """One-particle energy of the mode with eigenvalue ``lam``."""
    lam = np.asarray(lam, dtype=float)
    if np.any(lam == 0):
        raise DomainError("mode_energy: zero eigenvalue")
    if variant is Variant.SQRT_SHIFT:
        eps = np.hypot(lam, mu)
    elif stat is Statistics.FERMI:
        eps = np.abs(lam) - mu
    else:
        eps = lam * lam - mu
    assert np.all(eps > 0), "one-particle energy must be positive"
    return float(eps) if eps.ndim == 0 else eps


def _per_mode_entropy(y: float, bose: bool) -> float:
    q = math.exp(-y)
    if bose:
        return y / math.expm1(y) - math.log(-math.expm1(-y)) if y < 700.0 else (y + 1.0) * q
    return y * q / (1.0 + q) + math.log1p(q)


def _tail(s: Spectrum, p: ThermoParams) -> float:
    """Upper estimate of the entropy carried by the modes cut off ``s``."""
    if s.truncation is None:
        return 0.0
    bose = p.stat is Statistics.BOSE
    total = 0.0
    for r, count in shells(s.truncation):
        y = p.beta * mode_energy(p.variant, p.stat, p.mu, r)
        term = count * _per_mode_entropy(y, bose)
        total += term
        if term < 1e-300 or (y > 40.0 and term < 1e-18 * total):
            break
    return total


def thermo(s: Spectrum, p: ThermoParams, tail: TailPolicy = DEFAULT_TAIL) -> ThermoReport:
    """log Z, entropy and energy by exact mode sums."""
    bose = p.stat is Statistics.BOSE
    if len(s) == 0:
        return ThermoReport(0.0, 0.0, 0.0, 0, 0.0, True)
    eps = mode_energy(p.variant, p.stat, p.mu, s.abs_values)
    eps = np.atleast_1d(eps)
    if bose and np.any(eps <= 0):
        raise DomainError("Bose gas needs every one-particle energy > 0")
    y = p.beta * eps
    log_z, entropy, energy = _kernels.mode_sums(y, eps, s.weights, bose)
    tail_bound = _tail(s, p)
    reliable = True
    if s.truncation is not None:
        edge = math.exp(-float(y.max()))
        reliable = (edge < tail.boltzmann_limit
                    and tail_bound <= tail.tolerance * max(1.0, entropy))
    return ThermoReport(float(log_z), float(entropy), float(energy),
                        int(s.total_multiplicity), float(tail_bound), reliable)


def kernel_argument(p: ThermoParams, lam):
    """Argument x at which the one-mode kernels reproduce this gas."""
    if p.variant is Variant.LINEAR_SHIFT and p.stat is Statistics.BOSE:
        return math.sqrt(p.beta) * np.asarray(lam, dtype=float)
    return p.beta * np.asarray(lam, dtype=float)


def entropy_energy_via_kernels(s: Spectrum, p: ThermoParams) -> tuple[float, float]:
    """Entropy and energy as sums of the entropy and energy kernels."""
    if len(s) == 0:
        return 0.0, 0.0
    x = np.atleast_1d(kernel_argument(p, s.abs_values))
    bmu = p.beta * p.mu
    h = kernel_value(p.stat, Quantity.ENTROPY, p.variant, bmu, x)
    u = kernel_value(p.stat, Quantity.ENERGY, p.variant, bmu, x)
    entropy = _kernels.tree_sum(s.weights * h)
    energy = _kernels.tree_sum(s.weights * u) / p.beta
    return float(entropy), float(energy)


__all__ = ["ThermoParams", "ThermoReport", "mode_energy", "thermo",
           "entropy_energy_via_kernels", "kernel_argument"]
