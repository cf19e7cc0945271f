"""Real special functions: Gamma, Riemann zeta and xi, Hurwitz zeta,
modified Bessel K and the Jacobi theta function.

Everything is double precision and implemented here; no special-function
library is used at runtime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class ConvergenceError(ArithmeticError):
    """A series or quadrature hit its budget before reaching tolerance."""


@dataclass(frozen=True)
class SeriesControl:
    rel_tol: float = 1e-15
    abs_tol: float = 1e-16
    max_terms: int = 100_000

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("SeriesControl tolerances must be positive")
        if self.max_terms < 1:
            raise ValueError("SeriesControl.max_terms must be >= 1")


@dataclass(frozen=True)
class QuadratureControl:
    rel_tol: float = 1e-12
    abs_tol: float = 1e-15
    max_subdivisions: int = 2000
    domain_split: float = 1.0

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("QuadratureControl tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("QuadratureControl.max_subdivisions must be >= 1")
        if not self.domain_split > 0:
            raise ValueError("QuadratureControl.domain_split must be positive")


DEFAULT_SERIES = SeriesControl()
DEFAULT_QUAD = QuadratureControl()
BESSEL_QUAD = QuadratureControl(rel_tol=1e-14, abs_tol=1e-300, max_subdivisions=400)

_LN2 = math.log(2.0)
_SQRT_2PI = math.sqrt(2.0 * math.pi)

# Lanczos approximation, g = 7, nine terms.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_BERNOULLI_2J = tuple(float(b) for b in (
    Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
    Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6), Fraction(-3617, 510),
    Fraction(43867, 798), Fraction(-174611, 330), Fraction(854513, 138),
    Fraction(-236364091, 2730), Fraction(8553103, 6),
    Fraction(-23749461029, 870), Fraction(8615841276005, 14322),
))


def _is_nonpositive_int(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def sinpi(x: float) -> float:
    """sin(pi x), exactly zero at integers."""
    # reduce |x| so that small arguments keep every bit
    sign = -1.0 if x < 0 else 1.0
    r = math.fmod(abs(x), 2.0)
    if r >= 1.0:
        sign = -sign
        r -= 1.0
    if r == 0.0:
        return 0.0
    if r > 0.5:
        r = 1.0 - r
    return sign * math.sin(math.pi * r)


def _lanczos_sum(x: float) -> float:
    acc = _LANCZOS[0]
    for i in range(1, 9):
        acc += _LANCZOS[i] / (x + i)
    return acc


def gamma_fn(x: float) -> float:
    """Gamma function for real x off the non-positive integers."""
    x = float(x)
    if _is_nonpositive_int(x):
        raise DomainError(f"gamma_fn has a pole at x={x:g}")
    if x < 0.5:
        return math.pi / (sinpi(x) * gamma_fn(1.0 - x))
    y = x - 1.0
    t = y + _LANCZOS_G + 0.5
    # split the power so that it does not overflow before exp(-t) is applied
    half = t ** (0.5 * (y + 0.5))
    return _SQRT_2PI * half * (half * math.exp(-t)) * _lanczos_sum(y)


def log_gamma(x: float) -> float:
    """log Gamma(x) for x > 0."""
    if not x > 0:
        raise DomainError("log_gamma needs x > 0")
    if x < 0.5:
        return math.log(math.pi / sinpi(x)) - log_gamma(1.0 - x)
    y = x - 1.0
    t = y + _LANCZOS_G + 0.5
    return 0.5 * math.log(2 * math.pi) + (y + 0.5) * math.log(t) - t + math.log(_lanczos_sum(y))


def rgamma(x: float) -> float:
    """1/Gamma(x); zero at the poles."""
    if _is_nonpositive_int(x):
        return 0.0
    return 1.0 / gamma_fn(x)


def _x_over_expm1(x: float) -> float:
    return 1.0 if x == 0.0 else x / math.expm1(x)


def _eta_terms(tol: float, ctl: SeriesControl) -> int:
    # Borwein: |error| <= 3 / (3 + sqrt 8)^n for real s >= 0
    n = math.ceil(math.log(3.0 / tol) / math.log(3.0 + math.sqrt(8.0)))
    n = max(n, 2)
    if n > ctl.max_terms:
        raise ConvergenceError(f"eta series needs {n} terms > max_terms={ctl.max_terms}")
    return n


def dirichlet_eta(s: float, ctl: SeriesControl = DEFAULT_SERIES) -> float:
    """Alternating zeta sum(-1)^(k+1) k^-s for s >= 0, Borwein-accelerated."""
    if s < 0:
        raise DomainError("dirichlet_eta is evaluated only for s >= 0")
    if s > 40.0:
        # 2^-s < 1e-12 already; the plain alternating sum is exact in a few terms
        total = 1.0
        for k in range(2, 64):
            v = k ** -s
            total += v if k % 2 else -v
            if v < 1e-17 * total:
                break
        return total
    # eta(s) >= 1/2 on s >= 0, so an absolute bound of tol/2 is relative tol
    n = _eta_terms(max(ctl.abs_tol, 0.5 * ctl.rel_tol), ctl)
    d = [0.0] * (n + 1)
    term = 1.0 / n
    acc = term
    d[0] = n * acc
    for i in range(1, n + 1):
        term *= (n + i - 1) * (n - i + 1) * 4.0 / ((2 * i - 1) * (2 * i))
        acc += term
        d[i] = n * acc
    dn = d[n]
    total = 0.0
    for k in range(n):
        v = (d[k] - dn) / (k + 1.0) ** s
        total += v if k % 2 == 0 else -v
    return -total / dn


def riemann_zeta(s: float, ctl: SeriesControl = DEFAULT_SERIES) -> float:
    """Riemann zeta on the real line minus the pole at s = 1."""
    s = float(s)
    if abs(s - 1.0) < 1e-6:
        raise DomainError(f"riemann_zeta: s={s!r} is within 1e-6 of the pole at 1")
    if s >= 0:
        return dirichlet_eta(s, ctl) / (-math.expm1((1.0 - s) * _LN2))
    if s == math.floor(s) and int(s) % 2 == 0:
        return 0.0
    return (2.0 ** s * math.pi ** (s - 1.0) * sinpi(0.5 * s)
            * gamma_fn(1.0 - s) * riemann_zeta(1.0 - s, ctl))


def riemann_xi(s: float, ctl: SeriesControl = DEFAULT_SERIES) -> float:
    """xi(s) = s(s-1)/2 pi^(-s/2) Gamma(s/2) zeta(s), entire and symmetric."""
    s = float(s)
    if s < 0.5:
        s = 1.0 - s
    # (s - 1) zeta(s) = eta(s) (s - 1) / (1 - 2^(1-s)), regular at s = 1
    q = (1.0 - s) * _LN2
    pole_free = dirichlet_eta(s, ctl) * _x_over_expm1(q) / _LN2
    return 0.5 * s * math.pi ** (-0.5 * s) * gamma_fn(0.5 * s) * pole_free


def log_riemann_xi(s: float, ctl: SeriesControl = DEFAULT_SERIES) -> float:
    """log xi(s); xi > 0 on the real line.  Meant for large |s - 1/2|."""
    s = float(s)
    if s < 0.5:
        s = 1.0 - s
    if s < 2.0:
        return math.log(riemann_xi(s, ctl))
    zeta = dirichlet_eta(s, ctl) / (-math.expm1((1.0 - s) * _LN2))
    return (math.log(0.5 * s * (s - 1.0)) - 0.5 * s * math.log(math.pi)
            + log_gamma(0.5 * s) + math.log(zeta))


def hurwitz_zeta(s: float, q: float) -> float:
    """sum_{k>=0} (q+k)^(-s), analytically continued in s (Euler-Maclaurin)."""
    s = float(s)
    if abs(s - 1.0) < 1e-12:
        raise DomainError("hurwitz_zeta has a pole at s = 1")
    if not q > 0:
        raise DomainError("hurwitz_zeta needs q > 0")
    n = 12 + int(abs(s))
    head = 0.0
    for k in range(n):
        head += (q + k) ** (-s)
    x = q + n
    tail = x ** (1.0 - s) / (s - 1.0) + 0.5 * x ** (-s)
    # B_2j/(2j)! * s(s+1)...(s+2j-2) * x^(-s-2j+1)
    rising = s
    fact = 2.0
    xp = x ** (-s - 1.0)
    for j, b in enumerate(_BERNOULLI_2J, start=1):
        term = b / fact * rising * xp
        tail += term
        if term == 0.0 or abs(term) < 1e-17 * abs(head + tail):
            break
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        fact *= (2 * j + 1) * (2 * j + 2)
        xp /= x * x
    return head + tail


def bessel_k(nu: float, z: float, ctl: QuadratureControl = BESSEL_QUAD) -> float:
    """Modified Bessel function K_nu(z), z > 0, via its cosh integral."""
    return bessel_k_scaled(nu, z, ctl) * math.exp(-z)


def bessel_k_scaled(nu: float, z: float, ctl: QuadratureControl = BESSEL_QUAD) -> float:
    """exp(z) K_nu(z)."""
    z = float(z)
    if not z > 0:
        raise DomainError(f"bessel_k needs z > 0, got {z!r}")
    val, _err, status = _kernels.bessel_k_scaled(float(nu), z, ctl.rel_tol, ctl.max_subdivisions)
    if status != _kernels.OK:
        raise ConvergenceError(f"bessel_k({nu}, {z}) did not reach rel_tol={ctl.rel_tol}")
    return val


def _theta_direct(t: float, ctl: SeriesControl) -> tuple[float, float]:
    total = 1.0
    deriv = 0.0
    for n in range(1, ctl.max_terms + 1):
        e = math.exp(-math.pi * n * n * t)
        total += 2.0 * e
        deriv -= 2.0 * math.pi * n * n * e
        if e < ctl.abs_tol * 1e-3 or e <= ctl.rel_tol * 1e-3 * total:
            return total, deriv
    raise ConvergenceError("theta series did not converge within max_terms")


def theta(t: float, ctl: SeriesControl = DEFAULT_SERIES) -> float:
    """Jacobi theta sum_{n in Z} exp(-pi n^2 t)."""
    if not t > 0:
        raise DomainError("theta needs t > 0")
    if t >= 1.0:
        return _theta_direct(t, ctl)[0]
    return t ** -0.5 * _theta_direct(1.0 / t, ctl)[0]


def theta_prime(t: float, ctl: SeriesControl = DEFAULT_SERIES) -> float:
    """d/dt of theta, by term-wise differentiation of the series in use."""
    if not t > 0:
        raise DomainError("theta_prime needs t > 0")
    if t >= 1.0:
        return _theta_direct(t, ctl)[1]
    u = 1.0 / t
    th, dth = _theta_direct(u, ctl)
    return -0.5 * t ** -1.5 * th - t ** -2.5 * dth


def k_half_integer(nu: float, z: float) -> float:
    """Closed form of K_nu for nu = +-1/2, +-3/2, +-5/2, ...

    K_{n+1/2}(z) = sqrt(pi/2z) e^{-z} sum_k (n+k)!/(k!(n-k)!) (2z)^{-k}.
    """
    n = abs(nu) - 0.5
    if n != math.floor(n) or n < 0:
        raise DomainError("k_half_integer needs a half-integer order")
    n = int(n)
    acc = 0.0
    for k in range(n + 1):
        acc += math.factorial(n + k) / (math.factorial(k) * math.factorial(n - k)) / (2.0 * z) ** k
    return math.sqrt(math.pi / (2.0 * z)) * math.exp(-z) * acc


__all__ = [
    "ConvergenceError", "DomainError", "SeriesControl", "QuadratureControl",
    "gamma_fn", "log_gamma", "rgamma", "sinpi", "riemann_zeta", "riemann_xi",
    "dirichlet_eta", "log_riemann_xi", "hurwitz_zeta", "bessel_k", "bessel_k_scaled", "theta",
    "theta_prime", "k_half_integer",
]

_ = np  # numpy is imported for callers that pass arrays through the kernels
