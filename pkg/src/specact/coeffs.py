"""Spectral-action coefficient functions.

For a Laplace weight W_mu of one of the four SqrtShift kernels the
coefficient of order ``a`` is ``C_mu(a) = int_0^inf t^a W_mu(t) dt``:

* ``GAMMA`` -- Fermi entropy,
* ``OMEGA`` -- Fermi energy,
* ``CHI``   -- Bose entropy,
* ``KAPPA`` -- Bose energy.

Each can be computed four ways: an exponentially convergent Bessel-K
series, a lattice (Poisson-dual) sum continued analytically in ``a``, a
power series in ``mu^2`` around the mu = 0 limit functions (built on the
Riemann xi function), and direct quadrature of the weight integral.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels
from .kernels import (
    WEIGHT_SERIES,
    Quantity,
    Statistics,
    Variant,
    kernel_value,
    laplace_weight,
    weight_sign,
)
from .quadrature import integrate, integrate_half_line, integrate_to_inf
from .specfun import (
    BESSEL_QUAD,
    DEFAULT_QUAD,
    DEFAULT_SERIES,
    ConvergenceError,
    DomainError,
    QuadratureControl,
    SeriesControl,
    gamma_fn,
    hurwitz_zeta,
    log_gamma,
    log_riemann_xi,
    riemann_xi,
    riemann_zeta,
)

log = logging.getLogger(__name__)

_EPS = np.finfo(float).eps
_SQRT_PI = math.sqrt(math.pi)
_LN2 = math.log(2.0)

SLOW_BESSEL_MU = 0.05
# powers of two keep a +- h exact at half-integers, so pole parts cancel cleanly
LIMIT_STEPS = (2.0 ** -13, 2.0 ** -14)
# closer than this to a limit point the pole parts cancel badly; interpolate
NEAR_LIMIT = 2.0 ** -8
INTERP_STEP = 2.0 ** -7


class CoeffKind(Enum):
    GAMMA = "gamma"
    OMEGA = "omega"
    CHI = "chi"
    KAPPA = "kappa"

    @property
    def statistics(self) -> Statistics:
        return Statistics.FERMI if self in (CoeffKind.GAMMA, CoeffKind.OMEGA) else Statistics.BOSE

    @property
    def quantity(self) -> Quantity:
        return Quantity.ENTROPY if self in (CoeffKind.GAMMA, CoeffKind.CHI) else Quantity.ENERGY

    @property
    def fermi(self) -> bool:
        return self.statistics is Statistics.FERMI

    @property
    def entropy(self) -> bool:
        return self.quantity is Quantity.ENTROPY

    @property
    def xi_radius(self) -> float:
        return math.pi if self.fermi else 2.0 * math.pi

    @classmethod
    def for_pair(cls, stat: Statistics, qty: Quantity) -> "CoeffKind":
        for kind in cls:
            if kind.statistics is stat and kind.quantity is qty:
                return kind
        raise KeyError((stat, qty))


class Representation(Enum):
    BESSEL = "bessel"
    POISSON = "poisson"
    XI = "xi"
    QUADRATURE = "quadrature"


@dataclass(frozen=True)
class CoeffResult:
    value: float
    rep: Representation
    est_error: float
    terms_used: int


def _half_int_le_half(a: float) -> bool:
    return 2.0 * a == math.floor(2.0 * a) and a <= 0.5


def _symmetric_limit(f, a: float) -> tuple[float, float, int]:
    """Value at a removable point from the symmetric averages at a +- h,
    h in LIMIT_STEPS, combined by linear extrapolation in h^2."""
    avgs = []
    scale = 0.0
    terms = 0
    for h in LIMIT_STEPS:
        (vp, ep, tp), (vm, em, tm) = f(a + h), f(a - h)
        avgs.append(0.5 * (vp + vm))
        scale = max(scale, abs(vp), abs(vm), ep, em)
        terms = max(terms, tp, tm)
    h1, h2 = LIMIT_STEPS
    s1, s2 = avgs
    value = (h1 * h1 * s2 - h2 * h2 * s1) / (h1 * h1 - h2 * h2)
    err = abs(s2 - s1) * h2 * h2 / (h1 * h1 - h2 * h2) + 64.0 * _EPS * scale
    return value, err, terms


def _interp_at(a: float, a0: float, v0: float, f, step: float) -> tuple[float, float, int]:
    """Degree-4 interpolant through a0 (value v0) and a0 + {-2,-1,1,2} step."""
    xs = [a0 - 2 * step, a0 - step, a0, a0 + step, a0 + 2 * step]
    ys, errs, terms = [], [], 0
    for x in xs:
        if x == a0:
            ys.append(v0)
            continue
        v, e, n = f(x)
        ys.append(v)
        errs.append(e)
        terms = max(terms, n)
    total = 0.0
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        w = 1.0
        for j, xj in enumerate(xs):
            if j != i:
                w *= (a - xj) / (xi - xj)
        total += w * yi
    return total, max(errs), terms


def _with_limit_points(f, a: float, grid: float, upper: float) -> tuple[float, float, int]:
    """f(a), switching to the limit procedure at (and near) the points
    ``a0 = j * grid <= upper`` where f is a difference of two poles."""
    a0 = round(a / grid) * grid
    if a0 > upper or abs(a - a0) >= NEAR_LIMIT:
        return f(a)
    v0, e0, n0 = _symmetric_limit(f, a0)
    if a == a0:
        return v0, e0, n0
    v1, e1, n1 = _interp_at(a, a0, v0, f, INTERP_STEP)
    v2, _, _ = _interp_at(a, a0, v0, f, 2.0 * INTERP_STEP)
    # the interpolation error scales like step^5
    return v1, e0 + e1 + abs(v2 - v1) / 31.0, max(n0, n1)


# ----------------------------------------------------------------- limits


def limit_coeff(kind: CoeffKind, a: float) -> float:
    """The mu -> 0 functions gamma(a), omega(a), chi(a), kappa(a)."""
    a = float(a)
    xi = riemann_xi(2.0 * a)
    if kind is CoeffKind.GAMMA:
        # (1 - 2^{-2a}) / a, analytic at a = 0
        factor = 2.0 * _LN2 if a == 0.0 else -math.expm1(-2.0 * a * _LN2) / a
        return factor * math.pi ** (-a) * xi
    if kind is CoeffKind.OMEGA:
        if a == 0.5:
            raise DomainError("omega(a) has a pole at a = 1/2")
        return 2.0 * (-math.expm1(-2.0 * a * _LN2)) * xi / ((2.0 * a - 1.0) * math.pi ** a)
    if kind is CoeffKind.CHI:
        if a == 0.0:
            raise DomainError("chi(a) has a pole at a = 0")
        return xi / ((4.0 * math.pi) ** a * a)
    if a == 0.5:
        raise DomainError("kappa(a) has a pole at a = 1/2")
    return 2.0 * xi / ((4.0 * math.pi) ** a * (2.0 * a - 1.0))


def log_limit_coeff(kind: CoeffKind, a: float) -> float:
    """log of limit_coeff for a > 1, where every factor is positive."""
    if not a > 1.0:
        raise DomainError("log_limit_coeff is for a > 1")
    lxi = log_riemann_xi(2.0 * a)
    l2 = math.log(-math.expm1(-2.0 * a * _LN2))
    lpi = math.log(math.pi)
    if kind is CoeffKind.GAMMA:
        return l2 - math.log(a) - a * lpi + lxi
    if kind is CoeffKind.OMEGA:
        return _LN2 + l2 - math.log(2.0 * a - 1.0) - a * lpi + lxi
    if kind is CoeffKind.CHI:
        return lxi - a * math.log(4.0 * math.pi) - math.log(a)
    return _LN2 + lxi - a * math.log(4.0 * math.pi) - math.log(2.0 * a - 1.0)


# ----------------------------------------------------------- Bessel series


def _bessel_spec(kind: CoeffKind, a: float, m: float):
    """(prefactor, c1, p1, nu1, c2, p2, nu2) of the Bessel-K series."""
    pre = 2.0 ** (0.5 - a) / _SQRT_PI
    if kind.entropy:
        return pre * m ** (1.5 - a), 1.0, a + 0.5, 1.5 - a, 0.0, 0.0, 0.0
    return pre * m ** (0.5 - a), m, a + 0.5, a + 0.5, -2.0 * a, a - 0.5, a - 0.5


def bessel_terms(kind: CoeffKind, a: float, mu: float, n_terms: int,
                 qctl: QuadratureControl = BESSEL_QUAD) -> np.ndarray:
    """The first ``n_terms`` summands (prefactor included, signs applied)."""
    from .specfun import bessel_k

    m = abs(float(mu))
    pre, c1, p1, nu1, c2, p2, nu2 = _bessel_spec(kind, a, m)
    out = np.empty(n_terms)
    for i in range(n_terms):
        n = i + 1
        v = c1 * n ** p1 * bessel_k(nu1, n * m, qctl)
        if c2 != 0.0:
            v += c2 * n ** p2 * bessel_k(nu2, n * m, qctl)
        if kind.fermi and n % 2 == 0:
            v = -v
        out[i] = pre * v
    return out


def _bessel(kind: CoeffKind, a: float, m: float, sctl: SeriesControl,
            qctl: QuadratureControl) -> CoeffResult:
    pre, c1, p1, nu1, c2, p2, nu2 = _bessel_spec(kind, a, m)
    k_rel = min(qctl.rel_tol, BESSEL_QUAD.rel_tol)
    total, mag, tail, n, status = _kernels.bessel_series(
        m, kind.fermi, c1, p1, nu1, c2, p2, nu2,
        max(sctl.rel_tol * 1e-3, 1e-18), k_rel, qctl.max_subdivisions, sctl.max_terms)
    if status != _kernels.OK:
        raise ConvergenceError(f"{kind.value} Bessel series: no convergence in {n} terms")
    err = abs(pre) * (tail + mag * (k_rel + 4.0 * n * _EPS))
    return CoeffResult(pre * total, Representation.BESSEL, err, n)


# ---------------------------------------------------------- lattice sums


def _power_tail(fermi: bool, w: float, start: int) -> float:
    """sum of m^-w over m >= start (odd m when ``fermi``), continued in w."""
    if w > 1.5:
        if fermi:
            return 2.0 ** -w * hurwitz_zeta(w, 0.5 * start)
        return hurwitz_zeta(w, float(start))
    # below the pole use the Riemann zeta minus a short head
    if fermi:
        full = -math.expm1(-w * _LN2) * riemann_zeta(w)
        head = sum(float(mm) ** -w for mm in range(1, start, 2))
    else:
        full = riemann_zeta(w)
        head = sum(float(mm) ** -w for mm in range(1, start))
    return full - head


def lattice_zeta(fermi: bool, s: float, mu: float,
                 sctl: SeriesControl = DEFAULT_SERIES) -> tuple[float, float, int]:
    """Z(s) = sum_{n in Z} (c_n + mu^2)^-s with c_n = pi^2 (2n+1)^2 (Fermi)
    or (2 pi n)^2 (Bose), analytically continued in s.

    Small lattice points are summed directly; for the rest the binomial
    expansion in mu^2/c_n turns the sum into Hurwitz-type zeta values.
    Returns (value, error estimate, binomial terms used).
    """
    mu2 = mu * mu
    base = math.pi if fermi else 2.0 * math.pi
    total = 0.0
    scale = 0.0
    if fermi:
        start = 1
        while (base * start) ** 2 <= 4.0 * mu2:
            v = 2.0 * ((base * start) ** 2 + mu2) ** -s
            total += v
            scale += abs(v)
            start += 2
    else:
        if mu2 == 0.0:
            raise DomainError("Bose lattice sum has a zero mode at mu = 0")
        total = mu2 ** -s
        scale = abs(total)
        start = 1
        while (base * start) ** 2 <= 4.0 * mu2:
            v = 2.0 * ((base * start) ** 2 + mu2) ** -s
            total += v
            scale += abs(v)
            start += 1
    ratio = mu2 / (base * start) ** 2
    binom = 1.0
    tail = 0.0
    last = 0.0
    j = 0
    while True:
        w = 2.0 * (s + j)
        term = 2.0 * binom * mu2 ** j * base ** -w * _power_tail(fermi, w, start)
        tail += term
        scale += abs(term)
        last = abs(term)
        if j >= 2 and (last <= 1e-17 * abs(total + tail) or last == 0.0):
            break
        if mu2 == 0.0:
            break
        j += 1
        if j > sctl.max_terms:
            raise ConvergenceError("lattice binomial series hit max_terms")
        binom *= (-s - j + 1.0) / j
    growth = ratio * max(1.0, abs(s + j) / (j + 1.0))
    err = last * growth / (1.0 - growth) if growth < 1.0 else last
    return total + tail, err + 16.0 * _EPS * scale, j + 1


def _poisson_regular(kind: CoeffKind, a: float, mu: float,
                     sctl: SeriesControl) -> tuple[float, float, int]:
    fermi = kind.fermi
    m = abs(mu)
    mu2 = mu * mu
    z0, e0, n0 = lattice_zeta(fermi, a, mu, sctl)
    z1, e1, n1 = lattice_zeta(fermi, a + 1.0, mu, sctl)
    if kind.entropy:
        g = 0.5 * gamma_fn(a)
        p0 = g * (2.0 * a - 1.0) * z0
        p1 = g * 2.0 * a * mu2 * z1
        val = p0 - p1
        err = abs(g) * (abs(2.0 * a - 1.0) * e0 + abs(2.0 * a) * mu2 * e1)
        scale = abs(p0) + abs(p1)
        if not fermi:
            val = -val
    else:
        g = gamma_fn(a + 1.0)
        p0 = g * z0
        p1 = g * mu2 * z1
        corr = gamma_fn(a - 0.5) * m ** (1.0 - 2.0 * a) / (4.0 * _SQRT_PI) if m > 0 else 0.0
        val = p0 - p1 - corr
        err = abs(g) * (e0 + mu2 * e1)
        scale = abs(p0) + abs(p1) + abs(corr)
        if not fermi:
            val = -val
    return val, err + 8.0 * _EPS * scale, max(n0, n1)


def _poisson(kind: CoeffKind, a: float, mu: float, sctl: SeriesControl) -> CoeffResult:
    if kind is CoeffKind.OMEGA and mu == 0.0 and a >= 0.5:
        raise DomainError("omega_0(a) diverges for a >= 1/2")
    if kind is CoeffKind.GAMMA and mu == 0.0 and _half_int_le_half(a):
        # the mu = 0 lattice sum is the zeta function itself
        return CoeffResult(limit_coeff(kind, a), Representation.POISSON, 0.0, 0)
    v, e, n = _with_limit_points(lambda b: _poisson_regular(kind, b, mu, sctl), a, 0.5, 0.5)
    return CoeffResult(v, Representation.POISSON, e, n)


# ---------------------------------------------------------------- xi series


def _xi_regular(kind: CoeffKind, a: float, mu: float,
                sctl: SeriesControl) -> tuple[float, float, int]:
    m = abs(mu)
    mu2 = mu * mu
    sign0 = 1.0 if kind.fermi else -1.0
    total = 0.0
    scale = 0.0
    last = 0.0
    k = 0
    lmu = math.log(mu2) if mu2 > 0 else -math.inf
    while True:
        if mu2 == 0.0:
            term = sign0 * limit_coeff(kind, a)
        elif a + k > 20.0:
            # high orders: limit_coeff and k! overflow separately, not together
            term = sign0 * (-1.0) ** k * math.exp(
                log_limit_coeff(kind, a + k) + k * lmu - log_gamma(k + 1.0))
        else:
            weight = math.exp(k * lmu - log_gamma(k + 1.0))
            term = sign0 * (-1.0) ** k * limit_coeff(kind, a + k) * weight
        if not math.isfinite(term):
            raise ConvergenceError(f"{kind.value} xi-series overflowed at k={k}")
        total += term
        scale += abs(term)
        last = abs(term)
        if mu2 == 0.0:
            break
        if k > mu2 and k >= 2 and (last <= 1e-17 * abs(total) or last == 0.0):
            break
        k += 1
        if k > sctl.max_terms:
            raise ConvergenceError(f"{kind.value} xi-series hit max_terms")
    ratio = 1.1 * mu2 / kind.xi_radius ** 2
    err = last * ratio / (1.0 - ratio) + 8.0 * _EPS * scale
    extra = 0.0
    if kind is CoeffKind.CHI:
        extra = 0.5 * gamma_fn(a) * m ** (-2.0 * a)
    elif kind in (CoeffKind.OMEGA, CoeffKind.KAPPA) and m > 0:
        extra = gamma_fn(a - 0.5) * m ** (1.0 - 2.0 * a) / (4.0 * _SQRT_PI)
        if kind is CoeffKind.OMEGA:
            extra = -extra
    return total + extra, err + 8.0 * _EPS * abs(extra), k + 1


def _xi(kind: CoeffKind, a: float, mu: float, sctl: SeriesControl) -> CoeffResult:
    m = abs(mu)
    if m >= kind.xi_radius:
        raise DomainError(
            f"xi-series for {kind.value} needs |mu| < {kind.xi_radius:.6g}, got {m}")
    if kind is CoeffKind.OMEGA and m == 0.0 and a >= 0.5:
        raise DomainError("omega_0(a) diverges for a >= 1/2")
    regular = lambda b: _xi_regular(kind, b, mu, sctl)  # noqa: E731
    if kind is CoeffKind.CHI:
        v, e, n = _with_limit_points(regular, a, 1.0, 0.0)
    elif kind in (CoeffKind.OMEGA, CoeffKind.KAPPA):
        v, e, n = _with_limit_points(regular, a, 0.5, 0.5)
    else:
        v, e, n = regular(a)
    return CoeffResult(v, Representation.XI, e, n)


# -------------------------------------------------------------- quadrature


def _weight_route(kind: CoeffKind, a: float, mu: float, qctl: QuadratureControl) -> CoeffResult:
    stat, qty = kind.statistics, kind.quantity
    if mu == 0.0:
        if not kind.fermi:
            raise DomainError(f"{kind.value}: Bose weight integral diverges at mu = 0")
        if kind is CoeffKind.OMEGA and a >= 0.5:
            raise DomainError("omega_0(a) weight integral diverges for a >= 1/2")
    sign = weight_sign(stat, qty)

    def f(t):
        return sign * t ** a * laplace_weight(stat, qty, mu, t, WEIGHT_SERIES)

    v, e = integrate_half_line(f, qctl)
    return CoeffResult(v, Representation.QUADRATURE, e, 0)


# ------------------------------------------------------------------ public


def auto_representation(kind: CoeffKind, mu: float) -> Representation:
    m = abs(mu)
    if m >= SLOW_BESSEL_MU:
        return Representation.BESSEL
    if m < kind.xi_radius:
        return Representation.XI
    return Representation.POISSON


def coeff(kind: CoeffKind, a: float, mu: float, rep: Representation | None = None,
          sctl: SeriesControl = DEFAULT_SERIES,
          qctl: QuadratureControl = BESSEL_QUAD) -> CoeffResult:
    """Evaluate gamma_mu / omega_mu / chi_mu / kappa_mu at order ``a``.

    ``rep=None`` selects automatically.  ``mu`` must be negative, except that
    the Fermi coefficients also accept ``mu = 0``.
    """
    a = float(a)
    mu = float(mu)
    if mu > 0 or (mu == 0.0 and not kind.fermi):
        raise DomainError(f"{kind.value}: chemical potential must be < 0, got {mu}")
    if rep is None:
        rep = auto_representation(kind, mu)
    if rep is Representation.BESSEL:
        if abs(mu) < SLOW_BESSEL_MU:
            log.info("%s: |mu|=%g is below %g, Bessel series replaced by the lattice sum",
                     kind.value, abs(mu), SLOW_BESSEL_MU)
            return _poisson(kind, a, mu, sctl)
        return _bessel(kind, a, abs(mu), sctl, qctl)
    if rep is Representation.POISSON:
        return _poisson(kind, a, mu, sctl)
    if rep is Representation.XI:
        return _xi(kind, a, mu, sctl)
    quad = qctl if qctl is not BESSEL_QUAD else DEFAULT_QUAD
    return _weight_route(kind, a, mu, quad)


# ---------------------------------------------------------- Mellin oracle


def _kernel_mellin(stat: Statistics, qty: Quantity, mu: float, power: float,
                   qctl: QuadratureControl) -> float:
    """int_0^inf kernel(x) x^power dx for the SqrtShift kernel, power > -1."""
    if power <= -1.0:
        raise DomainError("moment power must exceed -1")

    def head(u):
        x = u ** (1.0 / (power + 1.0))
        return kernel_value(stat, qty, Variant.SQRT_SHIFT, mu, x) / (power + 1.0)

    def tail(x):
        return kernel_value(stat, qty, Variant.SQRT_SHIFT, mu, x) * x ** power

    v1, _ = integrate(head, 0.0, 1.0, qctl)
    v2, _ = integrate_to_inf(tail, 1.0, qctl)
    return v1 + v2


def mellin_coeff_oracle(kind: CoeffKind, a: float, mu: float,
                        qctl: QuadratureControl = DEFAULT_QUAD) -> float:
    """Coefficient from the kernel's Mellin moment,
    C_mu(a) = 2/Gamma(-a) * int_0^inf kernel(x) x^(-2a-1) dx, a < 0."""
    if not a < 0:
        raise DomainError("the Mellin route needs a < 0")
    if not mu < 0:
        raise DomainError("the Mellin route needs mu < 0")
    moment = _kernel_mellin(kind.statistics, kind.quantity, mu, -2.0 * a - 1.0, qctl)
    return 2.0 / gamma_fn(-a) * moment


# ------------------------------------------------------------------ moments


class MomentKind(Enum):
    FERMI_ENTROPY = "fermi"
    BOSE_ENTROPY = "bose"


def _moment_prefactor(nu: float) -> float:
    return 2.0 ** (0.5 * nu) * gamma_fn(0.5 * (nu + 1.0)) / _SQRT_PI


def _series(alternating: bool, m: float, terms, sctl: SeriesControl,
            qctl: QuadratureControl = BESSEL_QUAD) -> float:
    (c1, p1, nu1), (c2, p2, nu2) = terms
    total, _mag, _tail, n, status = _kernels.bessel_series(
        m, alternating, c1, p1, nu1, c2, p2, nu2,
        max(sctl.rel_tol * 1e-3, 1e-18), qctl.rel_tol, qctl.max_subdivisions,
        sctl.max_terms)
    if status != _kernels.OK:
        raise ConvergenceError(f"moment Bessel series: no convergence in {n} terms")
    return total


def _check_moment_args(nu: float, mu: float) -> None:
    if not nu > -1:
        raise DomainError("moment order must exceed -1")
    if not mu < 0:
        raise DomainError("moment formulas need mu < 0")


def moment_closed(kind: MomentKind, nu: float, mu: float,
                  sctl: SeriesControl = DEFAULT_SERIES) -> float:
    """int_0^inf h_mu(x) x^nu dx (Fermi) or k_mu(x) x^nu dx (Bose):

    |mu|^(nu/2+2) 2^(nu/2) Gamma((nu+1)/2)/sqrt(pi) sum_n s_n n^(-nu/2) K_{nu/2+2}(n|mu|)
    with s_n = (-1)^(n+1) for Fermi and 1 for Bose.
    """
    _check_moment_args(nu, mu)
    m = abs(mu)
    s = _series(kind is MomentKind.FERMI_ENTROPY, m,
                ((1.0, -0.5 * nu, 0.5 * nu + 2.0), (0.0, 0.0, 0.0)), sctl)
    return m ** (0.5 * nu + 2.0) * _moment_prefactor(nu) * s


def fermi_log_moment(nu: float, mu: float, sctl: SeriesControl = DEFAULT_SERIES) -> float:
    """int_0^inf log(1 + e^{-E}) x^nu dx with E = sqrt(x^2+mu^2)."""
    _check_moment_args(nu, mu)
    m = abs(mu)
    s = _series(True, m, ((1.0, -0.5 * nu - 1.0, 0.5 * nu + 1.0), (0.0, 0.0, 0.0)), sctl)
    return m ** (0.5 * nu + 1.0) * _moment_prefactor(nu) * s


def fermi_energy_moment(nu: float, mu: float, sctl: SeriesControl = DEFAULT_SERIES) -> float:
    """int_0^inf E/(e^E + 1) x^nu dx with E = sqrt(x^2+mu^2)."""
    _check_moment_args(nu, mu)
    m = abs(mu)
    s = _series(True, m, ((m, -0.5 * nu, 0.5 * nu),
                          (1.0 + nu, -0.5 * nu - 1.0, 0.5 * nu + 1.0)), sctl)
    return m ** (0.5 * nu + 1.0) * _moment_prefactor(nu) * s


def shifted_laplace_integral(nu: float, z: float) -> float:
    """int_1^inf e^{-zx} (x^2-1)^(nu-1/2) x dx = 2^nu Gamma(nu+1/2) z^-nu K_{nu+1}(z)/sqrt(pi)."""
    from .specfun import bessel_k

    if not nu > -0.5:
        raise DomainError("needs nu > -1/2")
    return 2.0 ** nu * gamma_fn(nu + 0.5) * z ** -nu * bessel_k(nu + 1.0, z) / _SQRT_PI


def moment_quadrature(stat: Statistics, qty: Quantity, nu: float, mu: float,
                      qctl: QuadratureControl = DEFAULT_QUAD) -> float:
    """Adaptive-quadrature value of int_0^inf kernel(x) x^nu dx."""
    return _kernel_mellin(stat, qty, mu, nu, qctl)


__all__ = [
    "CoeffKind", "Representation", "CoeffResult", "MomentKind", "coeff",
    "limit_coeff", "auto_representation", "bessel_terms", "lattice_zeta",
    "mellin_coeff_oracle", "moment_closed", "moment_quadrature",
    "fermi_log_moment", "fermi_energy_moment", "shifted_laplace_integral",
]
