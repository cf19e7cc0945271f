"""The acceptance suite: nine numerical checks, each reduced to a residual
and a pass/fail flag.  ``run_all`` is what ``specact verify`` executes."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import coeffs, kernels, specfun
from .asymptotics import ExpansionRequest, compare_exact, expand_primed, expand_unprimed
from .coeffs import CoeffKind, MomentKind, Representation
from .gibbs import ThermoParams, thermo
from .kernels import Quantity, Statistics, Variant
from .quadrature import integrate, integrate_to_inf
from .spectra import Spectrum, circle_heat_expansion, circle_spectrum, direct_sum, torus_spectrum
from .specfun import DEFAULT_QUAD, DomainError


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    residual: float
    tolerance: float
    detail: str = ""

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"{mark}  {self.name:<34s} residual={self.residual:.3e}  tol={self.tolerance:.1e}  {self.detail}"


def _ratio(worst: float, tol: float) -> bool:
    return math.isfinite(worst) and worst <= tol


# ------------------------------------------------------------------ 1


BESSEL_ORDERS = (-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.5)
BESSEL_ARGS = (0.5, 1.0, 2.0, 5.0, 10.0)


def _five_point(f, x, h):
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h)


def _xi_product(s: float) -> float:
    """xi from its defining product, no symmetry used."""
    return 0.5 * s * (s - 1.0) * math.pi ** (-0.5 * s) * specfun.gamma_fn(0.5 * s) * specfun.riemann_zeta(s)


def check_special_functions() -> CheckResult:
    K = specfun.bessel_k
    rec = deriv = 0.0
    for nu in BESSEL_ORDERS:
        for z in BESSEL_ARGS:
            k0, km, kp = K(nu, z), K(nu - 1, z), K(nu + 1, z)
            rec = max(rec, abs(z * km - z * kp + 2 * nu * k0) / abs(k0))
            # the three derivative laws against a finite difference
            d = _five_point(lambda x: K(nu, x), z, 5e-4 * z)
            for law in (-(km + kp) / 2, -km - nu / z * k0, -kp + nu / z * k0):
                deriv = max(deriv, abs(law - d) / abs(d))
    half = 0.0
    for nu in (0.5, 1.5, 2.5):
        for z in BESSEL_ARGS:
            exact = specfun.k_half_integer(nu, z)
            half = max(half, abs(K(nu, z) / exact - 1.0))
    theta = 0.0
    for t in (0.1, 0.5, 2.0, 10.0):
        lhs = specfun._theta_direct(t, specfun.DEFAULT_SERIES)[0]
        rhs = t ** -0.5 * specfun._theta_direct(1.0 / t, specfun.DEFAULT_SERIES)[0]
        theta = max(theta, abs(lhs - rhs))
    xi = max(abs(specfun.riemann_xi(0.0) - 0.5), abs(specfun.riemann_xi(2.0) - math.pi / 6))
    # the product is 0 * inf at s = -2, so that side uses riemann_xi itself
    for s in (-2.0, -0.5, 0.3, 2.7):
        left = specfun.riemann_xi(s) if s == -2.0 else _xi_product(s)
        xi = max(xi, abs(left / _xi_product(1.0 - s) - 1.0))
    parts = {"recurrence": (rec, 1e-9), "derivative": (deriv, 1e-9), "half_order": (half, 1e-10),
             "theta": (theta, 1e-12), "xi": (xi, 1e-10)}
    worst = max(v / tol for v, tol in parts.values())
    detail = " ".join(f"{k}={v:.1e}" for k, (v, _) in parts.items())
    return CheckResult("1 special functions", worst <= 1.0, worst, 1.0, detail)


# ------------------------------------------------------------------ 2


KERNEL_X = (0.0, 0.5, 1.0, 2.0, 5.0)
KERNEL_MU = (-0.25, -1.0, -2.0)


def check_laplace_identities() -> CheckResult:
    worst = 0.0
    for stat in Statistics:
        for qty in Quantity:
            for var in Variant:
                for mu in KERNEL_MU:
                    for x in KERNEL_X:
                        direct = kernels.kernel_value(stat, qty, var, mu, x)
                        rebuilt = kernels.laplace_reconstruct(stat, qty, mu, x, var=var)
                        worst = max(worst, abs(direct - rebuilt) / (1.0 + abs(direct)))
    return CheckResult("2 Laplace identities", _ratio(worst, 1e-8), worst, 1e-8,
                       f"{8 * len(KERNEL_MU) * len(KERNEL_X)} points")


# ------------------------------------------------------------------ 3


def _fermi_energy_part_quadrature(fn: Callable[[float], float], nu: float) -> float:
    head, _ = integrate(lambda x: fn(x) * x ** nu, 0.0, 1.0, DEFAULT_QUAD)
    tail, _ = integrate_to_inf(lambda x: fn(x) * x ** nu, 1.0, DEFAULT_QUAD)
    return head + tail


def check_moments() -> CheckResult:
    worst = 0.0
    for kind, stat in ((MomentKind.FERMI_ENTROPY, Statistics.FERMI),
                       (MomentKind.BOSE_ENTROPY, Statistics.BOSE)):
        for nu in (0.0, 1.0, 2.0, 3.0):
            for mu in (-0.5, -1.0, -2.0):
                closed = coeffs.moment_closed(kind, nu, mu)
                quad = coeffs.moment_quadrature(stat, Quantity.ENTROPY, nu, mu)
                worst = max(worst, abs(closed - quad) / max(1.0, abs(quad)))
    sub = 0.0
    for nu, mu in ((0.0, -1.0), (2.0, -1.0)):
        def energy(x, mu=mu):
            return np.hypot(x, mu)
        log_q = _fermi_energy_part_quadrature(lambda x: np.log1p(np.exp(-energy(x))), nu)
        en_q = _fermi_energy_part_quadrature(
            lambda x: energy(x) * np.exp(-energy(x)) / (1.0 + np.exp(-energy(x))), nu)
        sub = max(sub, abs(coeffs.fermi_log_moment(nu, mu) - log_q) / max(1.0, abs(log_q)),
                  abs(coeffs.fermi_energy_moment(nu, mu) - en_q) / max(1.0, abs(en_q)))
    both = max(worst, sub)
    return CheckResult("3 moment formulas", _ratio(both, 1e-8), both, 1e-8,
                       f"moments={worst:.1e} parts={sub:.1e}")


# ------------------------------------------------------------------ 4


A_GRID = tuple(-3.0 + 0.5 * i for i in range(13))
COEFF_MU = (-0.5, -1.0, -2.0, -4.0)
XI_MU = {True: (-0.5, -1.0, -2.0), False: (-1.0, -3.0, -5.0)}
LIMIT_AGREEMENT = 1e-6


def _poisson_limit_point(a: float) -> bool:
    return 2 * a == math.floor(2 * a) and a <= 0.5


def check_representations() -> CheckResult:
    worst = 0.0
    bad = []
    for kind in CoeffKind:
        for mu in COEFF_MU:
            for a in A_GRID:
                b = coeffs.coeff(kind, a, mu, Representation.BESSEL)
                p = coeffs.coeff(kind, a, mu, Representation.POISSON)
                allowed = b.est_error + p.est_error
                if _poisson_limit_point(a):
                    allowed = max(allowed, LIMIT_AGREEMENT * max(1.0, abs(b.value)))
                diff = abs(b.value - p.value)
                r = diff / allowed if allowed > 0 else (0.0 if diff == 0 else math.inf)
                if r > 1.0:
                    bad.append(f"{kind.value}(a={a:g},mu={mu:g})")
                worst = max(worst, r)
        for mu in XI_MU[kind.fermi]:
            for a in A_GRID:
                b = coeffs.coeff(kind, a, mu, Representation.BESSEL).value
                x = coeffs.coeff(kind, a, mu, Representation.XI).value
                r = abs(b - x) / (1e-8 * max(1.0, abs(b)))
                if r > 1.0:
                    bad.append(f"xi:{kind.value}(a={a:g},mu={mu:g})")
                worst = max(worst, r)
        outside = -4.0 if kind.fermi else -7.0
        try:
            coeffs.coeff(kind, 0.5, outside, Representation.XI)
            bad.append(f"xi:{kind.value} accepted mu={outside:g}")
            worst = math.inf
        except DomainError:
            pass
    detail = "all agree" if not bad else "disagree: " + ", ".join(bad[:6])
    return CheckResult("4 representation equivalence", worst <= 1.0, worst, 1.0, detail)


# ------------------------------------------------------------------ 5


def check_limit_recovery() -> CheckResult:
    worst = 0.0
    notes = []
    monotone = True
    for a in (-1.0, 0.5, 1.0, 2.0):
        target = coeffs.limit_coeff(CoeffKind.GAMMA, a)
        gaps = [abs(coeffs.coeff(CoeffKind.GAMMA, a, mu).value - target)
                for mu in (-1e-1, -1e-2, -1e-3)]
        if not all(g2 < g1 for g1, g2 in zip(gaps, gaps[1:])):
            monotone = False
            notes.append(f"a={a:g} not monotone")
        worst = max(worst, gaps[-1] / 1e-4)
    consts = max(abs(coeffs.limit_coeff(CoeffKind.GAMMA, 0.0) - math.log(2.0)),
                 abs(coeffs.limit_coeff(CoeffKind.GAMMA, 0.5) - 0.5 / math.sqrt(math.pi)))
    worst = max(worst, consts / 1e-10)
    passed = monotone and worst <= 1.0
    return CheckResult("5 mu -> 0 recovery", passed, worst, 1.0,
                       " ".join(notes) or f"constants={consts:.1e}")


# ------------------------------------------------------------------ 6


def check_thermodynamics() -> CheckResult:
    circle = circle_spectrum(500)
    other = torus_spectrum(2, 12)
    joined = direct_sum(circle, other)
    identity = additivity = deriv = 0.0
    h = 1e-4
    for stat in Statistics:
        for var in Variant:
            p = ThermoParams(0.5, -1.0, stat, var)
            r = thermo(circle, p)
            identity = max(identity, abs(r.entropy - p.beta * r.energy - r.log_Z) / abs(r.entropy))
            a, b, c = thermo(circle, p), thermo(other, p), thermo(joined, p)
            for f in ("entropy", "energy", "log_Z"):
                s = getattr(a, f) + getattr(b, f)
                additivity = max(additivity, abs(getattr(c, f) - s) / abs(s))
            up = thermo(circle, ThermoParams(p.beta + h, p.mu, stat, var)).log_Z
            down = thermo(circle, ThermoParams(p.beta - h, p.mu, stat, var)).log_Z
            deriv = max(deriv, abs(-(up - down) / (2 * h) - r.energy) / abs(r.energy))
    single = Spectrum(((1e-9, 1),))
    s0 = thermo(single, ThermoParams(1e-3, 0.0, Statistics.FERMI)).entropy
    log2 = abs(s0 - math.log(2.0))
    parts = {"identity": (identity, 1e-12), "additivity": (additivity, 1e-12),
             "dlogZ": (deriv, 1e-6), "log2": (log2, 1e-9)}
    worst = max(v / tol for v, tol in parts.values())
    detail = " ".join(f"{k}={v:.1e}" for k, (v, _) in parts.items())
    return CheckResult("6 exact thermodynamics", worst <= 1.0, worst, 1.0, detail)


# ------------------------------------------------------------------ 7


BETA_GRID = (0.2, 0.1, 0.05, 0.025)
# a log-log slope within this of the term power is fit noise, not a higher order
SLOPE_MARGIN = 1e-6


def check_expansion_vs_exact(n_max: int = 2000) -> CheckResult:
    circle = circle_spectrum(n_max)
    h = circle_heat_expansion()
    ok = True
    notes = []
    worst = 0.0
    for stat in (Statistics.FERMI, Statistics.BOSE):
        req = ExpansionRequest(h, ThermoParams(BETA_GRID[0], -1.0, stat, Variant.SQRT_SHIFT), 1)
        table = compare_exact(req, circle, BETA_GRID)
        first = table.rows[0].rel_err
        worst = max(worst, first / 5e-2)
        dec = table.decreasing()
        slope_ok = table.slope > table.last_power + SLOPE_MARGIN
        ok = ok and first < 5e-2 and dec and slope_ok
        errs = ",".join(f"{r.rel_err:.1e}" for r in table.rows)
        notes.append(f"{stat.value}: rel_err=[{errs}] slope={table.slope:.3g} power={table.last_power:g}"
                     f"{'' if dec else ' NOT-DECREASING'}{'' if slope_ok else ' SLOPE<=POWER'}")
    return CheckResult("7 expansion vs exact", ok, worst, 1.0, "; ".join(notes))


# ------------------------------------------------------------------ 8


def check_primed_consistency(n_max: int = 2000) -> CheckResult:
    h = circle_heat_expansion()
    beta = 0.1
    worst = 0.0
    for qty in (Quantity.ENTROPY, Quantity.ENERGY):
        primed = expand_primed(ExpansionRequest(
            h, ThermoParams(beta, -1e-9, Statistics.FERMI, Variant.LINEAR_SHIFT), 1, 2, qty))
        plain = expand_unprimed(ExpansionRequest(
            h, ThermoParams(beta, 0.0, Statistics.FERMI, Variant.SQRT_SHIFT), 1, 0, qty))
        by_key = dict(zip(primed.keys, primed.per_term))
        for l, v in zip(plain.keys, plain.per_term):
            worst = max(worst, abs(by_key[(l, 0)] - v) / max(1.0, abs(v)))
    req = ExpansionRequest(h, ThermoParams(BETA_GRID[0], -1.0, Statistics.FERMI,
                                           Variant.LINEAR_SHIFT), 1, 2)
    table = compare_exact(req, circle_spectrum(n_max), BETA_GRID)
    dec = table.decreasing()
    errs = ",".join(f"{r.abs_err:.1e}" for r in table.rows)
    passed = worst <= 1e-6 and dec
    return CheckResult("8 primed consistency", passed, worst, 1e-6,
                       f"k=0 column ok; LinearShift err=[{errs}] slope={table.slope:.3g}"
                       f"{'' if dec else ' NOT-DECREASING'}")


# ------------------------------------------------------------------ 9


def check_bose_singularity() -> CheckResult:
    raised = []
    for call in (lambda: coeffs.coeff(CoeffKind.KAPPA, -1.0, 0.0, Representation.QUADRATURE),
                 lambda: kernels.laplace_weight(Statistics.BOSE, Quantity.ENERGY, 0.0, 1.0)):
        try:
            call()
            raised.append(False)
        except DomainError:
            raised.append(True)
    fermi = coeffs.coeff(CoeffKind.OMEGA, -1.0, 0.0, Representation.QUADRATURE).value
    target = coeffs.limit_coeff(CoeffKind.OMEGA, -1.0)
    resid = abs(fermi - target) / abs(target)
    passed = all(raised) and resid <= 1e-8
    return CheckResult("9 Bose mu = 0 singularity", passed, resid, 1e-8,
                       f"bose raises={all(raised)} fermi omega_0(-1) ok")


CHECKS: tuple[Callable[[], CheckResult], ...] = (
    check_special_functions,
    check_laplace_identities,
    check_moments,
    check_representations,
    check_limit_recovery,
    check_thermodynamics,
    check_expansion_vs_exact,
    check_primed_consistency,
    check_bose_singularity,
)


def run_check(fn: Callable[[], CheckResult]) -> CheckResult:
    """Run one check, turning an unexpected exception into a failure."""
    try:
        return fn()
    except Exception as exc:  # noqa: BLE001 - a crash is a failed check
        number = CHECKS.index(fn) + 1 if fn in CHECKS else 0
        name = f"{number} " + fn.__name__.removeprefix("check_").replace("_", " ")
        return CheckResult(name, False, math.inf, 0.0, f"{type(exc).__name__}: {exc}")


def run_all() -> list[CheckResult]:
    return [run_check(fn) for fn in CHECKS]


__all__ = ["CheckResult", "CHECKS", "run_all", "run_check"] + [f.__name__ for f in CHECKS]
