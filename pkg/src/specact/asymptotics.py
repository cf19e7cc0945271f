"""Small-beta expansions of entropy and energy from heat-expansion data,
and their comparison with exact mode sums.

Every term is ``weight * beta**power * C(order)`` where ``C`` is one of the
coefficient functions evaluated at the scaled potential ``beta * mu``.

SqrtShift (``expand_unprimed``), one term per group ``l``::

    sum_{z in X_l} a_z beta^(-2z) C(-z)

LinearShift (``expand_primed``), terms indexed by ``(l, k)``; the kernel
is Taylor-expanded in the linear part of the exponent, which brings in the
expansion of ``Tr |D|^k exp(-t D^2)`` (Fermi) or
``Tr |D|^2k exp(-t D^4)`` (Bose)::

    Fermi  (2mu)^k/k! beta^(k-2z)   R_k(z)           C(k/2 - z)
    Bose   (2mu)^k/k! beta^(k-z)    R_k(z) (halved)  C((k - z)/2)

with ``R_k(z) = Gamma(w) Res(zeta, z)``, ``w = z + k/2`` (Bose: ``(z+k)/2``),
or ``(-1)^n/n! zeta(z)`` when ``w = -n`` is a non-positive integer; the
halving applies only to the residue part.  Energy terms carry one more
power of ``1/beta``.

An ``(l, k)`` pair is kept when ``l <= L``, ``k <= K`` and its beta power
does not exceed that of ``(0, K)``.  Terms are summed in increasing beta
power (ties by ``l``, then ``k``), so raising ``K`` only appends terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import coeffs as _coeffs
from .coeffs import CoeffKind
from .gibbs import ThermoParams, thermo
from .kernels import Quantity, Statistics, Variant
from .spectra import HeatExpansion, Spectrum, TailPolicy, DEFAULT_TAIL
from .specfun import ConvergenceError, DomainError, gamma_fn


@dataclass(frozen=True)
class ExpansionRequest:
    h: HeatExpansion
    p: ThermoParams
    L: int
    K: int = 0
    quantity: Quantity = Quantity.ENTROPY

    def __post_init__(self):
        if self.L < 0 or self.K < 0:
            raise ValueError("L and K must be non-negative")

    def at_beta(self, beta: float) -> "ExpansionRequest":
        p = ThermoParams(beta, self.p.mu, self.p.stat, self.p.variant)
        return ExpansionRequest(self.h, p, self.L, self.K, self.quantity)

    @property
    def kind(self) -> CoeffKind:
        return CoeffKind.for_pair(self.p.stat, self.quantity)


@dataclass(frozen=True)
class Term:
    """One summand ``weight * beta**power * C(order)`` of a group."""

    key: int | tuple[int, int]
    z: float
    weight: float
    power: float
    order: float


@dataclass(frozen=True)
class ExpansionResult:
    keys: list
    per_term: list[float]
    partial_sums: list[float]
    total: float
    terms: list[Term] = field(default_factory=list, repr=False)

    def as_rows(self) -> list[dict]:
        return [{"term": _key_text(k), "value": v, "partial_sum": s}
                for k, v, s in zip(self.keys, self.per_term, self.partial_sums)]


def _key_text(key) -> str:
    return str(key) if isinstance(key, int) else f"{key[0]},{key[1]}"


def _is_nonpositive_int(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def _energy_shift(req: ExpansionRequest) -> int:
    return -1 if req.quantity is Quantity.ENERGY else 0


def plan_unprimed(req: ExpansionRequest) -> list[Term]:
    shift = _energy_shift(req)
    terms = []
    for l, group in enumerate(req.h.groups[: req.L + 1]):
        for z, a in group:
            terms.append(Term(l, z, a, -2.0 * z + shift, -z))
    return terms


def _residue_factor(h: HeatExpansion, z: float, w: float, halve: bool) -> float:
    if _is_nonpositive_int(w):
        n = int(-w)
        return (-1) ** n / math.factorial(n) * h.zeta_value(z)
    res = h.residue(z)
    if res == 0.0:
        return 0.0
    return gamma_fn(w) * res * (0.5 if halve else 1.0)


def primed_keys(h: HeatExpansion, stat: Statistics, L: int, K: int) -> list[tuple[int, int]]:
    """Retained (l, k) pairs in summation order."""
    scale = h.scale
    if not scale:
        return []
    per_k = 2.0 if stat is Statistics.FERMI else 1.0
    limit = K + per_k * scale[0]
    keys = []
    for l in range(min(L + 1, len(scale))):
        for k in range(K + 1):
            order = k + per_k * scale[l]
            if order <= limit + 1e-12:
                keys.append((order, l, k))
    keys.sort()
    return [(l, k) for _, l, k in keys]


def plan_primed(req: ExpansionRequest) -> list[Term]:
    fermi = req.p.stat is Statistics.FERMI
    mu = req.p.mu
    shift = _energy_shift(req)
    terms = []
    for l, k in primed_keys(req.h, req.p.stat, req.L, req.K):
        taylor = (2.0 * mu) ** k / math.factorial(k)
        for z, _a in req.h.groups[l]:
            if fermi:
                w = z + 0.5 * k
                r = _residue_factor(req.h, z, w, halve=False)
                terms.append(Term((l, k), z, taylor * r, k - 2.0 * z + shift, 0.5 * k - z))
            else:
                w = 0.5 * (z + k)
                r = _residue_factor(req.h, z, w, halve=True)
                terms.append(Term((l, k), z, taylor * r, k - z + shift, 0.5 * (k - z)))
    return terms


def _evaluate(req: ExpansionRequest, terms: list[Term]) -> ExpansionResult:
    kind = req.kind
    beta = req.p.beta
    scaled_mu = beta * req.p.mu
    keys: list = []
    values: list[float] = []
    for t in terms:
        if t.weight == 0.0:
            v = 0.0
        else:
            try:
                c = _coeffs.coeff(kind, t.order, scaled_mu).value
            except (DomainError, ConvergenceError) as exc:
                raise type(exc)(f"term {t.key} (z={t.z:g}): {exc}") from exc
            v = t.weight * beta ** t.power * c
        if keys and keys[-1] == t.key:
            values[-1] += v
        else:
            keys.append(t.key)
            values.append(v)
    partial = list(np.cumsum(values)) if values else []
    partial = [float(x) for x in partial]
    total = partial[-1] if partial else 0.0
    return ExpansionResult(keys, values, partial, total, terms)


def _check_mu(req: ExpansionRequest) -> None:
    fermi_sqrt = req.p.stat is Statistics.FERMI and req.p.variant is Variant.SQRT_SHIFT
    if req.p.mu > 0 or (req.p.mu == 0 and not fermi_sqrt):
        raise DomainError(f"expansion needs mu < 0, got {req.p.mu}")


def expand_unprimed(req: ExpansionRequest) -> ExpansionResult:
    """SqrtShift expansion, one term per heat-expansion group up to L."""
    if req.p.variant is not Variant.SQRT_SHIFT:
        raise DomainError("expand_unprimed is for the SqrtShift variant")
    _check_mu(req)
    return _evaluate(req, plan_unprimed(req))


def expand_primed(req: ExpansionRequest) -> ExpansionResult:
    """LinearShift expansion over the retained (l, k) pairs."""
    if req.p.variant is not Variant.LINEAR_SHIFT:
        raise DomainError("expand_primed is for the LinearShift variant")
    _check_mu(req)
    return _evaluate(req, plan_primed(req))


def expand(req: ExpansionRequest) -> ExpansionResult:
    if req.p.variant is Variant.SQRT_SHIFT:
        return expand_unprimed(req)
    return expand_primed(req)


def last_power(req: ExpansionRequest) -> float:
    """Largest beta power among the retained terms."""
    terms = plan_unprimed(req) if req.p.variant is Variant.SQRT_SHIFT else plan_primed(req)
    return max((t.power for t in terms), default=float("nan"))


@dataclass(frozen=True)
class CompareRow:
    beta: float
    exact: float
    expansion: float
    abs_err: float
    rel_err: float


@dataclass(frozen=True)
class CompareTable:
    rows: list[CompareRow]
    slope: float
    last_power: float

    def decreasing(self) -> bool:
        """rel_err shrinks at every step towards smaller beta."""
        rows = sorted(self.rows, key=lambda r: -r.beta)
        return all(b.rel_err < a.rel_err for a, b in zip(rows, rows[1:]))


def fit_slope(betas, errors) -> float:
    """Least-squares slope of log|err| against log beta (nan if < 2 points)."""
    pts = [(math.log(b), math.log(abs(e))) for b, e in zip(betas, errors)
           if e != 0 and math.isfinite(e)]
    if len(pts) < 2:
        return float("nan")
    x, y = np.array(pts).T
    return float(np.polyfit(x, y, 1)[0])


def compare_exact(req: ExpansionRequest, s: Spectrum, beta_grid,
                  tail: TailPolicy = DEFAULT_TAIL) -> CompareTable:
    """Expansion against exact mode sums over ``beta_grid``.

    ``s`` must be a spectrum of the geometry described by ``req.h``.
    """
    rows = []
    for beta in beta_grid:
        r = req.at_beta(float(beta))
        report = thermo(s, r.p, tail)
        exact = report.entropy if req.quantity is Quantity.ENTROPY else report.energy
        approx = expand(r).total
        err = abs(exact - approx)
        rel = err / abs(exact) if exact != 0 else math.inf
        rows.append(CompareRow(float(beta), exact, approx, err, rel))
    slope = fit_slope([r.beta for r in rows], [r.abs_err for r in rows])
    return CompareTable(rows, slope, last_power(req))


__all__ = [
    "ExpansionRequest", "ExpansionResult", "Term", "plan_unprimed", "plan_primed",
    "primed_keys", "expand_unprimed", "expand_primed", "expand", "last_power",
    "CompareRow", "CompareTable", "compare_exact", "fit_slope",
]
