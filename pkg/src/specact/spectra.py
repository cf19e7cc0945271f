"""One-particle spectra, exact heat traces and heat-expansion data.

A ``Spectrum`` is a finite, sorted list of ``(eigenvalue, multiplicity)``
pairs with no zero eigenvalue.  Model geometries (circle, flat tori) are
truncated at construction; the truncation is recorded so that the thermal
routines can bound what was dropped.

A ``HeatExpansion`` stores the small-t data of ``Tr exp(-t D^2)`` as groups
of ``(z, a_z)`` pairs, ``Tr exp(-t D^2) ~ sum_l sum_{z in X_l} a_z t^-z``,
together with the residues and regular values of the spectral zeta function
``zeta(s) = Tr |D|^-2s`` that ``rho_lk`` needs.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Mapping

import numpy as np

from . import _kernels
from .specfun import DomainError, gamma_fn, riemann_zeta


class SpectrumFileError(ValueError):
    """A spectrum file row failed to parse."""


class MissingZetaDatum(LookupError):
    """rho_lk needs a zeta residue or value that the expansion lacks."""


@dataclass(frozen=True)
class Truncation:
    """Where a model spectrum was cut, and how fast the dropped part grows.

    Every dropped eigenvalue has ``|lambda| >= radius``, and the dropped
    multiplicity with ``r <= |lambda| < r + 1`` is at most
    ``shell_constant * (r + 1)**shell_degree``.
    """

    radius: float
    shell_degree: int
    shell_constant: float

    def merge(self, other: "Truncation | None") -> "Truncation":
        if other is None:
            return self
        return Truncation(
            min(self.radius, other.radius),
            max(self.shell_degree, other.shell_degree),
            self.shell_constant + other.shell_constant,
        )


@dataclass(frozen=True)
class Spectrum:
    modes: tuple[tuple[float, int], ...]
    label: str = ""
    truncation: Truncation | None = None
    abs_values: np.ndarray = field(init=False, repr=False, compare=False)
    weights: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        merged: dict[float, int] = {}
        for lam, m in self.modes:
            lam = float(lam)
            if not math.isfinite(lam):
                raise DomainError(f"eigenvalue {lam!r} is not finite")
            if lam == 0.0:
                raise DomainError("zero eigenvalue: the operator must have trivial kernel")
            if int(m) != m or m < 1:
                raise DomainError(f"multiplicity {m!r} of eigenvalue {lam} must be a positive integer")
            merged[lam] = merged.get(lam, 0) + int(m)
        modes = tuple(sorted(merged.items()))
        object.__setattr__(self, "modes", modes)
        lam = np.array([m[0] for m in modes], dtype=float)
        object.__setattr__(self, "abs_values", np.abs(lam))
        object.__setattr__(self, "weights", np.array([m[1] for m in modes], dtype=float))
        self.abs_values.flags.writeable = False
        self.weights.flags.writeable = False

    def __len__(self) -> int:
        return len(self.modes)

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.array([m[0] for m in self.modes], dtype=float)

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.modes)


def circle_spectrum(n_max: int) -> Spectrum:
    """Eigenvalues +-1, ..., +-n_max, each simple."""
    if n_max < 1:
        raise DomainError("circle_spectrum needs n_max >= 1")
    modes = [(float(s * j), 1) for j in range(1, n_max + 1) for s in (-1, 1)]
    return Spectrum(tuple(modes), f"circle:{n_max}", Truncation(n_max + 1.0, 0, 2.0))


def spinor_dimension(d: int) -> int:
    return 2 ** (d // 2)


def torus_spectrum(d: int, n_max: int) -> Spectrum:
    """Flat d-torus: +-|k| over nonzero k in Z^d with |k_i| <= n_max.

    The lattice count of each shell |k|^2 = q, times the spinor dimension,
    is shared evenly between +sqrt(q) and -sqrt(q), so the heat trace is
    ``spinor * sum_{k != 0} exp(-t |k|^2)`` and d = 1 is the circle.
    """
    if d not in (1, 2, 3):
        raise DomainError(f"torus dimension must be 1, 2 or 3, got {d}")
    if n_max < 1:
        raise DomainError("torus_spectrum needs n_max >= 1")
    axis = np.arange(-n_max, n_max + 1, dtype=np.int64) ** 2
    q = axis
    for _ in range(d - 1):
        q = (q[:, None] + axis[None, :]).ravel()
    counts = np.bincount(q)
    spin = spinor_dimension(d)
    modes = []
    for qq in np.nonzero(counts)[0][1:]:
        per_sign = int(counts[qq]) * spin // 2
        r = math.sqrt(float(qq))
        modes.append((-r, per_sign))
        modes.append((r, per_sign))
    # lattice points with r <= |k| < r+1 number at most 2d 3^(d-1) (r+1)^(d-1)
    shell = spin * 2.0 * d * 3.0 ** (d - 1)
    return Spectrum(tuple(modes), f"torus:{d}:{n_max}", Truncation(n_max + 1.0, d - 1, shell))


def parse_spectrum(text: str, label: str = "") -> Spectrum:
    modes = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 2:
            raise SpectrumFileError(f"line {lineno}: expected 'lambda,multiplicity', got {raw!r}")
        try:
            lam = float(parts[0].replace("−", "-"))
            mult = int(parts[1])
        except ValueError:
            raise SpectrumFileError(f"line {lineno}: cannot parse {raw!r}") from None
        if lam == 0.0:
            raise DomainError(f"line {lineno}: zero eigenvalue is not allowed")
        if mult < 1:
            raise SpectrumFileError(f"line {lineno}: multiplicity must be >= 1")
        modes.append((lam, mult))
    return Spectrum(tuple(modes), label)


def spectrum_from_file(path: str | Path) -> Spectrum:
    path = Path(path)
    return parse_spectrum(path.read_text(encoding="utf-8"), f"file:{path}")


def direct_sum(s1: Spectrum, s2: Spectrum) -> Spectrum:
    """Spectrum of D1 (+) D2: modes concatenated, equal eigenvalues merged."""
    trunc = s1.truncation.merge(s2.truncation) if s1.truncation else s2.truncation
    label = f"{s1.label}+{s2.label}" if s1.label and s2.label else s1.label or s2.label
    return Spectrum(s1.modes + s2.modes, label, trunc)


def heat_trace_k(s: Spectrum, k: int, t: float) -> float:
    """sum m |lambda|^k exp(-t lambda^2)."""
    if not t > 0:
        raise DomainError("heat_trace_k needs t > 0")
    if k < 0 or int(k) != k:
        raise DomainError("heat_trace_k needs a non-negative integer k")
    if len(s) == 0:
        return 0.0
    return float(_kernels.weighted_power_sum(s.abs_values, s.weights, int(k), float(t)))


def heat_trace(s: Spectrum, t: float) -> float:
    return heat_trace_k(s, 0, t)


# ------------------------------------------------------- heat expansion


def _is_nonpositive_int(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def _key(x: float) -> float:
    # exponents are small dyadic rationals; round to merge 0.5 and 0.5000000001
    return round(float(x), 12)


@dataclass(frozen=True)
class HeatExpansion:
    groups: tuple[tuple[tuple[float, float], ...], ...]
    zeta_residues: tuple[tuple[float, float], ...] = ()
    zeta_values: Mapping[float, float] = field(default_factory=dict)
    zeta_evaluator: Callable[[float], float] | None = field(default=None, compare=False)
    label: str = ""

    def __post_init__(self):
        groups = tuple(tuple((float(z), float(a)) for z, a in g) for g in self.groups)
        object.__setattr__(self, "groups", groups)
        object.__setattr__(self, "zeta_residues",
                           tuple((float(p), float(r)) for p, r in self.zeta_residues))
        object.__setattr__(self, "zeta_values",
                           {_key(p): float(v) for p, v in dict(self.zeta_values).items()})
        for l, g in enumerate(groups):
            if not g:
                raise ValueError(f"heat-expansion group {l} is empty")
        scale = self.scale
        if any(b <= a for a, b in zip(scale, scale[1:])):
            raise ValueError(f"group scales must increase strictly, got {scale}")

    @property
    def scale(self) -> tuple[float, ...]:
        """r_l = -max Re z over group l; the group contributes O(t^r_l)."""
        return tuple(-max(z for z, _ in g) for g in self.groups)

    def residue(self, z: float) -> float:
        """Res(zeta, z); zero at non-positive integers not listed as poles."""
        for p, r in self.zeta_residues:
            if _key(p) == _key(z):
                return r
        if _is_nonpositive_int(z):
            return 0.0
        raise MissingZetaDatum(f"no zeta residue stored at s={z:g}")

    def zeta_value(self, s: float) -> float:
        key = _key(s)
        if key in self.zeta_values:
            return self.zeta_values[key]
        if self.zeta_evaluator is not None:
            return float(self.zeta_evaluator(s))
        raise MissingZetaDatum(f"no zeta value stored at s={s:g}")

    def predicted_coefficient(self, z: float) -> float:
        """a_z as implied by the zeta data: Res(Gamma(s) zeta(s), z)."""
        if _is_nonpositive_int(z):
            n = int(-z)
            return (-1) ** n / math.factorial(n) * self.zeta_value(z)
        return gamma_fn(z) * self.residue(z)

    def consistency_residual(self) -> float:
        """max |a_z - Res(Gamma zeta, z)| over all stored exponents."""
        worst = 0.0
        for g in self.groups:
            for z, a in g:
                worst = max(worst, abs(a - self.predicted_coefficient(z)))
        return worst

    def evaluate(self, t: float, upto: int | None = None) -> float:
        """sum of a_z t^-z over groups 0..upto."""
        groups = self.groups if upto is None else self.groups[: upto + 1]
        return math.fsum(a * t ** (-z) for g in groups for z, a in g)

    # JSON round trip -------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "groups": [[{"z": z, "a_z": a} for z, a in g] for g in self.groups],
            "zeta_residues": [{"pole": p, "residue": r} for p, r in self.zeta_residues],
            "zeta_values": [{"point": p, "value": v} for p, v in sorted(self.zeta_values.items())],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "HeatExpansion":
        try:
            groups = tuple(tuple((e["z"], e["a_z"]) for e in g) for g in data["groups"])
            residues = tuple((e["pole"], e["residue"]) for e in data.get("zeta_residues", []))
            values = {e["point"]: e["value"] for e in data.get("zeta_values", [])}
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed heat-expansion data: {exc}") from None
        return cls(groups, residues, values, None, data.get("label", ""))

    @classmethod
    def loads(cls, text: str) -> "HeatExpansion":
        return cls.from_dict(json.loads(text))

    @classmethod
    def load(cls, path: str | Path) -> "HeatExpansion":
        return cls.loads(Path(path).read_text(encoding="utf-8"))

    def dump(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps() + "\n", encoding="utf-8")


def empty_heat_expansion() -> HeatExpansion:
    return HeatExpansion((), label="empty")


def circle_heat_expansion() -> HeatExpansion:
    """Tr exp(-t D^2) = sqrt(pi/t) - 1 + (exponentially small), zeta = 2 zeta_R(2s)."""
    return HeatExpansion(
        groups=(((0.5, math.sqrt(math.pi)),), ((0.0, -1.0),)),
        zeta_residues=((0.5, 1.0),),
        zeta_values={0.0: -1.0},
        zeta_evaluator=lambda s: 2.0 * riemann_zeta(2.0 * s),
        label="circle",
    )


def torus_heat_expansion(d: int) -> HeatExpansion:
    """spin * (theta(t/pi)^d - 1): leading spin (pi/t)^(d/2), then -spin."""
    if d not in (1, 2, 3):
        raise DomainError(f"torus dimension must be 1, 2 or 3, got {d}")
    if d == 1:
        return circle_heat_expansion()
    spin = spinor_dimension(d)
    half = 0.5 * d
    lead = spin * math.pi ** half
    return HeatExpansion(
        groups=(((half, lead),), ((0.0, -float(spin)),)),
        zeta_residues=((half, lead / gamma_fn(half)),),
        zeta_values={0.0: -float(spin)},
        label=f"torus:{d}",
    )


def rho_lk(h: HeatExpansion, l: int, k: int, t: float) -> float:
    """Group l's contribution to the small-t expansion of Tr |D|^k exp(-t D^2)."""
    if not 0 <= l < len(h.groups):
        raise IndexError(f"heat expansion has {len(h.groups)} groups, asked for {l}")
    if k < 0 or int(k) != k:
        raise DomainError("rho_lk needs a non-negative integer k")
    if not t > 0:
        raise DomainError("rho_lk needs t > 0")
    total = 0.0
    for z, _a in h.groups[l]:
        w = z + 0.5 * k
        if _is_nonpositive_int(w):
            n = int(-w)
            total += (-1) ** n / math.factorial(n) * h.zeta_value(z) * t ** n
        else:
            total += gamma_fn(w) * h.residue(z) * t ** (-w)
    return total


# ------------------------------------------------------------ tail policy


@dataclass(frozen=True)
class TailPolicy:
    """Acceptance rule for a truncated model spectrum.

    The report is reliable when the Boltzmann factor exp(-beta eps) at the
    cutoff is below ``guard_factor`` machine epsilons and the estimated
    dropped entropy is below ``tolerance`` (relative to max(1, entropy)).
    """

    guard_factor: float = 1.0
    tolerance: float = 1e-12

    def __post_init__(self):
        if not self.guard_factor > 0:
            raise ValueError("guard_factor must be positive")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")

    @property
    def boltzmann_limit(self) -> float:
        return float(np.finfo(float).eps) * self.guard_factor


DEFAULT_TAIL = TailPolicy()


def shells(trunc: Truncation, max_shells: int = 100_000) -> Iterable[tuple[float, float]]:
    """(radius, multiplicity bound) for the unit shells beyond the cutoff."""
    for j in itertools.count():
        if j >= max_shells:
            return
        r = trunc.radius + j
        yield r, trunc.shell_constant * (r + 1.0) ** trunc.shell_degree


__all__ = [
    "Spectrum", "Truncation", "SpectrumFileError", "MissingZetaDatum",
    "circle_spectrum", "torus_spectrum", "spinor_dimension", "parse_spectrum",
    "spectrum_from_file", "direct_sum", "heat_trace", "heat_trace_k",
    "HeatExpansion", "empty_heat_expansion", "circle_heat_expansion",
    "torus_heat_expansion", "rho_lk", "TailPolicy", "DEFAULT_TAIL", "shells",
]
