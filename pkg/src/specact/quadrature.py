"""Globally adaptive Gauss-Kronrod (7/15) quadrature for vectorised
integrands, with the semi-infinite case mapped to [0, 1] by t = s + 1/w - 1.
"""

from __future__ import annotations

import heapq
import math
from typing import Callable

import numpy as np

from ._kernels import _WG, _WK, _XK
from .specfun import DEFAULT_QUAD, ConvergenceError, QuadratureControl

Integrand = Callable[[np.ndarray], np.ndarray]


def _gk15(f: Integrand, a: float, b: float) -> tuple[float, float]:
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    fv = np.asarray(f(c + h * _XK), dtype=float)
    if not np.all(np.isfinite(fv)):
        raise ConvergenceError(f"integrand not finite on [{a}, {b}]")
    rk = float(np.dot(_WK, fv))
    rg = float(np.dot(_WG, fv))
    resasc = float(np.dot(_WK, np.abs(fv - 0.5 * rk))) * abs(h)
    rk *= h
    err = abs(rk - rg * h)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    return rk, err


def integrate(f: Integrand, a: float, b: float,
              ctl: QuadratureControl = DEFAULT_QUAD,
              breakpoints: tuple[float, ...] = ()) -> tuple[float, float]:
    """Integral of f over [a, b]; returns (value, error estimate)."""
    pts = [a] + sorted(p for p in breakpoints if a < p < b) + [b]
    heap = []
    for lo, hi in zip(pts[:-1], pts[1:]):
        v, e = _gk15(f, lo, hi)
        heap.append((-e, lo, hi, v))
    heapq.heapify(heap)
    total = sum(item[3] for item in heap)
    err = sum(-item[0] for item in heap)
    n = len(heap)
    while err > max(ctl.abs_tol, ctl.rel_tol * abs(total)):
        if n >= ctl.max_subdivisions:
            raise ConvergenceError(
                f"quadrature on [{a}, {b}] stalled at error {err:.3g} "
                f"after {n} subintervals")
        neg_e, lo, hi, v = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        v1, e1 = _gk15(f, lo, mid)
        v2, e2 = _gk15(f, mid, hi)
        heapq.heappush(heap, (-e1, lo, mid, v1))
        heapq.heappush(heap, (-e2, mid, hi, v2))
        total += v1 + v2 - v
        err += e1 + e2 + neg_e
        n += 1
    # re-add in a fixed order so the result does not depend on heap history
    items = sorted(heap, key=lambda item: item[1])
    return math.fsum(item[3] for item in items), math.fsum(-item[0] for item in items)


def integrate_to_inf(f: Integrand, start: float, ctl: QuadratureControl = DEFAULT_QUAD
                     ) -> tuple[float, float]:
    """Integral of f over [start, inf) via t = start - 1 + 1/w, w in (0, 1]."""

    def g(w):
        w = np.asarray(w, dtype=float)
        out = np.zeros_like(w)
        live = w > 0
        wl = w[live]
        out[live] = f(start - 1.0 + 1.0 / wl) / (wl * wl)
        return out

    return integrate(g, 0.0, 1.0, ctl)


def integrate_half_line(f: Integrand, ctl: QuadratureControl = DEFAULT_QUAD,
                        breakpoints: tuple[float, ...] = ()) -> tuple[float, float]:
    """Integral over [0, inf), split at ``ctl.domain_split``."""
    s = ctl.domain_split
    v1, e1 = integrate(f, 0.0, s, ctl, breakpoints)
    v2, e2 = integrate_to_inf(f, s, ctl)
    return v1 + v2, e1 + e2
