"""Compiled inner loops.

Every function here is written in the numba-compatible subset so that
``_jit.jit`` can compile it or leave it as plain Python.  Status codes are
returned instead of raising; the public wrappers translate them.
"""

import math

import numpy as np

from ._jit import jit

OK = 0
NOT_CONVERGED = 1

# Gauss-Kronrod 7/15 abscissae on [-1, 1] and the matching weights.
_XK = np.array([
    -0.991455371120812639206854697526329, -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926, -0.741531185599394439863864773280788,
    -0.586087235467691130294144845693013, -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245, 0.0,
    0.207784955007898467600689403773245, 0.405845151377397166906606412076961,
    0.586087235467691130294144845693013, 0.741531185599394439863864773280788,
    0.864864423359769072789712788640926, 0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
])
_WK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
    0.204432940075298892414161999234649, 0.190350578064785409913256402421014,
    0.169004726639267902826583426598550, 0.140653259715525918745189590510238,
    0.104790010322250183839876322541518, 0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
])
_WG = np.array([
    0.0, 0.129484966168869693270611432679082, 0.0,
    0.279705391489276667901467771423780, 0.0,
    0.381830050505118944950369775488975, 0.0,
    0.417959183673469387755102040816327, 0.0,
    0.381830050505118944950369775488975, 0.0,
    0.279705391489276667901467771423780, 0.0,
    0.129484966168869693270611432679082, 0.0,
])

SQRT_PI = math.sqrt(math.pi)
PI2 = math.pi * math.pi


# ---------------------------------------------------------------- Bessel K


@jit
def _k_log_integrand(t, nu, z):
    # log of exp(-z (cosh t - 1)) * exp(|nu| t) / 2, the dominant half of cosh
    s = math.sinh(0.5 * t)
    return -2.0 * z * s * s + abs(nu) * t - math.log(2.0)


@jit
def _k_integrand(t, nu, z):
    s = math.sinh(0.5 * t)
    base = -2.0 * z * s * s
    return 0.5 * (math.exp(base + nu * t) + math.exp(base - nu * t))


@jit
def _k_gk15(a, b, nu, z):
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    rk = 0.0
    rg = 0.0
    fv = np.empty(15)
    for i in range(15):
        f = _k_integrand(c + h * _XK[i], nu, z)
        fv[i] = f
        rk += _WK[i] * f
        rg += _WG[i] * f
    mean = 0.5 * rk
    resasc = 0.0
    for i in range(15):
        resasc += _WK[i] * abs(fv[i] - mean)
    rk *= h
    rg *= h
    resasc *= abs(h)
    err = abs(rk - rg)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    return rk, err


@jit
def bessel_k_scaled(nu, z, rel_tol, max_sub):
    """e^z K_nu(z) by globally adaptive G7K15 on the cosh representation.

    Returns (value, error_estimate, status).
    """
    anu = abs(nu)
    tpk = math.asinh(anu / z) if anu > 0.0 else 0.0
    peak = _k_log_integrand(tpk, anu, z)
    drop = max(40.0, -math.log(rel_tol) + 12.0)
    # bracket the cutoff where the integrand fell `drop` below its peak
    lo = tpk
    step = 1.0
    hi = tpk + step
    while _k_log_integrand(hi, anu, z) > peak - drop:
        lo = hi
        step *= 2.0
        hi = tpk + step
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if _k_log_integrand(mid, anu, z) > peak - drop:
            lo = mid
        else:
            hi = mid
    cut = hi

    left = np.empty(max_sub + 2)
    right = np.empty(max_sub + 2)
    val = np.empty(max_sub + 2)
    err = np.empty(max_sub + 2)
    n = 0
    if tpk > 0.0:
        bounds = (0.0, tpk, cut)
        for j in range(2):
            r, e = _k_gk15(bounds[j], bounds[j + 1], nu, z)
            left[n] = bounds[j]
            right[n] = bounds[j + 1]
            val[n] = r
            err[n] = e
            n += 1
    else:
        r, e = _k_gk15(0.0, cut, nu, z)
        left[0] = 0.0
        right[0] = cut
        val[0] = r
        err[0] = e
        n = 1

    status = NOT_CONVERGED
    while True:
        total = 0.0
        terr = 0.0
        worst = 0
        for i in range(n):
            total += val[i]
            terr += err[i]
            if err[i] > err[worst]:
                worst = i
        if terr <= rel_tol * abs(total) or terr == 0.0:
            status = OK
            break
        if n >= max_sub:
            break
        a = left[worst]
        b = right[worst]
        m = 0.5 * (a + b)
        r1, e1 = _k_gk15(a, m, nu, z)
        r2, e2 = _k_gk15(m, b, nu, z)
        right[worst] = m
        val[worst] = r1
        err[worst] = e1
        left[n] = m
        right[n] = b
        val[n] = r2
        err[n] = e2
        n += 1
    return total, terr, status


@jit
def bessel_k_scaled_many(nu, z, rel_tol, max_sub):
    out = np.empty(z.shape[0])
    status = OK
    for i in range(z.shape[0]):
        v, _, st = bessel_k_scaled(nu, z[i], rel_tol, max_sub)
        out[i] = v
        if st != OK:
            status = st
    return out, status


@jit
def bessel_series(m, alternating, c1, p1, nu1, c2, p2, nu2,
                  rel_tol, k_rel_tol, max_sub, max_terms):
    """Sum_{n>=1} s_n [c1 n^p1 K_nu1(n m) + c2 n^p2 K_nu2(n m)].

    s_n = (-1)^(n+1) when ``alternating`` else 1.  Returns
    (sum, sum_of_magnitudes, tail_bound, terms_used, status).
    """
    total = 0.0
    mag = 0.0
    pmax = max(p1, p2) if c2 != 0.0 else p1
    npeak = max(1.0, pmax / m) if pmax > 0.0 else 1.0
    last = 0.0
    status = NOT_CONVERGED
    n = 0
    while n < max_terms:
        n += 1
        z = n * m
        ln = math.log(n)
        term = 0.0
        if c1 != 0.0:
            k1, _, st = bessel_k_scaled(nu1, z, k_rel_tol, max_sub)
            if st != OK:
                return total, mag, math.inf, n, st
            term += c1 * k1 * math.exp(p1 * ln - z)
        if c2 != 0.0:
            k2, _, st = bessel_k_scaled(nu2, z, k_rel_tol, max_sub)
            if st != OK:
                return total, mag, math.inf, n, st
            term += c2 * k2 * math.exp(p2 * ln - z)
        if alternating and n % 2 == 0:
            term = -term
        total += term
        mag += abs(term)
        last = abs(term)
        if n >= npeak and (last <= rel_tol * mag or last == 0.0):
            status = OK
            break
    # beyond the peak n^p e^{-nm} K(nm) e^{nm} shrinks at least like the
    # majorant below, so the discarded tail is bounded by a short sum
    tail = 0.0
    pp = max(pmax, 0.0) + 0.5
    for j in range(1, 2000):
        f = math.exp(pp * math.log((n + j) / n) - j * m)
        tail += f
        if f < 1e-17 * tail:
            break
    return total, mag, last * tail, n, status


# ------------------------------------------------------------ Laplace weights

W_FERMI_ENTROPY = 0
W_FERMI_ENERGY = 1
W_BOSE_ENTROPY = 2
W_BOSE_ENERGY = 3

T_TINY = 1e-8
T_SWITCH = 0.25


@jit
def _weight_one(kind, mu2, t, rel_tol, max_terms):
    if t < T_TINY:
        return 0.0, OK
    total = 0.0
    if t < T_SWITCH:
        # dual (Jacobi-inverted) series, terms in log space
        lt = math.log(t)
        for n in range(1, max_terms + 1):
            q = 0.25 * n * n
            e = math.exp(-q / t - 2.5 * lt - mu2 * t) / SQRT_PI
            if kind == W_FERMI_ENTROPY:
                term = q * e
            elif kind == W_FERMI_ENERGY:
                term = (q - 0.5 * t) * e
            elif kind == W_BOSE_ENTROPY:
                term = -q * e
            else:
                term = (q - 0.5 * t) * e
            if (kind == W_FERMI_ENTROPY or kind == W_FERMI_ENERGY) and n % 2 == 0:
                term = -term
            total += term
            if e == 0.0 or abs(term) <= rel_tol * abs(total):
                return total, OK
        return total, NOT_CONVERGED
    # direct lattice series
    fermi = kind == W_FERMI_ENTROPY or kind == W_FERMI_ENERGY
    if kind == W_BOSE_ENTROPY:
        total = -math.exp(-mu2 * t) / (2.0 * t)
    elif kind == W_FERMI_ENERGY:
        total = -math.exp(-mu2 * t) * t ** -1.5 / (4.0 * SQRT_PI)
    elif kind == W_BOSE_ENERGY:
        total = math.exp(-mu2 * t) * t ** -1.5 / (4.0 * SQRT_PI)
    for j in range(max_terms):
        if fermi:
            m = 2 * j + 1
            c = PI2 * m * m
        else:
            m = j + 1
            c = 4.0 * PI2 * m * m
        e = math.exp(-(c + mu2) * t)
        if kind == W_FERMI_ENTROPY:
            term = (2.0 * c * t - 1.0) * e / t
        elif kind == W_FERMI_ENERGY:
            term = 2.0 * c * e
        elif kind == W_BOSE_ENTROPY:
            term = (2.0 * c * t - 1.0) * e / t
        else:
            term = -2.0 * c * e
        total += term
        if e == 0.0 or abs(term) <= rel_tol * abs(total):
            return total, OK
    return total, NOT_CONVERGED


@jit
def weight_many(kind, mu2, t, rel_tol, max_terms):
    out = np.empty(t.shape[0])
    status = OK
    for i in range(t.shape[0]):
        v, st = _weight_one(kind, mu2, t[i], rel_tol, max_terms)
        out[i] = v
        if st != OK:
            status = st
    return out, status


# ----------------------------------------------------------------- mode sums


@jit
def tree_sum(x):
    """Pairwise sum with a fixed, input-order-only reduction tree."""
    n = x.shape[0]
    if n == 0:
        return 0.0
    buf = x.copy()
    while n > 1:
        half = n // 2
        for i in range(half):
            buf[i] = buf[2 * i] + buf[2 * i + 1]
        if n % 2 == 1:
            buf[half] = buf[n - 1]
            n = half + 1
        else:
            n = half
    return buf[0]


@jit
def mode_sums(y, eps, mult, bose):
    """(log Z, entropy, energy) from scaled energies y = beta*eps."""
    e = np.exp(-y)
    if bose:
        one_minus = -np.expm1(-y)
        lz = -np.log(one_minus)
        occ = e / one_minus
    else:
        lz = np.log1p(e)
        occ = e / (1.0 + e)
    s = y * occ + lz
    en = eps * occ
    return tree_sum(mult * lz), tree_sum(mult * s), tree_sum(mult * en)


@jit
def weighted_power_sum(lam_abs, mult, k, t):
    """Sum m |lambda|^k exp(-t lambda^2)."""
    if k == 0:
        v = mult * np.exp(-t * lam_abs * lam_abs)
    else:
        v = mult * lam_abs ** k * np.exp(-t * lam_abs * lam_abs)
    return tree_sum(v)
