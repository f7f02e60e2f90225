"""Real roots and global extrema of exact polynomials on a closed interval.

Roots are isolated by sign changes on a uniform scan and refined by
bisection; extrema are taken over the endpoints and the critical points,
with the final comparison done in exact arithmetic.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .poly import Polynomial
from .rational import as_fraction, from_float

SCAN_POINTS = 1024
ROOT_XTOL = 1e-12


def real_roots(p: Polynomial, lo, hi, scan: int = SCAN_POINTS, xtol: float = ROOT_XTOL) -> list[float]:
    """Roots of ``p`` in [lo, hi] where ``p`` changes sign (or vanishes on a scan node)."""
    lo_f, hi_f = float(lo), float(hi)
    if p.degree is None or p.degree == 0 or hi_f <= lo_f:
        return []
    coeffs = p.float_coeffs()[::-1]
    xs = np.linspace(lo_f, hi_f, scan + 1)
    vals = np.polyval(coeffs, xs)
    roots: list[float] = []
    for k in range(scan + 1):
        if vals[k] == 0.0:
            roots.append(float(xs[k]))
    for k in np.nonzero(vals[:-1] * vals[1:] < 0)[0]:
        a, b = float(xs[k]), float(xs[k + 1])
        fa = vals[k]
        while b - a > xtol:
            m = 0.5 * (a + b)
            fm = np.polyval(coeffs, m)
            if fm == 0.0:
                a = b = m
                break
            if (fm < 0) == (fa < 0):
                a, fa = m, fm
            else:
                b = m
        roots.append(0.5 * (a + b))
    return sorted(roots)


def critical_points(p: Polynomial, lo, hi, scan: int = SCAN_POINTS, xtol: float = ROOT_XTOL) -> list[Fraction]:
    """Endpoints plus interior roots of p', as exact rationals inside [lo, hi]."""
    lo, hi = as_fraction(lo), as_fraction(hi)
    pts = {lo, hi}
    for x in real_roots(p.derivative(), lo, hi, scan, xtol):
        pts.add(min(max(from_float(x), lo), hi))
    return sorted(pts)


def maximize(p: Polynomial, lo, hi, scan: int = SCAN_POINTS, xtol: float = ROOT_XTOL) -> tuple[Fraction, Fraction]:
    """Global maximum of ``p`` on [lo, hi]: (argmax, max), ties to the leftmost point."""
    best = None
    for x in critical_points(p, lo, hi, scan, xtol):
        v = p(x)
        if best is None or v > best[1]:
            best = (x, v)
    return best


def minimize(p: Polynomial, lo, hi, scan: int = SCAN_POINTS, xtol: float = ROOT_XTOL) -> tuple[Fraction, Fraction]:
    x, v = maximize(-p, lo, hi, scan, xtol)
    return x, -v
