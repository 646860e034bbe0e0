"""Independent oracles for the test suite.

Everything here is deliberately written from scratch (ascending series,
plain bisection, dense scans) so the tests never share a code path with the
implementation they check.
"""

from __future__ import annotations

import math

import numpy as np


def bessel_j_series(n: int, x: float, terms: int = 80) -> float:
    """Ascending power series sum_m (-1)^m (x/2)^(n+2m) / (m! (n+m)!)."""
    half = 0.5 * x
    pieces = []
    term = half ** n / math.factorial(n)
    for m in range(terms):
        pieces.append(term)
        term *= -half * half / ((m + 1) * (n + m + 1))
        if abs(term) < 1e-300:
            break
    return math.fsum(pieces)


def bessel_y0_series(x: float, terms: int = 60) -> float:
    """Y_0 small-argument series:
    (2/pi)[(ln(x/2) + gamma) J_0(x) + sum_m (-1)^(m+1) H_m (x^2/4)^m / (m!)^2].
    """
    gamma = 0.5772156649015328606
    j0 = bessel_j_series(0, x)
    quarter = 0.25 * x * x
    harmonic = 0.0
    power = 1.0
    pieces = []
    for m in range(1, terms):
        harmonic += 1.0 / m
        power *= quarter / (m * m)
        pieces.append((-1) ** (m + 1) * harmonic * power)
    return (2.0 / math.pi) * ((math.log(0.5 * x) + gamma) * j0 + math.fsum(pieces))


def bisect(f, lo: float, hi: float, xtol: float = 1e-13) -> float:
    """Plain bisection; f(lo) and f(hi) must straddle zero."""
    f_lo = f(lo)
    f_hi = f(hi)
    assert f_lo * f_hi <= 0, "bisection oracle needs a sign change"
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    return 0.5 * (lo + hi)


def newton_on_series(n: int, x0: float) -> float:
    """Newton refinement of a J_n zero using only the series oracle."""
    x = x0
    for _ in range(60):
        f = bessel_j_series(n, x)
        h = 1e-7
        df = (bessel_j_series(n, x + h) - bessel_j_series(n, x - h)) / (2 * h)
        step = f / df
        x -= step
        if abs(step) < 1e-13:
            break
    return x


def dense_sign_changes(f, lo: float, hi: float, n: int = 200) -> int:
    """Number of sign changes of f on a dense uniform grid."""
    xs = np.linspace(lo, hi, n)
    vals = np.array([f(float(x)) for x in xs])
    signs = np.sign(vals[np.abs(vals) > 0])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def golden_minimize(f, lo: float, hi: float, xtol: float = 1e-11):
    """Plain golden-section minimizer used to freeze derived optima."""
    inv = (math.sqrt(5.0) - 1.0) / 2.0
    c = hi - inv * (hi - lo)
    d = lo + inv * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > xtol:
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - inv * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + inv * (hi - lo)
            fd = f(d)
    mid = 0.5 * (lo + hi)
    return mid, f(mid)
