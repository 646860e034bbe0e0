"""Buckling of the plate strip (0, pi) x (-ell, ell): clamped long edges,
Navier short edges.

Expanding in sin(mx) reduces the problem to a fourth-order ODE for the
transverse factor h(y); nontrivial solutions exist only for lambda > m^2 and
come in parity families whose frequencies gamma = sqrt(lambda - m^2) solve
    even:  gamma tan(gamma ell) = -m tanh(m ell)
    odd :  tan(gamma ell)/gamma  =  tanh(m ell)/m
with exactly one root per stated bracket.  The pole-free forms
    F(gamma) = gamma sin(gamma ell) + m tanh(m ell) cos(gamma ell)
    G(gamma) = m sin(gamma ell) - gamma tanh(m ell) cos(gamma ell)
carry guaranteed endpoint sign changes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import rootfind

__all__ = [
    "RectMode",
    "RectFirstResult",
    "BracketSignError",
    "EllNotFoundError",
    "gamma_even",
    "gamma_odd",
    "mode_gamma",
    "h_profile",
    "phi",
    "lambda_1m",
    "minimize_lambda1_real",
    "first_eigenvalue_rect",
    "find_ell_for_nodal_count",
]

DEFAULT_XTOL = 1e-12
_ELL_SCAN_RANGE = (1e-3, 10.0)


class BracketSignError(RuntimeError):
    """The guaranteed sign change is absent: a numerical bug, not a math one."""


class EllNotFoundError(RuntimeError):
    """No half-height with the requested nodal count inside the scan range."""


@dataclass(frozen=True)
class RectMode:
    """Branch datum (k, m): parity of h, gamma in (k pi/2l, (k+1) pi/2l),
    eigenvalue lambda = m^2 + gamma^2."""

    k: int
    m: float
    ell: float
    parity: str  # "even" | "odd"
    gamma: float
    lam: float


@dataclass(frozen=True)
class RectFirstResult:
    ell: float
    m_opt: int
    lambda1: float
    nodal_domains: int


def _check_positive(value: float, name: str) -> float:
    value = float(value)
    if not value > 0:
        raise ValueError(f"{name} must be positive")
    return value


def _bracketed_root(f, lo: float, hi: float, xtol: float) -> float:
    """Root in (lo, hi) where f is guaranteed to change sign.

    When the root collapses onto an endpoint to within roundoff (the m -> 0
    limit), the endpoint is returned rather than failing the sign check.
    """
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if f_lo * f_hi > 0:
        if abs(f_hi) <= 64.0 * np.finfo(float).eps * abs(hi):
            return hi
        if abs(f_lo) <= 64.0 * np.finfo(float).eps * abs(lo):
            return lo
        raise BracketSignError(
            f"no sign change on [{lo}, {hi}]: f={f_lo:.3e}, {f_hi:.3e}")
    res = rootfind.refine(f, rootfind.Bracket(lo, hi, f_lo, f_hi), xtol)
    return res.root


def gamma_even(m: float, ell: float, j: int, xtol: float = DEFAULT_XTOL) -> float:
    """Unique even-family root in ((pi/2 + j pi)/ell, (pi + j pi)/ell)."""
    m = _check_positive(m, "m")
    ell = _check_positive(ell, "ell")
    if j < 0:
        raise ValueError("branch index j must be non-negative")
    c = m * math.tanh(m * ell)
    f = lambda g: g * math.sin(g * ell) + c * math.cos(g * ell)
    lo = (0.5 * math.pi + j * math.pi) / ell
    hi = (math.pi + j * math.pi) / ell
    return _bracketed_root(f, lo, hi, xtol)


def gamma_odd(m: float, ell: float, j: int, xtol: float = DEFAULT_XTOL) -> float:
    """Unique odd-family root in ((pi + j pi)/ell, (3 pi/2 + j pi)/ell)."""
    m = _check_positive(m, "m")
    ell = _check_positive(ell, "ell")
    if j < 0:
        raise ValueError("branch index j must be non-negative")
    t = math.tanh(m * ell)
    f = lambda g: m * math.sin(g * ell) - g * t * math.cos(g * ell)
    lo = (math.pi + j * math.pi) / ell
    hi = (1.5 * math.pi + j * math.pi) / ell
    return _bracketed_root(f, lo, hi, xtol)


def mode_gamma(k: int, m: float, ell: float, xtol: float = DEFAULT_XTOL) -> RectMode:
    """Branch (k, m): odd k dispatches to the even family with j = (k-1)/2,
    even k to the odd family with j = (k-2)/2."""
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 1:
        raise ValueError("transverse index k must be a positive integer")
    k = int(k)
    if k % 2 == 1:
        parity = "even"
        gamma = gamma_even(m, ell, (k - 1) // 2, xtol)
    else:
        parity = "odd"
        gamma = gamma_odd(m, ell, (k - 2) // 2, xtol)
    return RectMode(k=k, m=float(m), ell=float(ell), parity=parity,
                    gamma=gamma, lam=float(m) ** 2 + gamma ** 2)


def h_profile(mode: RectMode, y):
    """Transverse factor h(y) on [-ell, ell], vanishing with its derivative
    at both ends."""
    arr = np.asarray(y, dtype=float)
    if (np.abs(arr) > mode.ell * (1 + 1e-12)).any():
        raise ValueError("y outside [-ell, ell]")
    m, g, ell = mode.m, mode.gamma, mode.ell
    if mode.parity == "even":
        val = np.cosh(m * arr) - (math.cosh(m * ell) / math.cos(g * ell)) * np.cos(g * arr)
    else:
        val = np.sinh(m * arr) - (math.sinh(m * ell) / math.sin(g * ell)) * np.sin(g * arr)
    return float(val[()]) if np.ndim(y) == 0 else val


def phi(m: float, ell: float = 1.0, xtol: float = DEFAULT_XTOL) -> float:
    """First even-family root gamma_{1,m}; strictly decreasing from pi/ell
    to pi/(2 ell)."""
    return gamma_even(m, ell, 0, xtol)


def lambda_1m(m: float, ell: float = 1.0, xtol: float = DEFAULT_XTOL) -> float:
    """First-branch eigenvalue m^2 + gamma_{1,m}^2 (real m > 0 accepted;
    eigenvalue claims need integer m)."""
    g = phi(m, ell, xtol)
    return float(m) ** 2 + g * g


def minimize_lambda1_real(ell: float, xtol: float = 1e-10) -> tuple[float, float]:
    """Golden-section minimum of m -> lambda_1m over real m > 0.

    The bracket expands geometrically from m = 1 until the interior value
    beats both endpoints.
    """
    ell = _check_positive(ell, "ell")
    f = lambda m: lambda_1m(m, ell)
    lo, mid, hi = 0.5, 1.0, 2.0
    f_lo, f_mid, f_hi = f(lo), f(mid), f(hi)
    for _ in range(200):
        if f_mid <= f_lo and f_mid <= f_hi:
            break
        if f_lo < f_mid:  # downhill to the left
            hi, f_hi = mid, f_mid
            mid, f_mid = lo, f_lo
            lo *= 0.5
            f_lo = f(lo)
        else:  # downhill to the right
            lo, f_lo = mid, f_mid
            mid, f_mid = hi, f_hi
            hi *= 2.0
            f_hi = f(hi)
    else:
        raise RuntimeError("failed to bracket the minimum of lambda_1m")
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = hi - invphi * (hi - lo)
    d = lo + invphi * (hi - lo)
    f_c, f_d = f(c), f(d)
    while hi - lo > xtol:
        if f_c < f_d:
            hi, d, f_d = d, c, f_c
            c = hi - invphi * (hi - lo)
            f_c = f(c)
        else:
            lo, c, f_c = c, d, f_d
            d = lo + invphi * (hi - lo)
            f_d = f(d)
    m_star = 0.5 * (lo + hi)
    return m_star, f(m_star)


def first_eigenvalue_rect(ell: float, xtol: float = DEFAULT_XTOL) -> RectFirstResult:
    """Minimize lambda_{1,m} over integer m; since lambda_{1,m} > m^2 the
    search stops once m^2 exceeds the best value.  The first eigenfunction
    is h_{1,m}(y) sin(m x) with h positive, so it has m nodal domains."""
    ell = _check_positive(ell, "ell")
    best = None
    m_opt = 0
    m = 1
    while best is None or m * m < best:
        lam = lambda_1m(float(m), ell, xtol)
        if best is None or lam < best:
            best, m_opt = lam, m
        m += 1
    return RectFirstResult(ell=ell, m_opt=m_opt, lambda1=best,
                           nodal_domains=m_opt)


def _branch_crossing(n: int, start: float, xtol: float) -> float:
    """The ell where branches lambda_{1,n} and lambda_{1,n+1} swap order,
    localized on a descending geometric grid (ratio 0.95) from `start`."""
    diff = lambda ell: lambda_1m(float(n), ell) - lambda_1m(float(n + 1), ell)
    hi = start
    d_hi = diff(hi)
    while d_hi >= 0:  # start below the crossing: climb until branch n wins
        hi /= 0.95
        if hi > _ELL_SCAN_RANGE[1]:
            raise EllNotFoundError(f"branch crossing {n}/{n + 1} above scan range")
        d_hi = diff(hi)
    lo = hi
    d_lo = d_hi
    while d_lo < 0:
        hi, d_hi = lo, d_lo
        lo *= 0.95
        if lo < _ELL_SCAN_RANGE[0]:
            raise EllNotFoundError(f"branch crossing {n}/{n + 1} below scan range")
        d_lo = diff(lo)
    res = rootfind.refine(diff, rootfind.Bracket(lo, hi, d_lo, d_hi), xtol)
    return res.root


def find_ell_for_nodal_count(n: int, xtol: float = 1e-10) -> float:
    """A half-height ell whose first eigenfunction has exactly n nodal domains.

    The m_opt = n region is bounded by the crossings of branch n with its
    neighbours; the geometric midpoint is returned after re-verification.
    Witnesses strictly decrease in n.
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError("nodal count must be a positive integer")
    n = int(n)
    if n == 1:
        candidate = 1.0
    else:
        upper = _branch_crossing(n - 1, 1.0, xtol)
        lower = _branch_crossing(n, upper, xtol)
        candidate = math.sqrt(lower * upper)
    result = first_eigenvalue_rect(candidate)
    if result.m_opt != n:
        raise EllNotFoundError(
            f"verification failed: m_opt={result.m_opt} at ell={candidate}")
    return candidate
