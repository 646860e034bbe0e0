"""Bessel functions J_n, Y_n of integer order, their derivatives and J zeros.

Evaluation strategy: cephes ``j0/j1/y0/y1`` (via scipy.special) provide the
base orders; higher orders use the three-term recurrence, which is stable
upward for Y everywhere and for J in the oscillatory regime ``x >= n``.  For
``x < n`` (where upward J recurrence is unstable) J comes from Miller's
normalized backward recurrence.  Everything is vectorized over the argument;
adjacent orders ``(n-1, n)`` are produced by a single recurrence pass, which
is what the annulus determinants consume.

Zeros of J_n are located by a sequential bracketing march (the spacing of
consecutive zeros of J_n is always > 3.1, so a step of 1.4 cannot skip a
pair) and refined by Newton iteration with a bisection fallback.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np
from scipy import special as _sp

__all__ = [
    "BesselZero",
    "ConvergenceError",
    "bessel_j",
    "bessel_j_pair",
    "bessel_y",
    "bessel_y_pair",
    "bessel_deriv",
    "bessel_j_zero",
]

_EPS = float(np.finfo(float).eps)

# first positive zero of J_n exceeds n, and consecutive zeros are spaced by
# more than 3.1 for every order; 1.4 is a safe scan step
_ZERO_SCAN_STEP = 1.4


class ConvergenceError(RuntimeError):
    """Zero refinement did not reach tolerance within the iteration bound."""


def _check_order(n) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise TypeError(f"order must be an integer, got {n!r}")
    if n < 0:
        raise ValueError(f"order must be non-negative, got {n}")
    return int(n)


def _j_forward(n: int, x: np.ndarray):
    jm, jc = _sp.j0(x), _sp.j1(x)
    for m in range(1, n):
        jm, jc = jc, (2.0 * m / x) * jc - jm
    return jm, jc


def _j_miller(n: int, x: np.ndarray):
    """(J_{n-1}, J_n) for x < n via backward recurrence.

    Normalization uses J_0 + 2*sum_m J_{2m} = 1, which needs no reference
    evaluation and is immune to zeros of J_0.
    """
    start = n + int(math.ceil(math.sqrt(40.0 * n))) + 12
    fp = np.zeros_like(x)  # f_{start+1}
    fc = np.full_like(x, 1e-30)  # f_start, arbitrary seed
    total = np.zeros_like(x)
    out_n = np.zeros_like(x)
    out_m = np.zeros_like(x)
    if start % 2 == 0:
        total += 2.0 * fc
    for m in range(start, 0, -1):
        fp, fc = fc, (2.0 * m / x) * fc - fp
        order = m - 1
        if order == n:
            out_n = fc.copy()
        elif order == n - 1:
            out_m = fc.copy()
        if order > 0 and order % 2 == 0:
            total += 2.0 * fc
        big = np.abs(fc) > 1e250
        if big.any():
            scale = np.where(big, 1e-250, 1.0)
            fp *= scale
            fc *= scale
            total *= scale
            out_n *= scale
            out_m *= scale
    total += fc  # adds f_0
    return out_m / total, out_n / total


def _j_pair_array(n: int, x: np.ndarray):
    """(J_{n-1}(x), J_n(x)) for n >= 1 on a positive array."""
    if n == 1:
        return _sp.j0(x), _sp.j1(x)
    out_m = np.empty_like(x)
    out_n = np.empty_like(x)
    fwd = x >= n
    if fwd.any():
        xm = x[fwd]
        out_m[fwd], out_n[fwd] = _j_forward(n, xm)
    bwd = ~fwd
    if bwd.any():
        out_m[bwd], out_n[bwd] = _j_miller(n, x[bwd])
    return out_m, out_n


def _y_pair_array(n: int, x: np.ndarray):
    """(Y_{n-1}(x), Y_n(x)) for n >= 1; forward recurrence is stable for Y.

    In the deep exponential regime the true values exceed the double range;
    overflow saturates to -inf (one step past saturation the recurrence
    produces inf - inf, repaired to -inf since Y_n < 0 below its first zero).
    """
    with np.errstate(over="ignore", invalid="ignore"):
        ym, yc = _sp.y0(x), _sp.y1(x)
        for m in range(1, n):
            ym, yc = yc, (2.0 * m / x) * yc - ym
        bad = np.isnan(yc) & (x < n)
        if bad.any():
            yc = np.where(bad, -np.inf, yc)
        bad_m = np.isnan(ym) & (x < n)
        if bad_m.any():
            ym = np.where(bad_m, -np.inf, ym)
    return ym, yc


def _as_positive_array(x, name: str, allow_zero: bool):
    arr = np.asarray(x, dtype=float)
    if allow_zero:
        if (arr < 0).any():
            raise ValueError(f"{name} requires x >= 0")
    else:
        if (arr <= 0).any():
            raise ValueError(f"{name} requires x > 0")
    return arr


def _give_back(value: np.ndarray, like) -> float | np.ndarray:
    return float(value[()]) if np.ndim(like) == 0 else value


def bessel_j(n: int, x) -> float | np.ndarray:
    """J_n(x) for integer n >= 0 and x >= 0 (scalar or array)."""
    n = _check_order(n)
    arr = _as_positive_array(x, "bessel_j", allow_zero=True)
    zero = arr == 0.0
    if zero.any():
        out = np.empty_like(arr)
        out[zero] = 1.0 if n == 0 else 0.0
        nz = ~zero
        if nz.any():
            out[nz] = bessel_j(n, arr[nz])
        return _give_back(out, x)
    if n == 0:
        return _give_back(_sp.j0(arr), x)
    return _give_back(_j_pair_array(n, arr)[1], x)


def bessel_j_pair(n: int, x):
    """(J_{n-1}(x), J_n(x)) for n >= 1, one recurrence pass."""
    n = _check_order(n)
    if n < 1:
        raise ValueError("bessel_j_pair needs n >= 1")
    arr = _as_positive_array(x, "bessel_j_pair", allow_zero=False)
    jm, jn = _j_pair_array(n, arr)
    return _give_back(jm, x), _give_back(jn, x)


def bessel_y(n: int, x) -> float | np.ndarray:
    """Y_n(x) for integer n >= 0 and strictly positive x."""
    n = _check_order(n)
    arr = _as_positive_array(x, "bessel_y", allow_zero=False)
    if n == 0:
        return _give_back(_sp.y0(arr), x)
    return _give_back(_y_pair_array(n, arr)[1], x)


def bessel_y_pair(n: int, x):
    """(Y_{n-1}(x), Y_n(x)) for n >= 1."""
    n = _check_order(n)
    if n < 1:
        raise ValueError("bessel_y_pair needs n >= 1")
    arr = _as_positive_array(x, "bessel_y_pair", allow_zero=False)
    ym, yn = _y_pair_array(n, arr)
    return _give_back(ym, x), _give_back(yn, x)


def bessel_deriv(kind: str, n: int, x) -> float | np.ndarray:
    """d/dx of J_n or Y_n via C_n'(x) = C_{n-1}(x) - (n/x) C_n(x).

    For n = 0 the identity C_0' = -C_1 is used.
    """
    n = _check_order(n)
    if kind not in ("J", "Y", "j", "y"):
        raise ValueError(f"kind must be 'J' or 'Y', got {kind!r}")
    is_j = kind in ("J", "j")
    arr = _as_positive_array(x, "bessel_deriv", allow_zero=False)
    if n == 0:
        c1 = _sp.j1(arr) if is_j else _sp.y1(arr)
        return _give_back(-c1, x)
    cm, cn = (_j_pair_array if is_j else _y_pair_array)(n, arr)
    return _give_back(cm - (n / arr) * cn, x)


@dataclass(frozen=True)
class BesselZero:
    """The index-th positive zero of J_order."""

    order: int
    index: int
    value: float


def _refine_j_zero(n: int, lo: float, hi: float) -> float:
    """Newton with bracket safeguard; J_n changes sign on [lo, hi]."""
    f_lo = bessel_j(n, lo)
    x = 0.5 * (lo + hi)
    for _ in range(100):
        fx = bessel_j(n, x)
        if fx == 0.0:
            return x
        if (fx > 0) == (f_lo > 0):
            lo = x
        else:
            hi = x
        dfx = bessel_deriv("J", n, x)
        step = fx / dfx if dfx != 0.0 else hi - lo
        x_new = x - step
        if not lo < x_new < hi:  # Newton escaped: bisect
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) <= 4.0 * _EPS * x:
            return x_new
        x = x_new
    raise ConvergenceError(f"zero refinement for J_{n} stalled in [{lo}, {hi}]")


_zeros_cache: dict[int, list[float]] = {}
_zeros_lock = threading.Lock()


def _extend_zeros(n: int, count: int) -> list[float]:
    zeros = _zeros_cache.setdefault(n, [])
    while len(zeros) < count:
        if zeros:
            # zero spacing exceeds 3.1, so +0.5 sits strictly between zeros
            x = zeros[-1] + 0.5
        else:
            # Olver anchor: j_{n,1} ~ n + 1.8557 n^{1/3}; J_n > 0 below it
            x = max(0.5, n + 0.5 * 1.8557 * n ** (1.0 / 3.0)) if n else 0.5
        fx = bessel_j(n, x)
        while True:
            x_next = x + _ZERO_SCAN_STEP
            f_next = bessel_j(n, x_next)
            if (f_next > 0) != (fx > 0) or f_next == 0.0:
                zeros.append(_refine_j_zero(n, x, x_next))
                break
            x, fx = x_next, f_next
    return zeros


def bessel_j_zero(n: int, t: int) -> BesselZero:
    """t-th positive zero of J_n (t >= 1)."""
    n = _check_order(n)
    if isinstance(t, bool) or not isinstance(t, (int, np.integer)) or t < 1:
        raise ValueError(f"zero index must be a positive integer, got {t!r}")
    t = int(t)
    with _zeros_lock:
        zeros = _extend_zeros(n, t)
        value = zeros[t - 1]
    return BesselZero(order=n, index=t, value=value)
