"""Bracketing and refinement of real roots of scalar transcendental functions.

Guards built in: non-finite grid values never carry sign information across
themselves, candidate sign changes are re-scanned at a tenth of the step (so
clustered roots are split), and a divergence check rejects pole crossings of
the tan type.  Refinement is a bracket-safe Brent-style iteration (bisection
interleaved with secant / inverse quadratic steps).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "Bracket",
    "RootResult",
    "NoRootError",
    "IterationLimitError",
    "scan_brackets",
    "refine",
    "smallest_root",
]

DEFAULT_XTOL = 1e-12
_REFINE_MAX_ITER = 200


class NoRootError(RuntimeError):
    """Expanding scan reached its ceiling without finding a sign change."""


class IterationLimitError(RuntimeError):
    """refine() hit the iteration limit; the input is pathological."""


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float
    f_lo: float
    f_hi: float

    def __post_init__(self):
        if not (self.lo < self.hi):
            raise ValueError("bracket needs lo < hi")
        if not (np.isfinite(self.f_lo) and np.isfinite(self.f_hi)):
            raise ValueError("bracket endpoint values must be finite")
        if not self.f_lo * self.f_hi < 0:
            raise ValueError("bracket endpoints must straddle a sign change")


@dataclass(frozen=True)
class RootResult:
    root: float
    residual: float
    iterations: int
    bracket: Bracket


def _evaluate_grid(f: Callable, grid: np.ndarray) -> np.ndarray:
    """Evaluate f on the grid, using one array call when f supports it."""
    try:
        values = np.asarray(f(grid), dtype=float)
        if values.shape == grid.shape:
            return values
    except Exception:
        pass
    return np.array([float(f(float(x))) for x in grid])


def _f_scalar(f: Callable, x: float) -> float:
    return float(np.asarray(f(x), dtype=float).reshape(()))


def _looks_like_pole(f: Callable, lo: float, hi: float,
                     f_lo: float, f_hi: float) -> bool:
    """True when 4 step-halvings show min |f| at the endpoints growing.

    At a genuine root the surviving half-bracket's endpoint magnitudes
    shrink; across a pole (tan-type sign flip) they blow up monotonically.
    """
    last = min(abs(f_lo), abs(f_hi))
    grew = 0
    for _ in range(4):
        mid = 0.5 * (lo + hi)
        f_mid = _f_scalar(f, mid)
        if not np.isfinite(f_mid):
            return True
        if f_mid == 0.0:
            return False
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
        cur = min(abs(f_lo), abs(f_hi))
        if cur > last:
            grew += 1
        last = cur
    return grew == 4


def _subdivide(f: Callable, lo: float, hi: float, f_lo: float, f_hi: float,
               out: list[Bracket]) -> None:
    """Re-scan a candidate interval at step/10 and emit the sub-brackets."""
    xs = np.linspace(lo, hi, 11)
    vals = _evaluate_grid(f, xs)
    vals[0], vals[-1] = f_lo, f_hi
    for i in range(10):
        a, b = float(xs[i]), float(xs[i + 1])
        fa, fb = float(vals[i]), float(vals[i + 1])
        if not (np.isfinite(fa) and np.isfinite(fb)):
            continue
        if fa * fb < 0 and not _looks_like_pole(f, a, b, fa, fb):
            out.append(Bracket(a, b, fa, fb))


def scan_brackets(f: Callable, lo: float, hi: float, step: float) -> list[Bracket]:
    """Every sign change of f on the grid {lo, lo+step, ..., hi}.

    Non-finite grid values are opaque: no bracket spans them.  Candidate
    intervals are re-scanned at step/10 and split when they hold several
    crossings; pole-type sign flips are rejected.  A grid value that is
    exactly zero yields the bracket formed by its straddling neighbours.
    """
    if not lo < hi:
        raise ValueError("scan needs lo < hi")
    if not step > 0:
        raise ValueError("scan step must be positive")
    n = int(np.floor((hi - lo) / step + 1e-9))
    grid = lo + step * np.arange(n + 1)
    if grid[-1] < hi - 1e-12 * max(1.0, abs(hi)):
        grid = np.append(grid, hi)
    vals = _evaluate_grid(f, grid)
    finite = np.isfinite(vals)
    found: list[Bracket] = []
    for i in range(len(grid) - 1):
        if not (finite[i] and finite[i + 1]):
            continue
        fa, fb = float(vals[i]), float(vals[i + 1])
        if fa * fb < 0:
            _subdivide(f, float(grid[i]), float(grid[i + 1]), fa, fb, found)
        elif fa == 0.0 and i > 0 and finite[i - 1]:
            fp = float(vals[i - 1])
            if fp * fb < 0:
                found.append(Bracket(float(grid[i - 1]), float(grid[i + 1]), fp, fb))
    return found


def _interpolate(lo, f_lo, hi, f_hi, x2, f2):
    """Inverse-quadratic (three distinct ordinates) or secant candidate."""
    if f2 not in (f_lo, f_hi) and x2 not in (lo, hi):
        d_ab = f_lo - f_hi
        d_ac = f_lo - f2
        d_bc = f_hi - f2
        return (lo * f_hi * f2 / (d_ab * d_ac)
                - hi * f_lo * f2 / (d_ab * d_bc)
                + x2 * f_lo * f_hi / (d_ac * d_bc))
    if f_hi != f_lo:
        return hi - f_hi * (hi - lo) / (f_hi - f_lo)
    return None


def refine(f: Callable, b: Bracket, xtol: float = DEFAULT_XTOL) -> RootResult:
    """Shrink a bracket to width <= xtol, never stepping outside it.

    Interpolation candidates are only accepted while the bracket keeps
    halving every other iteration; otherwise the step is a plain bisection,
    so convergence is guaranteed well inside the 200-iteration limit.  An
    exact zero hit returns immediately.
    """
    if not xtol > 0:
        raise ValueError("xtol must be positive")
    lo, hi, f_lo, f_hi = b.lo, b.hi, b.f_lo, b.f_hi
    x2, f2 = lo, f_lo  # third point for inverse quadratic
    width_2ago = hi - lo
    width_1ago = hi - lo
    iterations = 0
    while hi - lo > xtol:
        iterations += 1
        if iterations > _REFINE_MAX_ITER:
            raise IterationLimitError(
                f"no convergence to xtol={xtol} in {_REFINE_MAX_ITER} iterations")
        width = hi - lo
        x = None
        if width <= 0.5 * width_2ago:  # progressing: interpolation allowed
            x = _interpolate(lo, f_lo, hi, f_hi, x2, f2)
            if x is not None and not (lo + 1e-4 * width < x < hi - 1e-4 * width):
                x = None
        if x is None:
            x = 0.5 * (lo + hi)
        fx = _f_scalar(f, x)
        if not np.isfinite(fx):
            raise ValueError(f"non-finite value {fx} inside bracket at x={x}")
        if fx == 0.0:
            return RootResult(x, 0.0, iterations, Bracket(lo, hi, f_lo, f_hi))
        x2, f2 = (lo, f_lo) if (fx > 0) == (f_lo > 0) else (hi, f_hi)
        if (fx > 0) == (f_lo > 0):
            lo, f_lo = x, fx
        else:
            hi, f_hi = x, fx
        width_2ago, width_1ago = width_1ago, hi - lo
    root = lo if abs(f_lo) <= abs(f_hi) else hi
    residual = f_lo if root == lo else f_hi
    return RootResult(root, residual, iterations, Bracket(lo, hi, f_lo, f_hi))


def smallest_root(f: Callable, lo: float, step: float,
                  xtol: float = DEFAULT_XTOL, ceiling: float = 1e4) -> RootResult:
    """Refine the first bracket of an expanding scan that starts at lo.

    The scan window grows geometrically until a bracket appears or the
    ceiling is reached (NoRootError).
    """
    if lo < 0:
        raise ValueError("smallest_root needs lo >= 0")
    if not step > 0:
        raise ValueError("scan step must be positive")
    span = 256.0 * step
    start = lo
    while start < ceiling:
        stop = min(start + span, ceiling)
        brackets = scan_brackets(f, start, stop, step)
        if brackets:
            return refine(f, brackets[0], xtol)
        start = stop
        span *= 2.0
    raise NoRootError(f"no sign change found below the ceiling {ceiling}")
