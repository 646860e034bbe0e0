"""Buckling eigenvalues of the clamped plate on the annulus a < |x| < 1,
the punctured unit disk (a = 0) and the full disk.

Separation into v(r)e^{ik\theta} turns the eigenvalue problem on the annulus
into the vanishing of a 4x4 boundary-condition determinant per angular mode
k, with closed forms assembled from Bessel J/Y cross products.  The smallest
positive root mu of a mode's determinant gives the branch eigenvalue
tau_k(a) = mu^2; minimizing over k (with the disk-branch values j_{k+1,1}^2
as the certified search cutoff) gives the first eigenvalue.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import rootfind
from .specfun import (
    bessel_j,
    bessel_j_pair,
    bessel_j_zero,
    bessel_y,
    bessel_y_pair,
)

__all__ = [
    "Annulus",
    "BranchPoint",
    "RadialCoefficients",
    "RadialProfile",
    "FirstEigenvalueResult",
    "NotARootError",
    "SignCountInstabilityError",
    "det_k0",
    "det_k",
    "det_punctured",
    "matrix_k0",
    "matrix_k",
    "matrix_punctured",
    "disk_eigenvalue",
    "tau",
    "first_eigenvalue",
    "radial_coefficients",
    "radial_eval",
    "radial_profile",
    "count_radial_sign_changes",
    "nodal_domain_count",
]

EULER_GAMMA = float(np.euler_gamma)
DEFAULT_XTOL = 1e-12

# mu ceiling for root scans; covers inner radii up to ~0.995
_MU_CEILING = 4000.0


class NotARootError(ValueError):
    """radial_coefficients was handed a mu that does not kill the determinant."""


class SignCountInstabilityError(RuntimeError):
    """Doubling the sampling grid changed the sign-change count."""


def _check_inner_radius(a: float, allow_zero: bool = True) -> float:
    a = float(a)
    lo_ok = a >= 0.0 if allow_zero else a > 0.0
    if not (lo_ok and a < 1.0):
        raise ValueError("inner radius must lie in [0,1)")
    return a


def _check_mode(k) -> int:
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 0:
        raise ValueError(f"angular mode index must be a non-negative integer, got {k!r}")
    return int(k)


@dataclass(frozen=True)
class Annulus:
    """The annulus a < |x| < 1 (outer radius fixed to one)."""

    a: float

    def __post_init__(self):
        _check_inner_radius(self.a)

    @property
    def area(self) -> float:
        return math.pi * (1.0 - self.a * self.a)


@dataclass(frozen=True)
class BranchPoint:
    """One point on the analytic branch tau_k(a): mu = sqrt(lambda)."""

    k: int
    a: float
    mu: float
    lam: float


@dataclass(frozen=True)
class RadialCoefficients:
    """Coefficients of the radial factor.

    v(r) = cj*J_k(mu r) + cy*Y_k(mu r) + cp*p(r) + cq*q(r), where
    (p, q) = (r^k, r^-k) for k >= 1 and (1, ln r) for k = 0.
    """

    cj: float
    cy: float
    cp: float
    cq: float

    def as_array(self) -> np.ndarray:
        return np.array([self.cj, self.cy, self.cp, self.cq])


@dataclass(frozen=True)
class RadialProfile:
    """A solved radial factor with its sample grid on [a, 1]."""

    k: int
    a: float
    mu: float
    coefficients: RadialCoefficients
    r: np.ndarray
    v: np.ndarray


@dataclass(frozen=True)
class FirstEigenvalueResult:
    a: float
    k_opt: int
    k_max: int
    lambda1: float
    sqrt_lambda1: float
    normalized: float  # lambda_1 * |Omega_a|


# --- determinants -----------------------------------------------------------

def _det_k0_terms(a: float, mu):
    mu = np.asarray(mu, dtype=float)
    j0m, j1m = bessel_j_pair(1, mu)
    y0m, y1m = bessel_y_pair(1, mu)
    j0a, j1a = bessel_j_pair(1, mu * a)
    y0a, y1a = bessel_y_pair(1, mu * a)
    t1 = np.full_like(mu, 4.0 / (math.pi * a))
    t2 = mu * (j0m * y1a - j1a * y0m)
    t3 = -(mu * mu) * math.log(a) * (j1m * y1a - j1a * y1m)
    t4 = (mu / a) * (j0a * y1m - j1m * y0a)
    return t1, t2, t3, t4


def det_k0(a: float, mu):
    """k = 0 boundary determinant on the annulus (closed form)."""
    a = _check_inner_radius(a, allow_zero=False)
    t1, t2, t3, t4 = _det_k0_terms(a, mu)
    out = t1 + t2 + t3 + t4
    return float(out[()]) if np.ndim(mu) == 0 else out


def _check_power_range(k: int, a: float) -> None:
    if k * math.log(1.0 / a) > 690.0:
        raise OverflowError(f"a**-k overflows double precision for k={k}, a={a}")


def _det_k_terms(k: int, a: float, mu):
    mu = np.asarray(mu, dtype=float)
    jm1m, jkm = bessel_j_pair(k, mu)
    ym1m, ykm = bessel_y_pair(k, mu)
    jm1a, jka = bessel_j_pair(k, mu * a)
    ym1a, yka = bessel_y_pair(k, mu * a)
    ak = a ** k
    t1 = (mu * mu) * (ak - 1.0 / ak) * (jm1m * ym1a - jm1a * ym1m)
    t2 = np.full_like(mu, -8.0 * k / (math.pi * a))
    t3 = 2.0 * k * mu * a ** (k - 1) * (jka * ym1m - jm1m * yka)
    t4 = (2.0 * k * mu / ak) * (jkm * ym1a - jm1a * ykm)
    return t1, t2, t3, t4


def det_k(k: int, a: float, mu):
    """k >= 1 boundary determinant on the annulus (closed form)."""
    k = _check_mode(k)
    if k < 1:
        raise ValueError("det_k needs k >= 1; use det_k0 for the k = 0 mode")
    a = _check_inner_radius(a, allow_zero=False)
    _check_power_range(k, a)
    t1, t2, t3, t4 = _det_k_terms(k, a, mu)
    out = t1 + t2 + t3 + t4
    return float(out[()]) if np.ndim(mu) == 0 else out


def _det_punctured_terms(mu):
    mu = np.asarray(mu, dtype=float)
    j0m, j1m = bessel_j_pair(1, mu)
    y1m = bessel_y_pair(1, mu)[1]
    t1 = (2.0 / math.pi) * (j0m - 2.0)
    t2 = (2.0 * mu / math.pi) * j1m * (np.log(mu / 2.0) + EULER_GAMMA)
    t3 = -mu * y1m
    return t1, t2, t3


def det_punctured(mu):
    """k = 0 boundary determinant on the punctured unit disk (closed form).

    The value 0 at mu -> 0+ is a removable (trivial) zero; the smallest
    eigenvalue root is the first strictly positive crossing.
    """
    if np.any(np.asarray(mu) <= 0):
        raise ValueError("det_punctured needs mu > 0")
    t1, t2, t3 = _det_punctured_terms(mu)
    out = t1 + t2 + t3
    return float(out[()]) if np.ndim(mu) == 0 else out


def _bessel_row(k: int, x: float):
    """(J_k, Y_k, mu J_k', mu Y_k') building blocks for one matrix row."""
    if k == 0:
        jk, yk = bessel_j(0, x), bessel_y(0, x)
        jd = -bessel_j(1, x)
        yd = -bessel_y(1, x)
    else:
        jm, jk = bessel_j_pair(k, x)
        ym, yk = bessel_y_pair(k, x)
        jd = jm - (k / x) * jk
        yd = ym - (k / x) * yk
    return jk, yk, jd, yd


def matrix_k0(a: float, mu: float) -> np.ndarray:
    """Clamped-condition matrix for k = 0: rows are value/derivative at r = 1
    then value/derivative at r = a, acting on (cj, cy, cp, cq)."""
    a = _check_inner_radius(a, allow_zero=False)
    mu = float(mu)
    j1v, y1v, j1d, y1d = _bessel_row(0, mu)
    jav, yav, jad, yad = _bessel_row(0, mu * a)
    return np.array([
        [j1v, y1v, 1.0, 0.0],
        [mu * j1d, mu * y1d, 0.0, 1.0],
        [jav, yav, 1.0, math.log(a)],
        [mu * jad, mu * yad, 0.0, 1.0 / a],
    ])


def matrix_k(k: int, a: float, mu: float) -> np.ndarray:
    """Clamped-condition matrix for k >= 1, same row order as matrix_k0."""
    k = _check_mode(k)
    if k < 1:
        raise ValueError("matrix_k needs k >= 1")
    a = _check_inner_radius(a, allow_zero=False)
    _check_power_range(k, a)
    mu = float(mu)
    j1v, y1v, j1d, y1d = _bessel_row(k, mu)
    jav, yav, jad, yad = _bessel_row(k, mu * a)
    return np.array([
        [j1v, y1v, 1.0, 1.0],
        [mu * j1d, mu * y1d, float(k), float(-k)],
        [jav, yav, a ** k, a ** (-k)],
        [mu * jad, mu * yad, k * a ** (k - 1), -k * a ** (-k - 1)],
    ])


def matrix_punctured(mu: float) -> np.ndarray:
    """Boundary matrix on the punctured disk for k = 0 (conditions at r = 1
    plus finiteness of v and v' at the origin)."""
    mu = float(mu)
    if mu <= 0:
        raise ValueError("matrix_punctured needs mu > 0")
    j1v, y1v, j1d, y1d = _bessel_row(0, mu)
    return np.array([
        [j1v, y1v, 1.0, 0.0],
        [mu * j1d, mu * y1d, 0.0, 1.0],
        [1.0, (2.0 / math.pi) * (math.log(mu / 2.0) + EULER_GAMMA), 1.0, 0.0],
        [0.0, 2.0 / math.pi, 0.0, 1.0],
    ])


# --- branches ----------------------------------------------------------------

def disk_eigenvalue(k: int, t: int, radius: float) -> float:
    """Buckling eigenvalue (j_{k+1,t} / R)^2 of the clamped disk of radius R."""
    k = _check_mode(k)
    if radius <= 0:
        raise ValueError("disk radius must be positive")
    z = bessel_j_zero(k + 1, t).value
    return (z / radius) ** 2


def _scan_start(k: int) -> float:
    # tau_k(a) >= tau_k(0) = j_{k+1,1}^2, so nothing is lost starting just
    # below the disk value; the margin absorbs zero-finder bias
    return max(0.9 * bessel_j_zero(k + 1, 1).value, 0.5)


def _scan_step(a: float) -> float:
    return min(0.2, (1.0 - a) / 5.0)


@lru_cache(maxsize=4096)
def _tau_cached(k: int, a: float, xtol: float) -> BranchPoint:
    if a == 0.0:
        if k == 0:
            res = rootfind.smallest_root(det_punctured, lo=0.5, step=0.2,
                                         xtol=xtol, ceiling=_MU_CEILING)
            mu = res.root
        else:
            # the punctured reduction: k >= 1 eigenvalues equal the full disk
            mu = bessel_j_zero(k + 1, 1).value
        return BranchPoint(k=k, a=a, mu=mu, lam=mu * mu)
    if k == 0:
        f = lambda mu: det_k0(a, mu)
    else:
        f = lambda mu: det_k(k, a, mu)
    res = rootfind.smallest_root(f, lo=_scan_start(k), step=_scan_step(a),
                                 xtol=xtol, ceiling=_MU_CEILING)
    mu = res.root
    return BranchPoint(k=k, a=a, mu=mu, lam=mu * mu)


def tau(k: int, a: float, xtol: float = DEFAULT_XTOL) -> BranchPoint:
    """Smallest eigenvalue of the mode-k branch on the annulus of inner radius a."""
    return _tau_cached(_check_mode(k), _check_inner_radius(a), float(xtol))


@lru_cache(maxsize=512)
def _disk_branch_value(k: int) -> float:
    """tau_k(0) := j_{k+1,1}^2, the search cutoff scale of the k_max rule.

    (For k = 0 the genuinely attained punctured value is larger; the rule
    uses the disk formula for every k, which keeps the cutoff sequence
    strictly increasing and remains a valid lower bound for tau_0(a).)
    """
    return bessel_j_zero(k + 1, 1).value ** 2


def _k_max(lam_opt: float) -> int:
    k = 0
    while not _disk_branch_value(k) > lam_opt:
        k += 1
    return k


def first_eigenvalue(a: float, xtol: float = DEFAULT_XTOL) -> FirstEigenvalueResult:
    """Minimize tau_k(a) over k with the certified cutoff k_max.

    Literal four-step loop: compute tau_0, then raise k one step at a time,
    keeping the best branch and recomputing k_max (smallest k with
    tau_k(0) > current best) after every improvement, until k reaches k_max.
    """
    a = _check_inner_radius(a)
    k = 0
    k_opt = 0
    lam_opt = tau(0, a, xtol).lam
    while True:
        k_max = _k_max(lam_opt)
        if k >= k_max:
            break
        k += 1
        lam_k = tau(k, a, xtol).lam
        if lam_k < lam_opt:
            k_opt, lam_opt = k, lam_k
    return FirstEigenvalueResult(
        a=a,
        k_opt=k_opt,
        k_max=k_max,
        lambda1=lam_opt,
        sqrt_lambda1=math.sqrt(lam_opt),
        normalized=lam_opt * math.pi * (1.0 - a * a),
    )


# --- radial factors ----------------------------------------------------------

def _det_scale(k: int, a: float, mu: float) -> float:
    if a == 0.0:
        terms = _det_punctured_terms(mu) if k == 0 else None
        if terms is None:
            return 1.0
    elif k == 0:
        terms = _det_k0_terms(a, mu)
    else:
        terms = _det_k_terms(k, a, mu)
    return max(float(np.abs(t)) for t in terms)


def _det_value(k: int, a: float, mu: float) -> float:
    if a == 0.0:
        # punctured reduction for k >= 1: v'(1) = 0 reads J_{k+1}(mu) = 0
        return det_punctured(mu) if k == 0 else bessel_j(k + 1, mu)
    return det_k0(a, mu) if k == 0 else det_k(k, a, mu)


def _null_vector(m: np.ndarray) -> tuple[np.ndarray, int]:
    """Null vector of a rank-3 4x4 matrix by partial-pivot elimination.

    The free variable is the column eliminated last.  Returns the vector and
    the number of negligible pivots (> 1 flags a possible double eigenvalue).
    """
    u = m.astype(float).copy()
    scale = np.abs(u).max()
    tiny = 0
    for col in range(3):
        p = col + int(np.argmax(np.abs(u[col:, col])))
        if p != col:
            u[[col, p]] = u[[p, col]]
        if abs(u[col, col]) <= 1e-10 * scale:
            tiny += 1
            continue
        for row in range(col + 1, 4):
            factor = u[row, col] / u[col, col]
            u[row, col:] -= factor * u[col, col:]
    if abs(u[3, 3]) > 1e-6 * scale:
        warnings.warn("last pivot is not negligible; null vector is approximate")
    x = np.zeros(4)
    x[3] = 1.0
    for col in range(2, -1, -1):
        if abs(u[col, col]) <= 1e-10 * scale:
            x[col] = 0.0
            continue
        x[col] = -(u[col, col + 1:] @ x[col + 1:]) / u[col, col]
    return x, tiny


def radial_coefficients(k: int, a: float, mu: float,
                        residual_rtol: float = 1e-6) -> RadialCoefficients:
    """Coefficients of the radial factor at a determinant root mu.

    Normalized so the largest-magnitude coefficient is one and v at the
    midpoint radius is non-negative.
    """
    k = _check_mode(k)
    a = _check_inner_radius(a)
    mu = float(mu)
    scale = _det_scale(k, a, mu)
    value = _det_value(k, a, mu)
    if abs(value) > residual_rtol * max(scale, 1e-300):
        raise NotARootError(
            f"mu={mu} is not a root: |det|={abs(value):.3e} > {residual_rtol}*scale")
    if a == 0.0 and k >= 1:
        # closed form on the punctured disk: v(r) = J_k(mu r) - J_k(mu) r^k
        vec = np.array([1.0, 0.0, -bessel_j(k, mu), 0.0])
    else:
        m = matrix_punctured(mu) if a == 0.0 else (
            matrix_k0(a, mu) if k == 0 else matrix_k(k, a, mu))
        vec, tiny = _null_vector(m)
        if tiny >= 1:
            warnings.warn(
                "rank deficiency != 1: two negligible pivots "
                "(possible double eigenvalue)", RuntimeWarning)
    vec = vec / np.abs(vec).max()
    coeffs = RadialCoefficients(*(float(c) for c in vec))
    mid = 0.5 * (a + 1.0)
    if radial_eval(k, a, mu, coeffs, mid) < 0.0:
        coeffs = RadialCoefficients(*(float(-c) for c in vec))
    return coeffs


def radial_eval(k: int, a: float, mu: float, coefficients: RadialCoefficients, r):
    """Radial factor v(r) on [a, 1].

    For the punctured disk's k = 0 form the value at r = 0 is the finite
    limit (the boundary rows force the log terms to cancel there).
    """
    k = _check_mode(k)
    a = _check_inner_radius(a)
    c = coefficients
    arr = np.asarray(r, dtype=float)
    if (arr < a - 1e-12).any() or (arr > 1.0 + 1e-12).any():
        raise ValueError("radial coordinate outside [a, 1]")
    out = np.empty_like(arr)
    at_zero = arr == 0.0
    pos = ~at_zero
    if at_zero.any():
        if a > 0.0:
            raise ValueError("r = 0 is outside the annulus")
        if k == 0:
            limit = c.cj + c.cy * (2.0 / math.pi) * (math.log(mu / 2.0)
                                                     + EULER_GAMMA) + c.cp
        else:
            if c.cy != 0.0 or c.cq != 0.0:
                raise ValueError("singular terms present; v(0) is undefined")
            limit = 0.0
        out[at_zero] = limit
    if pos.any():
        x = arr[pos]
        if k == 0:
            val = c.cj * bessel_j(0, mu * x) + c.cp
            if c.cy != 0.0:
                val = val + c.cy * bessel_y(0, mu * x)
            if c.cq != 0.0:
                val = val + c.cq * np.log(x)
        else:
            val = c.cj * bessel_j(k, mu * x) + c.cp * x ** k
            # evaluate singular pieces only when present (0 * inf traps)
            if c.cy != 0.0:
                val = val + c.cy * bessel_y_pair(k, mu * x)[1]
            if c.cq != 0.0:
                val = val + c.cq * x ** (-k)
        out[pos] = val
    return float(out[()]) if np.ndim(r) == 0 else out


def radial_profile(k: int, a: float, xtol: float = DEFAULT_XTOL,
                   n_samples: int = 1024) -> RadialProfile:
    """First-root radial profile of the mode-k branch, sampled uniformly."""
    point = tau(k, a, xtol)
    coeffs = radial_coefficients(k, a, point.mu)
    r = np.linspace(a, 1.0, n_samples)
    v = radial_eval(k, a, point.mu, coeffs, r)
    return RadialProfile(k=k, a=a, mu=point.mu, coefficients=coeffs, r=r, v=v)


def _count_interior_sign_changes(p: RadialProfile, n_samples: int) -> int:
    layer = (1.0 - p.a) / n_samples
    r = np.linspace(p.a + layer, 1.0 - layer, n_samples)
    v = radial_eval(p.k, p.a, p.mu, p.coefficients, r)
    cutoff = 1e-12 * np.abs(v).max()
    signs = np.sign(v[np.abs(v) > cutoff])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def count_radial_sign_changes(p: RadialProfile, n_samples: int = 1024) -> int:
    """Strict interior sign changes of v, boundary layers excluded.

    The count is recomputed on a doubled grid; disagreement raises
    SignCountInstabilityError.
    """
    if n_samples < 100:
        raise ValueError("need n_samples >= 100")
    count = _count_interior_sign_changes(p, n_samples)
    check = _count_interior_sign_changes(p, 2 * n_samples)
    if count != check:
        raise SignCountInstabilityError(
            f"sign-change count unstable: {count} at n={n_samples}, "
            f"{check} at n={2 * n_samples}")
    return count


def nodal_domain_count(k: int, radial_sign_changes: int) -> int:
    """Nodal domains of v(r)cos(k theta): 2k angular sectors times the
    radial bands (s + 1), or just the bands when k = 0."""
    k = _check_mode(k)
    if radial_sign_changes < 0:
        raise ValueError("sign-change count must be non-negative")
    bands = radial_sign_changes + 1
    return bands if k == 0 else 2 * k * bands
