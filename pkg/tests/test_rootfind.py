import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from buckle import annulus, rootfind

from oracles import bisect


def test_scan_finds_sqrt2():
    brackets = rootfind.scan_brackets(lambda x: x * x - 2.0, 0.0, 2.0, 0.5)
    assert len(brackets) == 1
    b = brackets[0]
    assert b.lo < math.sqrt(2.0) < b.hi
    assert b.f_lo * b.f_hi < 0


def test_scan_rejects_tan_pole():
    # pole at pi/2 produces the only sign change on [1, 2]
    assert rootfind.scan_brackets(math.tan, 1.0, 2.0, 0.5) == []
    # on [1, 4] the genuine zero at pi is kept, the pole is still dropped
    brackets = rootfind.scan_brackets(math.tan, 1.0, 4.0, 0.5)
    assert len(brackets) == 1
    assert brackets[0].lo < math.pi < brackets[0].hi


def test_scan_does_not_cross_non_finite_values():
    def f(x):
        return math.sqrt(x - 1.0) - 0.5 if x >= 1.0 else float("nan")

    brackets = rootfind.scan_brackets(f, 0.0, 2.0, 0.25)
    assert len(brackets) == 1
    assert brackets[0].lo >= 1.0
    assert brackets[0].lo < 1.25 < brackets[0].hi


def test_scan_splits_clustered_crossings():
    # three roots of cos(10x) inside a single coarse step
    brackets = rootfind.scan_brackets(lambda x: math.cos(10.0 * x), 0.0, 1.0, 1.0)
    assert len(brackets) == 3
    roots = [math.pi / 20.0, 3.0 * math.pi / 20.0, math.pi / 4.0]
    for b, r in zip(brackets, roots):
        assert b.lo < r < b.hi


def test_scan_argument_validation():
    with pytest.raises(ValueError):
        rootfind.scan_brackets(math.sin, 2.0, 1.0, 0.1)
    with pytest.raises(ValueError):
        rootfind.scan_brackets(math.sin, 0.0, 1.0, -0.1)


def test_bracket_validation():
    with pytest.raises(ValueError):
        rootfind.Bracket(1.0, 0.5, -1.0, 1.0)
    with pytest.raises(ValueError):
        rootfind.Bracket(0.0, 1.0, 1.0, 2.0)
    with pytest.raises(ValueError):
        rootfind.Bracket(0.0, 1.0, float("nan"), -1.0)


def test_refine_sqrt2():
    b = rootfind.Bracket(1.0, 2.0, -1.0, 2.0)
    res = rootfind.refine(lambda x: x * x - 2.0, b, xtol=1e-12)
    assert res.root == pytest.approx(1.4142135624, abs=1e-10)
    assert res.bracket.hi - res.bracket.lo <= 1e-12
    assert res.bracket.lo <= res.root <= res.bracket.hi


def test_refine_pi():
    b = rootfind.Bracket(3.0, 4.0, math.sin(3.0), math.sin(4.0))
    res = rootfind.refine(math.sin, b, xtol=1e-13)
    assert res.root == pytest.approx(math.pi, abs=1e-12)


def test_refine_punctured_determinant():
    f = annulus.det_punctured
    res = rootfind.refine(f, rootfind.Bracket(6.0, 7.0, f(6.0), f(7.0)),
                          xtol=1e-12)
    assert res.root == pytest.approx(6.6478167, abs=1e-6)


def test_refine_agrees_with_bisection_oracle():
    cases = [
        (lambda x: x ** 3 - x - 2.0, 1.0, 2.0),
        (lambda x: math.cos(x) - x, 0.0, 1.0),
        (lambda x: math.exp(x) - 3.0, 0.0, 2.0),
    ]
    for f, lo, hi in cases:
        res = rootfind.refine(f, rootfind.Bracket(lo, hi, f(lo), f(hi)),
                              xtol=1e-12)
        assert res.root == pytest.approx(bisect(f, lo, hi, 1e-13), abs=2e-12)


def test_refine_iteration_limit():
    # a step-discontinuous sign flip can never be localized below one ulp
    f = lambda x: 1.0 if x < 1.2345678901234567 else -1.0
    with pytest.raises(rootfind.IterationLimitError):
        rootfind.refine(f, rootfind.Bracket(0.0, 2.0, 1.0, -1.0), xtol=1e-300)
    # but a realistic tolerance converges and reports its iteration count
    res = rootfind.refine(f, rootfind.Bracket(0.0, 2.0, 1.0, -1.0), xtol=1e-9)
    assert res.iterations <= 200


@settings(max_examples=120, deadline=None)
@given(st.floats(-5.0, 5.0))
def test_refine_random_linear_factor(r):
    f = lambda x: (x - r) * (x + abs(r) + 7.0)
    lo, hi = r - 1.5, r + 2.5
    res = rootfind.refine(f, rootfind.Bracket(lo, hi, f(lo), f(hi)), xtol=1e-11)
    assert res.root == pytest.approx(r, abs=1e-9)


def test_smallest_root_basics():
    res = rootfind.smallest_root(lambda x: x * x - 2.0, 0.0, 0.25, xtol=1e-12)
    assert res.root == pytest.approx(math.sqrt(2.0), abs=1e-11)


def test_smallest_root_j0_first_zero():
    from buckle import specfun
    res = rootfind.smallest_root(lambda x: specfun.bessel_j(0, x), 0.5, 0.3,
                                 xtol=1e-12)
    assert res.root == pytest.approx(2.404826, abs=1e-6)


def test_smallest_root_punctured_determinant():
    res = rootfind.smallest_root(annulus.det_punctured, 0.5, 0.2, xtol=1e-12)
    assert res.root == pytest.approx(6.6478167, abs=1e-6)


def test_smallest_root_ceiling_error():
    with pytest.raises(rootfind.NoRootError):
        rootfind.smallest_root(lambda x: x * x + 1.0, 0.0, 0.5, ceiling=50.0)


def test_first_bracket_of_k1_branch_contains_table_root():
    # Table value 6.71001 at a = 0.10 belongs to the k = 1 branch ...
    f1 = lambda mu: annulus.det_k(1, 0.1, mu)
    start = 0.9 * 5.1356223
    brackets = rootfind.scan_brackets(f1, start, start + 4.0, 0.18)
    assert brackets and brackets[0].lo < 6.71001 < brackets[0].hi
    # ... while the k = 0 branch has no root that low
    f0 = lambda mu: annulus.det_k0(0.1, mu)
    brackets0 = rootfind.scan_brackets(f0, 3.45, 12.0, 0.18)
    assert brackets0
    assert brackets0[0].lo > 6.71001


@pytest.mark.parametrize("k,a", [(0, 0.3), (1, 0.1), (2, 0.2), (4, 0.5)])
def test_smallest_root_idempotent_under_step_halving(k, a):
    if k == 0:
        f = lambda mu: annulus.det_k0(a, mu)
    else:
        f = lambda mu: annulus.det_k(k, a, mu)
    from buckle.specfun import bessel_j_zero
    lo = max(0.9 * bessel_j_zero(k + 1, 1).value, 0.5)
    step = min(0.2, (1.0 - a) / 5.0)
    coarse = rootfind.smallest_root(f, lo, step, xtol=1e-12).root
    fine = rootfind.smallest_root(f, lo, step / 2.0, xtol=1e-12).root
    assert coarse == pytest.approx(fine, abs=1e-11)


def test_punctured_idempotence():
    coarse = rootfind.smallest_root(annulus.det_punctured, 0.5, 0.2).root
    fine = rootfind.smallest_root(annulus.det_punctured, 0.5, 0.1).root
    assert coarse == pytest.approx(fine, abs=1e-11)


def test_returned_bracket_always_straddles():
    res = rootfind.smallest_root(lambda x: math.sin(x) - 0.1, 0.0, 0.3)
    assert res.bracket.f_lo * res.bracket.f_hi < 0
    assert np.isfinite(res.bracket.f_lo) and np.isfinite(res.bracket.f_hi)
