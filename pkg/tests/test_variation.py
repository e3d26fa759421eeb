import math

import numpy as np
import pytest

from seqdensity import (
    SampleBuffer,
    StepDensity,
    conditional_on_partition,
    histogram,
    histogram_variation,
    iid_source,
    integrate,
    rademacher_density,
    step_variation,
    variation_profile,
)


def grid_variation_oracle(f, a, b, npts=100001):
    """Variation over [a, b) from function values alone: sum of absolute
    increments along a fine grid of points in [a, b).  Exact once the grid
    is finer than the smallest breakpoint gap."""
    ts = np.linspace(a, b, npts)[:-1]  # points in [a, b)
    vals = f(ts)
    return float(np.sum(np.abs(np.diff(vals))))


def dyadic_step(rng, grid_level=6, span=5, max_units=24):
    """Random step density on a dyadic grid: every height and breakpoint is
    an exact binary float, so variations and cell averages are exact."""
    m = int(rng.integers(2, 9))
    cells = int(span * 2**grid_level)
    edges = np.sort(rng.choice(np.arange(-cells, cells + 1), size=m + 1, replace=False))
    bp = np.ldexp(edges.astype(np.float64), -grid_level)
    h = np.ldexp(rng.integers(0, max_units, size=m).astype(np.float64), -4)
    return StepDensity(bp, h)


# -- step_variation ---------------------------------------------------------------


def test_step_variation_examples():
    h1 = rademacher_density(1)
    assert step_variation(h1, 0, 1) == 2.0  # single interior jump at 0.5
    assert step_variation(StepDensity([-3, 7], [2.5]), -1, 1) == 0.0
    f = StepDensity([0, 1, 2, 3], [1.0, 3.0, 0.0])
    assert step_variation(f, 0, 3) == 5.0  # |3-1| + |0-3|


def test_step_variation_window_conventions():
    f = StepDensity([0, 1], [1.0])
    # jump at the left edge is invisible; jump at the right edge is excluded
    assert step_variation(f, 0, 1) == 0.0
    assert step_variation(f, -1, 1) == 1.0
    assert step_variation(f, -1, 2) == 2.0
    assert step_variation(f, -math.inf, math.inf) == 2.0
    with pytest.raises(ValueError):
        step_variation(f, 1, 1)
    with pytest.raises(ValueError):
        step_variation(f, 2, 1)


def test_step_variation_matches_grid_oracle():
    rng = np.random.default_rng(21)
    for _ in range(25):
        f = dyadic_step(rng)
        for a, b in ((-4, 4), (-1, 1), (-2, 3)):
            assert step_variation(f, a, b) == grid_variation_oracle(f, a, b)


# -- histogram_variation ------------------------------------------------------------


def test_histogram_variation_examples():
    assert histogram_variation(SampleBuffer([0.25]), 1, 1) == 4.0
    # equal counts in all four level-1 cells of [-1, 1): flat, zero variation
    buf = SampleBuffer([-0.9, -0.3, 0.2, 0.7])
    assert histogram_variation(buf, 1, 1) == 0.0
    # the right-edge jump at t = 1 is excluded (fixed by the jump-sum oracle)
    assert histogram_variation(SampleBuffer([0.1, 0.6]), 1, 1) == 1.0


def test_histogram_variation_equals_step_variation_exactly():
    rng = np.random.default_rng(22)
    for _ in range(60):
        n = int(rng.integers(1, 300))
        buf = SampleBuffer(rng.normal(scale=2.0, size=n))
        k = int(rng.integers(1, 11))
        i = int(rng.integers(1, 5))
        assert histogram_variation(buf, k, i) == step_variation(histogram(buf, k), -i, i)


def test_variation_profile_is_prefix_consistent():
    rng = np.random.default_rng(23)
    buf = SampleBuffer(rng.normal(scale=2.0, size=500))
    for k in (1, 4, 8):
        prof = variation_profile(buf, k, 6)
        assert (np.diff(prof) >= 0).all()
        for i in (1, 3, 6):
            assert prof[i - 1] == histogram_variation(buf, k, i)


# -- conditional_on_partition ---------------------------------------------------------


def test_projection_fixes_cell_constant_functions():
    rng = np.random.default_rng(24)
    for k in (1, 3, 5):
        f = histogram(SampleBuffer(rng.random(64)), k)
        assert conditional_on_partition(f, k) == f


def test_projection_example_and_integral():
    h2 = rademacher_density(2)
    proj = conditional_on_partition(h2, 1)
    assert proj == StepDensity([0, 1], [1.0])
    rng = np.random.default_rng(25)
    for _ in range(20):
        f = dyadic_step(rng)
        for k in (1, 2, 5):
            assert conditional_on_partition(f, k).integral() == f.integral()
    # arbitrary float breakpoints: preservation within roundoff
    for _ in range(20):
        m = int(rng.integers(1, 8))
        bp = np.sort(rng.uniform(-4, 4, size=m + 1))
        if (np.diff(bp) <= 0).any():
            continue
        f = StepDensity(bp, rng.uniform(0, 3, size=m))
        for k in (2, 6):
            got = conditional_on_partition(f, k).integral()
            assert got == pytest.approx(f.integral(), abs=1e-12)


def test_projection_bound_three_times_variation():
    # cell averaging can at most triple the windowed variation
    rng = np.random.default_rng(26)
    for _ in range(120):
        f = dyadic_step(rng)
        for k in range(1, 9):
            proj = conditional_on_partition(f, k)
            for i in range(1, 5):
                assert step_variation(proj, -i, i) <= 3.0 * step_variation(f, -i, i)


def test_projection_of_nondecreasing_density_tightens():
    # for a nondecreasing function the projection cannot increase variation
    rng = np.random.default_rng(27)
    for _ in range(40):
        m = int(rng.integers(2, 7))
        edges = np.sort(rng.choice(np.arange(-128, 129), size=m + 1, replace=False))
        bp = np.ldexp(edges.astype(np.float64), -5)
        h = np.cumsum(np.ldexp(rng.integers(0, 8, size=m).astype(np.float64), -3))
        f = StepDensity(bp, h)
        for k in (1, 3, 5):
            proj = conditional_on_partition(f, k)
            for i in (1, 2, 4):
                assert step_variation(proj, -i, i) <= step_variation(f, -i, i) + 1e-12


def test_histogram_variation_converges_to_projected_variation():
    # sampling from a fixed density drives the histogram variation to the
    # variation of the density's cell-average projection
    f = rademacher_density(2)
    src = iid_source(f, seed=29)
    buf = SampleBuffer(src.take(100000))
    for k, i in ((1, 1), (2, 1), (3, 2)):
        target = step_variation(conditional_on_partition(f, k), -i, i)
        assert histogram_variation(buf, k, i) == pytest.approx(target, abs=0.05)


def test_projection_guardrails():
    f = StepDensity([0, 1], [1.0])
    with pytest.raises(ValueError):
        conditional_on_partition(f, 0)
    z = StepDensity.zero()
    assert conditional_on_partition(z, 3).is_zero()
