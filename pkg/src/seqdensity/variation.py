"""Total variation of step functions and per-level histogram variation."""

import math

import numpy as np

from .dyadic import LEVEL_CAP
from .empirical import SampleBuffer, _cell_runs, cell_heights
from .step import StepDensity


def step_variation(h: StepDensity, a, b) -> float:
    """Total variation of h over points t with a <= t < b.

    For a right-continuous step function this is the sum of |jump| over
    breakpoints strictly inside (a, b): a jump exactly at a is invisible
    because h(a) is already the right limit, and b itself is excluded.
    Infinite bounds are allowed.
    """
    a = float(a)
    b = float(b)
    if math.isnan(a) or math.isnan(b):
        raise ValueError("window bounds must not be NaN")
    if not a < b:
        raise ValueError(f"need a < b, got a={a}, b={b}")
    if h.is_zero():
        return 0.0
    levels = np.concatenate([[0.0], h.heights, [0.0]])
    jumps = np.abs(np.diff(levels))
    inside = (h.breakpoints > a) & (h.breakpoints < b)
    return math.fsum(jumps[inside])


def _jump_terms(xs: np.ndarray, n: int, k: int):
    """Jump magnitudes of the level-k histogram and their breakpoint indices.

    Breakpoints are reported as integers t such that the jump sits at
    t / 2^k; this keeps window tests exact at any depth.
    """
    occ, counts = _cell_runs(xs, k)
    h = cell_heights(counts, n, k)
    adj = occ[1:] == occ[:-1] + 1
    left_mag = h.copy()
    left_mag[1:][adj] = np.abs(h[1:][adj] - h[:-1][adj])
    free_right = np.concatenate([~adj, [True]])
    pos = np.concatenate([occ, occ[free_right] + 1])
    mag = np.concatenate([left_mag, h[free_right]])
    return pos, mag


def variation_profile(buffer: SampleBuffer, k: int, i_max: int) -> np.ndarray:
    """Histogram variation over the windows [-i, i) for i = 1..i_max.

    One pass over the sorted samples serves every window at once: each
    jump of the level-k histogram contributes to all windows wide enough
    to contain its breakpoint strictly.
    """
    if not 1 <= k <= LEVEL_CAP:
        raise ValueError(f"level must be in [1, {LEVEL_CAP}], got {k}")
    if i_max < 1:
        raise ValueError("need i_max >= 1")
    xs = buffer._require_nonempty()
    pos, mag = _jump_terms(xs, buffer.n, k)
    first_window = (np.abs(pos) >> k) + 1
    keep = first_window <= i_max
    fw = first_window[keep]
    order = np.argsort(fw, kind="stable")
    mags = mag[keep][order]
    bounds = np.searchsorted(fw[order], np.arange(1, i_max + 1), side="right")
    return np.array([math.fsum(mags[:e]) for e in bounds])


def histogram_variation(buffer: SampleBuffer, k: int, i: int) -> float:
    """Scaled sum of adjacent-cell frequency differences over [-i, i).

    Equals 2^k times the sum of |mu_n(A_{k,j}) - mu_n(A_{k,j+1})| over the
    window's adjacent cell pairs, the factor 2^k matching the histogram's
    cell heights.  Agrees exactly with
    ``step_variation(histogram(buffer, k), -i, i)``.
    """
    return float(variation_profile(buffer, k, i)[i - 1])


def conditional_on_partition(f: StepDensity, k: int) -> StepDensity:
    """Project f onto the level-k dyadic partition by cell averaging.

    The result is constant on every level-k cell, with value equal to the
    cell average of f, and carries the same total integral.
    """
    if not 1 <= k <= LEVEL_CAP:
        raise ValueError(f"level must be in [1, {LEVEL_CAP}], got {k}")
    if f.is_zero():
        return f
    lo, hi = f.support()
    j0 = math.floor(math.ldexp(lo, k))
    j1 = math.ceil(math.ldexp(hi, k))
    ncells = j1 - j0
    if ncells > 1 << 26:
        raise ValueError(
            f"projection would materialize {ncells} cells; reduce the level or the support"
        )
    edges = np.ldexp(np.arange(j0, j1 + 1, dtype=np.float64), -k)
    masses = np.diff(f.cdf(edges))
    return StepDensity(edges, np.ldexp(masses, k))
