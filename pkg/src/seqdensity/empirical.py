"""Sample storage and empirical measures over the observed prefix."""

import numpy as np

from .step import StepDensity
from .validation import EmptyBufferError, check_sample, check_samples

_CLOSED = {"left", "right", "both", "neither"}


class SampleBuffer:
    """Arrival-order samples plus a lazily maintained sorted view.

    Raw values are kept (not just bin counts) because estimates at finer
    partition levels must remain computable as the depth schedule grows.
    Appends are O(1); the sorted view is rebuilt on demand.  Single writer;
    reads between appends are safe.
    """

    def __init__(self, values=()):
        self._values: list[float] = []
        self._sorted = np.empty(0)
        if len(np.atleast_1d(values)):
            self.extend(values)

    @property
    def n(self) -> int:
        return len(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def append(self, x) -> None:
        """Add one sample; rejects non-finite or out-of-range values."""
        self._values.append(check_sample(x))

    def extend(self, xs) -> None:
        """Add many samples at once (validated together)."""
        xs = check_samples(xs, allow_empty=True)
        self._values.extend(xs.tolist())

    def arrival_view(self) -> np.ndarray:
        """Samples in arrival order (copy)."""
        return np.asarray(self._values, dtype=np.float64)

    @property
    def sorted_view(self) -> np.ndarray:
        """Ascending samples; cached between appends.  Do not mutate."""
        if self._sorted.size != len(self._values):
            arr = np.asarray(self._values, dtype=np.float64)
            arr.sort(kind="stable")
            arr.setflags(write=False)
            self._sorted = arr
        return self._sorted

    def _require_nonempty(self) -> np.ndarray:
        if not self._values:
            raise EmptyBufferError("operation undefined on an empty buffer")
        return self.sorted_view


def empirical_measure(buffer: SampleBuffer, lo, hi, closed="left") -> float:
    """Fraction of samples in the interval from lo to hi.

    ``closed`` declares which endpoints belong to the interval ("left" is
    [lo, hi), matching dyadic cells).  Infinite endpoints are allowed.
    Computed by two rank queries against the sorted view.
    """
    xs = buffer._require_nonempty()
    if closed not in _CLOSED:
        raise ValueError(f"closed must be one of {sorted(_CLOSED)}")
    lo = float(lo)
    hi = float(hi)
    if np.isnan(lo) or np.isnan(hi):
        raise ValueError("interval endpoints must not be NaN")
    if lo > hi:
        raise ValueError(f"need lo <= hi, got {lo} > {hi}")
    left_side = "left" if closed in ("left", "both") else "right"
    right_side = "right" if closed in ("right", "both") else "left"
    i = np.searchsorted(xs, lo, side=left_side)
    j = np.searchsorted(xs, hi, side=right_side)
    return max(int(j) - int(i), 0) / buffer.n


def _cell_runs(xs: np.ndarray, k: int):
    """Occupied level-k cells and their counts from a sorted sample array."""
    idx = np.floor(np.ldexp(xs, k)).astype(np.int64)
    change = np.nonzero(idx[1:] != idx[:-1])[0]
    starts = np.concatenate([[0], change + 1])
    counts = np.diff(np.concatenate([starts, [xs.size]]))
    return idx[starts], counts


def cell_heights(counts: np.ndarray, n: int, k: int) -> np.ndarray:
    """Histogram heights 2^k * count / n; the 2^k scaling is exact."""
    return np.ldexp(counts.astype(np.float64), k) / n


def histogram(buffer: SampleBuffer, k: int) -> StepDensity:
    """Level-k dyadic histogram: height 2^k * (cell frequency) per cell.

    Integrates to one and costs O(n) given the sorted view.
    """
    from .dyadic import LEVEL_CAP

    if not 1 <= k <= LEVEL_CAP:
        raise ValueError(f"level must be in [1, {LEVEL_CAP}], got {k}")
    xs = buffer._require_nonempty()
    occ, counts = _cell_runs(xs, k)
    heights = cell_heights(counts, buffer.n, k)
    lefts = np.ldexp(occ.astype(np.float64), -k)
    rights = np.ldexp((occ + 1).astype(np.float64), -k)
    return StepDensity.from_pieces(lefts, rights, heights)


def _target_cdf(target):
    """Extract a vectorized CDF callable and optional knot points."""
    cdf = getattr(target, "cdf", None)
    if isinstance(target, StepDensity):
        target.require_density()
        return target.cdf, np.asarray(target.breakpoints)
    if cdf is not None and callable(cdf):
        knots = np.asarray(getattr(target, "breakpoints", ()), dtype=np.float64)
        return cdf, knots
    if callable(target):
        return target, np.empty(0)
    raise TypeError("target must be a density with a .cdf method or a CDF callable")


def sup_interval_discrepancy(buffer: SampleBuffer, target) -> float:
    """Largest gap between empirical and target measure over all intervals.

    Let D(t) be the empirical CDF minus the target CDF.  Over finite and
    infinite intervals of every openness the supremum of |difference of
    measures| equals (sup D) - (inf D), with extrema attained at sample
    points, their left limits, the target's breakpoints, or the tails
    (where D vanishes).  Exact for piecewise-linear targets.

    ``target`` may be a StepDensity, an object with a vectorized ``cdf``
    attribute (e.g. a named continuous density), or a bare CDF callable.
    """
    cdf, knots = _target_cdf(target)
    xs = buffer._require_nonempty()
    n = buffer.n
    Fx = np.asarray(cdf(xs), dtype=np.float64)
    if Fx.shape != xs.shape:
        raise ValueError("CDF callable must evaluate elementwise on arrays")
    if (np.diff(Fx) < 0).any():
        raise ValueError("target CDF is decreasing somewhere: not a valid CDF")
    hi_cand = np.arange(1, n + 1) / n - Fx
    lo_cand = np.arange(0, n) / n - Fx
    sup = max(float(hi_cand.max()), 0.0)
    inf = min(float(lo_cand.min()), 0.0)
    if knots.size:
        Ft = np.asarray(cdf(knots), dtype=np.float64)
        right = np.searchsorted(xs, knots, side="right") / n
        left = np.searchsorted(xs, knots, side="left") / n
        sup = max(sup, float((right - Ft).max()), float((left - Ft).max()))
        inf = min(inf, float((right - Ft).min()), float((left - Ft).min()))
    return sup - inf
