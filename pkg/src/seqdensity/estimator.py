"""Adaptive level selection under a variation budget.

The estimate is the dyadic histogram at the deepest level k (up to the
depth schedule b_n) whose windowed variation stays strictly below four
times the budget on every window [-i, i), i = 1..k.  When no level
qualifies the estimate is the zero function.
"""

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from sklearn.base import BaseEstimator, DensityMixin
from sklearn.utils.validation import check_is_fitted

from .budget import VariationBudget
from .densities import inverse_cdf_sample
from .dyadic import LEVEL_CAP
from .empirical import SampleBuffer, histogram
from .step import StepDensity
from .validation import check_samples
from .variation import variation_profile


def default_depth(n: int) -> int:
    """floor(log2 n), at least 1.  Keeps expected cell occupancy >= 1 at
    the deepest level and matches the O(n log n + n b_n) cost budget."""
    n = int(n)
    if n < 1:
        raise ValueError("need n >= 1")
    return max(1, n.bit_length() - 1)


@dataclass(frozen=True)
class EstimatorConfig:
    """Budget alpha, depth schedule n -> b_n, and a hard level cap."""

    budget: VariationBudget
    depth_schedule: Callable[[int], int] = default_depth
    level_cap: int = LEVEL_CAP

    def __post_init__(self):
        if not isinstance(self.budget, VariationBudget):
            raise TypeError("budget must be a VariationBudget")
        if not 1 <= self.level_cap <= LEVEL_CAP:
            raise ValueError(f"level_cap must be in [1, {LEVEL_CAP}]")

    def depth(self, n: int) -> int:
        b = int(self.depth_schedule(n))
        if b < 1:
            raise ValueError(f"depth schedule must be >= 1, got b_n={b} at n={n}")
        return min(b, self.level_cap)


@dataclass(frozen=True)
class EstimateReport:
    """Level choice, resulting density, and the variation audit table.

    ``variation_table[k]`` holds the windowed variations (i = 1..k) for
    every level examined by the downward scan; ``passes`` counts the data
    passes (one per examined level).  ``level`` is None exactly when every
    level was rejected and ``density`` is the zero function.
    """

    level: int | None
    density: StepDensity
    variation_table: dict = field(repr=False)
    n: int = 0
    depth: int = 0
    passes: int = 0


def _scan(buffer: SampleBuffer, config: EstimatorConfig):
    """Downward scan: return (selected level or None, audit table, passes)."""
    b_n = config.depth(buffer.n)
    table = {}
    passes = 0
    for k in range(b_n, 0, -1):
        profile = variation_profile(buffer, k, k)
        passes += 1
        table[k] = profile
        if all(profile[i - 1] < 4.0 * config.budget(i) for i in range(1, k + 1)):
            return k, table, passes
    return None, table, passes


def select_level(buffer: SampleBuffer, config: EstimatorConfig):
    """Largest level k <= b_n whose histogram variation stays strictly
    below 4*alpha(i) on every window i = 1..k; None when none qualifies."""
    return _scan(buffer, config)[0]


def estimate(buffer: SampleBuffer, config: EstimatorConfig) -> EstimateReport:
    """The adaptive histogram estimate for the buffered prefix.

    Sorting dominates once, then each examined level costs one linear
    pass, for O(n log n + n b_n) total.  Refuses an empty buffer: the
    selection rule is undefined without data.
    """
    level, table, passes = _scan(buffer, config)
    density = histogram(buffer, level) if level is not None else StepDensity.zero()
    return EstimateReport(
        level=level,
        density=density,
        variation_table=table,
        n=buffer.n,
        depth=config.depth(buffer.n),
        passes=passes,
    )


class SourceExhausted(RuntimeError):
    """A source ran dry before the final checkpoint; carries the reports
    completed so far."""

    def __init__(self, message, completed):
        super().__init__(message)
        self.completed = completed


def stream(source, config: EstimatorConfig, checkpoints) -> list:
    """Consume a source, estimating at each checkpoint sample count."""
    cps = [int(c) for c in checkpoints]
    if not cps or any(b <= a for a, b in zip(cps, cps[1:])) or cps[0] < 1:
        raise ValueError("checkpoints must be strictly increasing positive counts")
    buffer = SampleBuffer()
    reports = []
    for cp in cps:
        try:
            chunk = source.take(cp - buffer.n)
        except ValueError as exc:
            raise SourceExhausted(
                f"source ended before checkpoint n={cp}: {exc}", reports
            ) from exc
        buffer.extend(chunk)
        reports.append(estimate(buffer, config))
    return reports


def _as_budget(alpha) -> VariationBudget:
    if isinstance(alpha, VariationBudget):
        return alpha
    if isinstance(alpha, str):
        return VariationBudget.parse(alpha)
    return VariationBudget.constant(float(alpha))


class AdaptiveHistogramDensity(DensityMixin, BaseEstimator):
    """Sklearn-style wrapper around the adaptive dyadic histogram.

    Parameters
    ----------
    alpha : float, str, or VariationBudget, default=3.0
        The variation budget.  A number means a constant budget; strings
        use the spec grammar ``const:V | linear:A,B | exp:A,R``.
    depth : "auto", int, or callable, default="auto"
        Depth schedule b_n.  "auto" is floor(log2 n); an int is a constant
        depth; a callable receives n.
    level_cap : int, default=40
        Hard maximum partition level.

    Attributes
    ----------
    density_ : StepDensity
        The fitted density (zero function when every level is rejected).
    level_ : int or None
        The selected partition level.
    report_ : EstimateReport
        Full audit of the fit, including the variation table.
    n_samples_ : int

    Examples
    --------
    >>> import numpy as np
    >>> est = AdaptiveHistogramDensity(alpha=3.0)
    >>> xs = np.random.default_rng(0).random(2000)
    >>> est.fit(xs).level_ > 1
    True
    """

    def __init__(self, alpha=3.0, depth="auto", level_cap=LEVEL_CAP):
        self.alpha = alpha
        self.depth = depth
        self.level_cap = level_cap

    def _config(self) -> EstimatorConfig:
        if self.depth == "auto":
            schedule = default_depth
        elif callable(self.depth):
            schedule = self.depth
        else:
            fixed = int(self.depth)
            schedule = lambda n: fixed
        return EstimatorConfig(
            budget=_as_budget(self.alpha),
            depth_schedule=schedule,
            level_cap=int(self.level_cap),
        )

    def fit(self, X, y=None):
        """Fit on samples X (1-d array-like or single column)."""
        xs = check_samples(X)
        report = estimate(SampleBuffer(xs), self._config())
        self.n_samples_ = xs.size
        self.report_ = report
        self.level_ = report.level
        self.density_ = report.density
        return self

    def score_samples(self, X) -> np.ndarray:
        """Log density at the query points (-inf where the estimate is 0)."""
        check_is_fitted(self, "density_")
        xs = check_samples(X, allow_empty=True)
        with np.errstate(divide="ignore"):
            return np.log(self.density_(xs))

    def score(self, X, y=None) -> float:
        """Total log density over X."""
        return float(np.sum(self.score_samples(X)))

    def sample(self, n_samples=1, random_state=None) -> np.ndarray:
        """Draw from the fitted density by exact CDF inversion."""
        check_is_fitted(self, "density_")
        if self.density_.is_zero():
            raise ValueError("cannot sample: the fitted density is the zero function")
        rng = np.random.default_rng(random_state)
        return inverse_cdf_sample(self.density_, rng, int(n_samples))
