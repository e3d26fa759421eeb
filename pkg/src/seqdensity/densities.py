"""Named continuous density families with analytic CDFs.

Continuous targets stay as pdf/cdf callables; they are never converted to
step functions.  Each family knows its monotone segments and can solve
pdf(x) = c in closed form, which lets the mixed L1 metric integrate
|step - continuous| exactly up to declared tail mass.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import ndtr

from .step import StepDensity

_SQRT2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class ContinuousDensity:
    """A univariate density with analytic pdf/cdf.

    ``modes`` lists interior points splitting the support into monotone
    pieces of the pdf; ``crossings_fn(c, lo, hi)`` returns the solutions of
    pdf(x) = c inside (lo, hi), or None when unavailable.  ``breakpoints``
    is non-empty only for piecewise-constant densities expressed
    analytically.  ``total_variation`` is the variation over the whole
    line, when known in closed form.
    """

    name: str
    pdf_fn: object
    cdf_fn: object
    support: tuple
    sample_fn: object
    modes: tuple = ()
    crossings_fn: object = None
    breakpoints: tuple = ()
    total_variation: float | None = None
    params: dict = field(default_factory=dict)

    def pdf(self, x):
        return self.pdf_fn(np.asarray(x, dtype=np.float64))

    def cdf(self, x):
        return self.cdf_fn(np.asarray(x, dtype=np.float64))

    def window(self, eps=1e-6) -> tuple:
        """A [lo, hi] window carrying at least 1 - eps of the mass."""
        lo, hi = self.support
        if math.isinf(lo) or math.isinf(hi):
            # widen from the central 99% outward until the tails are small
            span = self.params.get("scale", 1.0)
            center = self.params.get("center", 0.0)
            width = 8.0 * span
            while True:
                lo_w = center - width if math.isinf(lo) else lo
                hi_w = center + width if math.isinf(hi) else hi
                tail = 1.0 - (float(self.cdf(hi_w)) - float(self.cdf(lo_w)))
                if tail <= eps:
                    return (lo_w, hi_w)
                width *= 2.0
        return (lo, hi)

    def crossings(self, level, lo, hi):
        """Solutions of pdf(x) = level strictly inside (lo, hi), or None."""
        if self.crossings_fn is None:
            return None
        pts = [x for x in self.crossings_fn(float(level)) if lo < x < hi]
        return sorted(pts)

    def sample(self, rng, size) -> np.ndarray:
        return self.sample_fn(rng, size)

    def __repr__(self):
        return f"ContinuousDensity({self.name!r})"


def uniform_density(a=0.0, b=1.0) -> ContinuousDensity:
    a, b = float(a), float(b)
    if not b > a:
        raise ValueError("need b > a")
    h = 1.0 / (b - a)

    def pdf(x):
        return np.where((x >= a) & (x < b), h, 0.0)

    def cdf(x):
        return np.clip((x - a) * h, 0.0, 1.0)

    return ContinuousDensity(
        name=f"uniform[{a:g},{b:g}]",
        pdf_fn=pdf,
        cdf_fn=cdf,
        support=(a, b),
        sample_fn=lambda rng, m: a + (b - a) * rng.random(m),
        breakpoints=(a, b),
        total_variation=2.0 * h,
        params={"center": (a + b) / 2, "scale": (b - a) / 2},
    )


def normal_density(mean=0.0, sd=1.0) -> ContinuousDensity:
    mean, sd = float(mean), float(sd)
    if not sd > 0:
        raise ValueError("need sd > 0")
    peak = 1.0 / (sd * _SQRT2PI)

    def pdf(x):
        z = (x - mean) / sd
        return np.exp(-0.5 * z * z) * peak

    def cdf(x):
        return ndtr((x - mean) / sd)

    def crossings(c):
        if not 0.0 < c < peak:
            return ()
        r = sd * math.sqrt(-2.0 * math.log(c / peak))
        return (mean - r, mean + r)

    return ContinuousDensity(
        name=f"normal({mean:g},{sd:g})",
        pdf_fn=pdf,
        cdf_fn=cdf,
        support=(-math.inf, math.inf),
        sample_fn=lambda rng, m: mean + sd * rng.standard_normal(m),
        modes=(mean,),
        crossings_fn=crossings,
        total_variation=2.0 * peak,
        params={"center": mean, "scale": sd},
    )


def exponential_density(rate=1.0) -> ContinuousDensity:
    rate = float(rate)
    if not rate > 0:
        raise ValueError("need rate > 0")

    def pdf(x):
        return np.where(x >= 0, rate * np.exp(-rate * np.maximum(x, 0.0)), 0.0)

    def cdf(x):
        return np.where(x >= 0, 1.0 - np.exp(-rate * np.maximum(x, 0.0)), 0.0)

    def crossings(c):
        if not 0.0 < c < rate:
            return ()
        return (-math.log(c / rate) / rate,)

    return ContinuousDensity(
        name=f"exponential({rate:g})",
        pdf_fn=pdf,
        cdf_fn=cdf,
        support=(0.0, math.inf),
        sample_fn=lambda rng, m: rng.exponential(1.0 / rate, m),
        crossings_fn=crossings,
        total_variation=2.0 * rate,
        params={"center": 0.0, "scale": 1.0 / rate},
    )


def step_backed(density: StepDensity) -> ContinuousDensity:
    """Express a step density through the analytic-CDF interface."""
    density.require_density()

    return ContinuousDensity(
        name="step-backed",
        pdf_fn=density,
        cdf_fn=density.cdf,
        support=density.support(),
        sample_fn=lambda rng, m: inverse_cdf_sample(density, rng, m),
        breakpoints=tuple(map(float, density.breakpoints)),
        total_variation=step_variation_total(density),
    )


def step_variation_total(density: StepDensity) -> float:
    """Variation of a step function over the whole line (all jumps)."""
    if density.is_zero():
        return 0.0
    levels = np.concatenate([[0.0], density.heights, [0.0]])
    return math.fsum(np.abs(np.diff(levels)))


def inverse_cdf_sample(density: StepDensity, rng, size) -> np.ndarray:
    """Draw i.i.d. samples from a step density by exact CDF inversion.

    Zero-height pieces receive no mass: draws land strictly inside
    positive-height pieces.
    """
    density.require_density()
    widths = np.diff(density.breakpoints)
    pos = density.heights > 0
    lefts = density.breakpoints[:-1][pos]
    heights = density.heights[pos]
    masses = heights * widths[pos]
    cum = np.concatenate([[0.0], np.cumsum(masses)])
    cum[-1] = 1.0
    u = rng.random(size)
    idx = np.clip(np.searchsorted(cum, u, side="right") - 1, 0, heights.size - 1)
    x = lefts[idx] + (u - cum[idx]) / heights[idx]
    right_edge = lefts[idx] + widths[pos][idx]
    return np.minimum(x, np.nextafter(right_edge, -np.inf))
