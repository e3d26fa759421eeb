"""Sequence sources with declared limiting densities.

A source produces an unbounded numerical sequence whose empirical interval
frequencies converge to a declared density (or to none, for diagnostic
sources).  Stochastic sources replay bit-identically under a fixed seed;
the deterministic sources replay by construction.
"""

import math

import numpy as np

from .densities import ContinuousDensity, inverse_cdf_sample, normal_density, uniform_density
from .dyadic import LEVEL_CAP
from .step import StepDensity


class SequenceSource:
    """Uniform interface over sequence producers.

    ``take(m)`` returns the next m terms as a float array.  ``density``
    declares the limiting density (a StepDensity or ContinuousDensity) or
    is None when no limiting density is claimed.
    """

    def __init__(self, name, take_fn, density=None, seed=None):
        self.name = name
        self._take = take_fn
        self.density = density
        self.seed = seed

    def take(self, m) -> np.ndarray:
        m = int(m)
        if m < 0:
            raise ValueError("cannot take a negative number of terms")
        out = np.asarray(self._take(m), dtype=np.float64)
        if out.size != m:
            raise ValueError(f"source {self.name!r} produced {out.size} of {m} terms")
        return out

    def __iter__(self):
        while True:
            yield from self.take(1024)

    def __repr__(self):
        return f"SequenceSource({self.name!r})"


# -- target densities ---------------------------------------------------------


def rademacher_density(k: int) -> StepDensity:
    """Density equal to 2 on the even dyadic blocks of level k in [0, 1).

    There are 2^(k-1) such blocks, so the function integrates to one, and
    the L1 distance between any two distinct members of the family is 1.
    """
    if not 1 <= k <= LEVEL_CAP:
        raise ValueError(f"level must be in [1, {LEVEL_CAP}], got {k}")
    edges = np.ldexp(np.arange(2**k + 1, dtype=np.float64), -k)
    heights = np.zeros(2**k)
    heights[::2] = 2.0
    return StepDensity(edges, heights)


# -- i.i.d. and Markov sources --------------------------------------------------


def iid_source(density, seed) -> SequenceSource:
    """I.i.d. draws from a step density (exact CDF inversion) or a named
    continuous density (its native sampler)."""
    rng = np.random.default_rng(seed)
    if isinstance(density, StepDensity):
        density.require_density()
        take = lambda m: inverse_cdf_sample(density, rng, m)
        name = "iid(step)"
    elif isinstance(density, ContinuousDensity):
        take = lambda m: density.sample(rng, m)
        name = f"iid({density.name})"
    else:
        raise TypeError("density must be a StepDensity or ContinuousDensity")
    return SequenceSource(name, take, density=density, seed=seed)


def markov_source(family, seed, **params) -> SequenceSource:
    """An ergodic Markov chain started from its stationary law.

    Families:

    - ``"ar1"``: X_{t+1} = rho X_t + e_t with Gaussian innovations scaled
      so the stationary law is N(0, sd^2).  Parameters ``rho`` in (-1, 1)
      and ``sd`` > 0 (stationary standard deviation, default 1).
    - ``"uniform-slice"``: additive chain X_{t+1} = frac(X_t + U), with U
      uniform on [0, step); the stationary law is uniform on [0, 1).
      Parameter ``step`` in (0, 1], default 0.25.
    """
    rng = np.random.default_rng(seed)
    if family == "ar1":
        rho = float(params.pop("rho", 0.5))
        sd = float(params.pop("sd", 1.0))
        if params:
            raise TypeError(f"unknown ar1 parameters {sorted(params)}")
        if not -1.0 < rho < 1.0:
            raise ValueError(f"ar1 needs |rho| < 1, got {rho}")
        if not sd > 0:
            raise ValueError("stationary sd must be positive")
        innov_sd = sd * math.sqrt(1.0 - rho * rho)
        state = {"x": sd * rng.standard_normal()}

        def take(m):
            eps = innov_sd * rng.standard_normal(m)
            out = np.empty(m)
            x = state["x"]
            for t in range(m):
                x = rho * x + eps[t]
                out[t] = x
            state["x"] = x
            return out

        return SequenceSource(
            f"ar1(rho={rho:g},sd={sd:g})", take, density=normal_density(0.0, sd), seed=seed
        )
    if family == "uniform-slice":
        step = float(params.pop("step", 0.25))
        if params:
            raise TypeError(f"unknown uniform-slice parameters {sorted(params)}")
        if not 0.0 < step <= 1.0:
            raise ValueError("step must be in (0, 1]")
        state = {"x": float(rng.random())}

        def take(m):
            jumps = step * rng.random(m)
            out = np.mod(state["x"] + np.cumsum(jumps), 1.0)
            state["x"] = float(out[-1]) if m else state["x"]
            return out

        return SequenceSource(
            f"uniform-slice(step={step:g})", take, density=uniform_density(0.0, 1.0), seed=seed
        )
    raise ValueError(f"unknown Markov family {family!r}")


def constant_source(value) -> SequenceSource:
    """Repeats one value forever.  Declares no limiting density (a point
    mass has none)."""
    value = float(value)
    return SequenceSource(f"constant({value:g})", lambda m: np.full(m, value), density=None)


# -- low-discrepancy sources ----------------------------------------------------


def radical_inverse_base2(indices) -> np.ndarray:
    """Base-2 radical inverse (bit reversal) of positive integer indices."""
    idx = np.asarray(indices, dtype=np.uint64)
    out = np.zeros(idx.shape)
    scale = 0.5
    work = idx.copy()
    while work.any():
        out += scale * (work & np.uint64(1))
        work >>= np.uint64(1)
        scale *= 0.5
    return out


def van_der_corput_source() -> SequenceSource:
    """The base-2 radical-inverse sequence 1/2, 1/4, 3/4, 1/8, ...

    A purely deterministic sequence whose empirical measure on every
    interval converges to its length: the first m terms put either
    floor(m/2^p) or ceil(m/2^p) points in any level-p dyadic cell, because
    membership is a congruence condition on the index.
    """
    state = {"next": 1}

    def take(m):
        lo = state["next"]
        state["next"] = lo + m
        return radical_inverse_base2(np.arange(lo, lo + m, dtype=np.uint64))

    return SequenceSource("van-der-corput", take, density=uniform_density(0.0, 1.0))


def _rademacher_inverse_cdf(u: np.ndarray, k: int) -> np.ndarray:
    """Quantile transform of the level-k even-block density, exact on dyadics."""
    j = np.floor(np.ldexp(u, k - 1))
    return 0.5 * (np.ldexp(j, 1 - k) + u)


def stratified_rademacher_source(k: int) -> SequenceSource:
    """Deterministic sequence with limiting density ``rademacher_density(k)``.

    Applies the exact quantile transform of the target to the van der
    Corput sequence.  The transform is monotone, so intervals pull back to
    intervals of the matching target mass and the source inherits the van
    der Corput discrepancy envelope; see ``discrepancy_envelope``.
    """
    if not 1 <= k <= LEVEL_CAP:
        raise ValueError(f"level must be in [1, {LEVEL_CAP}], got {k}")
    base = van_der_corput_source()
    return SequenceSource(
        f"stratified-rademacher({k})",
        lambda m: _rademacher_inverse_cdf(base.take(m), k),
        density=rademacher_density(k),
    )


# -- certified discrepancy envelope ---------------------------------------------


def discrepancy_envelope(m: int) -> float:
    """Provable bound on the interval discrepancy of the first m terms of
    the van der Corput sequence, and of its monotone quantile transforms.

    For a prefix interval [0, x): write x's truncation at level
    p = floor(log2 m) as a disjoint union of at most p dyadic cells, one
    per binary digit.  Each level-q cell holds between floor(m/2^q) and
    ceil(m/2^q) points (congruence counting), so each contributes error
    below 1; the remainder below level p holds at most m/2^p + 1 < 3
    points and has mass below 2/m * ... < 2, giving
    |count - m*x| <= p + 3.  A general interval is a difference of two
    prefixes, hence the bound (2*floor(log2 m) + 6) / m.

    A monotone quantile transform maps intervals to intervals of equal
    target mass without reordering points, so the same bound holds for the
    transformed sequence against its target.
    """
    m = int(m)
    if m < 1:
        raise ValueError("need m >= 1")
    return (2 * (m.bit_length() - 1) + 6) / m


def certified_index(tau: float) -> int:
    """Smallest M with discrepancy_envelope(m) <= tau for every m >= M.

    The envelope decreases within each dyadic block [2^p, 2^{p+1}) and its
    block maxima (2p + 6) / 2^p decrease in p, so a finite M always
    exists.
    """
    tau = float(tau)
    if not tau > 0:
        raise ValueError("need tau > 0")
    p = 0
    while (2 * p + 6) / 2**p > tau:
        p += 1
    # every m >= 2^p is safe; walk down while the envelope stays under tau
    m = 2**p
    while m > 1 and discrepancy_envelope(m - 1) <= tau:
        m -= 1
    return m
