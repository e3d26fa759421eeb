"""Input validation helpers shared by the estimator API and the CLI."""

import numpy as np

from .dyadic import SAMPLE_LIMIT


class SampleRangeError(ValueError):
    """A sample is non-finite or outside the supported range |x| <= 2^20."""


class EmptyBufferError(ValueError):
    """An operation that needs at least one sample saw an empty buffer."""


def check_samples(X, allow_empty=False) -> np.ndarray:
    """Coerce X to a 1-d float64 array of admissible samples.

    Accepts a 1-d array-like or a single-column 2-d array (the sklearn
    convention for univariate data).  Rejects non-finite values and values
    with |x| > 2^20, naming the first offender.
    """
    xs = np.asarray(X, dtype=np.float64)
    if xs.ndim == 2 and xs.shape[1] == 1:
        xs = xs[:, 0]
    if xs.ndim != 1:
        raise ValueError(f"expected 1-d samples or a single column, got shape {xs.shape}")
    if xs.size == 0:
        if allow_empty:
            return xs
        raise EmptyBufferError("no samples provided")
    bad = ~np.isfinite(xs)
    if bad.any():
        raise SampleRangeError(f"sample {xs[np.argmax(bad)]} is not finite")
    bad = np.abs(xs) > SAMPLE_LIMIT
    if bad.any():
        raise SampleRangeError(
            f"sample {xs[np.argmax(bad)]!r} outside supported range |x| <= {SAMPLE_LIMIT:.0f}"
        )
    return xs


def check_sample(x) -> float:
    """Validate a single sample value."""
    return float(check_samples([x])[0])
