"""Right-continuous step functions with finitely many pieces."""

import json
import math

import numpy as np

#: Tolerance on the total integral when a step function is required to be
#: a probability density.
DENSITY_TOL = 1e-12


class StepDensity:
    """Piecewise-constant right-continuous function, zero outside its span.

    The function is described by strictly increasing breakpoints
    ``b_0 < ... < b_m`` and one height per gap, valid on ``[b_i, b_{i+1})``.
    Construction canonicalizes the representation: adjacent pieces with
    equal heights are merged and zero-height edge pieces are trimmed, so
    two objects compare equal exactly when they are equal as functions.

    Instances are immutable; the backing arrays are write-protected.
    """

    __slots__ = ("breakpoints", "heights", "_cum")

    def __init__(self, breakpoints, heights):
        bp = np.array(breakpoints, dtype=np.float64)
        h = np.array(heights, dtype=np.float64)
        if bp.ndim != 1 or h.ndim != 1:
            raise ValueError("breakpoints and heights must be one-dimensional")
        if bp.size == 0 and h.size == 0:
            pass
        elif h.size != bp.size - 1:
            raise ValueError(
                f"need one height per gap: {bp.size} breakpoints vs {h.size} heights"
            )
        if bp.size and not np.isfinite(bp).all():
            raise ValueError("breakpoints must be finite")
        if h.size and not np.isfinite(h).all():
            raise ValueError("heights must be finite")
        if bp.size > 1 and not (np.diff(bp) > 0).all():
            raise ValueError("breakpoints must be strictly increasing")
        bp, h = _canonical(bp, h)
        bp.setflags(write=False)
        h.setflags(write=False)
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "heights", h)
        object.__setattr__(self, "_cum", None)

    def __setattr__(self, name, value):
        raise AttributeError("StepDensity is immutable")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def zero(cls) -> "StepDensity":
        """The identically-zero function."""
        return cls([], [])

    @classmethod
    def from_pieces(cls, starts, ends, heights) -> "StepDensity":
        """Build from disjoint pieces [start_i, end_i); gaps read as zero.

        Pieces must be sorted with ``end_i <= start_{i+1}``.
        """
        starts = np.asarray(starts, dtype=np.float64)
        ends = np.asarray(ends, dtype=np.float64)
        h = np.asarray(heights, dtype=np.float64)
        if not (starts.size == ends.size == h.size):
            raise ValueError("starts, ends and heights must have equal length")
        if starts.size == 0:
            return cls.zero()
        if not (ends > starts).all():
            raise ValueError("each piece must have positive width")
        if starts.size > 1 and (starts[1:] < ends[:-1]).any():
            raise ValueError("pieces must be sorted and non-overlapping")
        gap_after = np.nonzero(starts[1:] > ends[:-1])[0]
        bp = np.insert(starts, gap_after + 1, ends[gap_after])
        hh = np.insert(h, gap_after + 1, 0.0)
        bp = np.append(bp, ends[-1])
        return cls(bp, hh)

    # -- basic queries --------------------------------------------------------

    @property
    def npieces(self) -> int:
        return int(self.heights.size)

    def is_zero(self) -> bool:
        return self.heights.size == 0

    def support(self):
        """(lo, hi) span outside which the function is zero, or None."""
        if self.is_zero():
            return None
        return float(self.breakpoints[0]), float(self.breakpoints[-1])

    def __call__(self, x):
        """Evaluate at x (scalar or array); right-continuous."""
        arr = np.asarray(x, dtype=np.float64)
        scalar = arr.ndim == 0
        arr = np.atleast_1d(arr)
        out = np.zeros(arr.shape)
        if self.heights.size:
            idx = np.searchsorted(self.breakpoints, arr, side="right") - 1
            inside = (idx >= 0) & (idx < self.heights.size)
            out[inside] = self.heights[idx[inside]]
        return float(out[0]) if scalar else out

    def __eq__(self, other):
        if not isinstance(other, StepDensity):
            return NotImplemented
        return np.array_equal(self.breakpoints, other.breakpoints) and np.array_equal(
            self.heights, other.heights
        )

    __hash__ = None

    def __repr__(self):
        if self.is_zero():
            return "StepDensity.zero()"
        return f"StepDensity(<{self.npieces} pieces on [{self.breakpoints[0]:g}, {self.breakpoints[-1]:g})>)"

    # -- integration ----------------------------------------------------------

    def integral(self) -> float:
        """Integral over the whole line."""
        if self.is_zero():
            return 0.0
        return math.fsum(self.heights * np.diff(self.breakpoints))

    def _cummass(self):
        cum = self._cum
        if cum is None:
            masses = self.heights * np.diff(self.breakpoints) if self.heights.size else np.empty(0)
            cum = np.concatenate([[0.0], np.cumsum(masses)])
            object.__setattr__(self, "_cum", cum)
        return cum

    def cdf(self, t):
        """Integral over (-inf, t); piecewise linear in t."""
        arr = np.asarray(t, dtype=np.float64)
        scalar = arr.ndim == 0
        arr = np.atleast_1d(arr)
        if self.is_zero():
            out = np.zeros(arr.shape)
            return float(out[0]) if scalar else out
        cum = self._cummass()
        idx = np.searchsorted(self.breakpoints, arr, side="right") - 1
        idx_c = np.clip(idx, 0, self.heights.size - 1)
        out = cum[idx_c] + self.heights[idx_c] * (arr - self.breakpoints[idx_c])
        out = np.where(idx < 0, 0.0, out)
        out = np.where(idx >= self.heights.size, cum[-1], out)
        return float(out[0]) if scalar else out

    # -- density contract -----------------------------------------------------

    def is_density(self, tol=DENSITY_TOL) -> bool:
        """True when all heights are >= 0 and the integral is 1 within tol."""
        if self.is_zero():
            return False
        if (self.heights < 0).any():
            return False
        return abs(self.integral() - 1.0) <= tol

    def require_density(self, tol=DENSITY_TOL) -> "StepDensity":
        if not self.is_density(tol):
            raise ValueError(
                f"not a probability density (integral {self.integral()!r}, "
                f"min height {self.heights.min() if self.heights.size else 0.0})"
            )
        return self

    # -- serialization ----------------------------------------------------------
    #
    # Both formats describe right-open pieces with implicit zero tails.
    # JSON: {"format_version": 1, "breakpoints": [...], "heights": [...]}.
    # CSV: header "x,height"; each row gives the value from that x up to the
    # next row's x; the final row always carries height 0 and marks where the
    # function drops back to zero.

    def to_json(self) -> str:
        return json.dumps(
            {
                "format_version": 1,
                "breakpoints": list(map(float, self.breakpoints)),
                "heights": list(map(float, self.heights)),
            }
        )

    @classmethod
    def from_json(cls, text) -> "StepDensity":
        obj = json.loads(text)
        try:
            return cls(obj["breakpoints"], obj["heights"])
        except KeyError as exc:
            raise ValueError(f"missing field {exc} in step-density JSON") from exc

    def to_csv(self) -> str:
        lines = ["x,height"]
        for i in range(self.npieces):
            lines.append(f"{float(self.breakpoints[i])!r},{float(self.heights[i])!r}")
        if not self.is_zero():
            lines.append(f"{float(self.breakpoints[-1])!r},0.0")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text) -> "StepDensity":
        rows = [line for line in text.strip().splitlines() if line.strip()]
        if not rows or rows[0].strip().lower() != "x,height":
            raise ValueError("expected header 'x,height'")
        xs, hs = [], []
        for row in rows[1:]:
            a, b = row.split(",")
            xs.append(float(a))
            hs.append(float(b))
        if not xs:
            return cls.zero()
        if hs[-1] != 0.0:
            raise ValueError("final CSV row must carry height 0")
        return cls(xs, hs[:-1])


def _canonical(bp, h):
    """Merge equal adjacent heights, trim zero-height edges."""
    if h.size == 0:
        return np.empty(0), np.empty(0)
    keep = np.empty(h.size, dtype=bool)
    keep[0] = True
    np.not_equal(h[1:], h[:-1], out=keep[1:])
    starts = bp[:-1][keep]
    hh = h[keep]
    full_bp = np.append(starts, bp[-1])
    nonzero = np.nonzero(hh)[0]
    if nonzero.size == 0:
        return np.empty(0), np.empty(0)
    lo, hi = nonzero[0], nonzero[-1]
    return np.ascontiguousarray(full_bp[lo : hi + 2]), np.ascontiguousarray(hh[lo : hi + 1])


def integrate(f: StepDensity, a, b) -> float:
    """Exact integral of a step function over [a, b).

    Computed piecewise, so there is no quadrature error.  Infinite bounds
    are permitted (the tails carry no mass); NaN bounds are rejected.
    """
    a = float(a)
    b = float(b)
    if math.isnan(a) or math.isnan(b):
        raise ValueError("integration bounds must not be NaN")
    if a > b:
        raise ValueError(f"need a <= b, got a={a}, b={b}")
    if f.is_zero() or a == b:
        return 0.0
    lo = np.maximum(f.breakpoints[:-1], a)
    hi = np.minimum(f.breakpoints[1:], b)
    widths = np.clip(hi - lo, 0.0, None)
    return math.fsum(f.heights * widths)
