"""Dyadic interval geometry shared by the histogram machinery."""

import math
from dataclasses import dataclass

#: Hard cap on the partition depth k.  Cell boundaries j/2^k are exact
#: binary floats only while the index fits a double mantissa, i.e. while
#: k + log2|x| stays below ~52.  Within SAMPLE_LIMIT that holds for every
#: depth used in practice; 40 is a generous ceiling.
LEVEL_CAP = 40

#: Largest admissible |x| for samples (2^20).  Out-of-range values are
#: reported to the caller rather than silently binned.
SAMPLE_LIMIT = float(2**20)


@dataclass(frozen=True)
class DyadicCell:
    """Half-open interval [j/2^k, (j+1)/2^k) of the level-k partition.

    Cells at one level tile the real line; each level-k cell sits inside
    exactly one level-(k-1) cell.
    """

    level: int
    index: int

    def __post_init__(self):
        if not 1 <= self.level <= LEVEL_CAP:
            raise ValueError(f"level must be in [1, {LEVEL_CAP}], got {self.level}")

    @property
    def left(self) -> float:
        return math.ldexp(float(self.index), -self.level)

    @property
    def right(self) -> float:
        return math.ldexp(float(self.index + 1), -self.level)

    @property
    def width(self) -> float:
        return math.ldexp(1.0, -self.level)

    def parent(self) -> "DyadicCell":
        """The level-(k-1) cell containing this one."""
        if self.level < 2:
            raise ValueError("level-1 cells have no parent within the partition family")
        return DyadicCell(self.level - 1, self.index >> 1)

    def __contains__(self, x) -> bool:
        return self.left <= x < self.right


def cell_of(x, k) -> DyadicCell:
    """Cell of the level-k dyadic partition containing x.

    Multiplying a binary float by 2^k is exact (exponent shift), so the
    floor below is the true index for every finite double.
    """
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"sample must be finite, got {x}")
    if not 1 <= k <= LEVEL_CAP:
        raise ValueError(f"level must be in [1, {LEVEL_CAP}], got {k}")
    return DyadicCell(k, math.floor(math.ldexp(x, k)))
