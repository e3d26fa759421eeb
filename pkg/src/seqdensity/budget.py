"""Variation budgets: nondecreasing per-window bounds defining a model class."""

import math

import numpy as np

from .step import StepDensity
from .variation import step_variation


class VariationBudget:
    """A nondecreasing positive function alpha(i) on i = 1, 2, ...

    Closed forms: ``constant(c)``, ``linear(base, slope)`` for
    base + slope*i, ``exponential(base, ratio)`` for base * ratio**i.
    Finite tables extend beyond their last entry by repeating it ("hold",
    the default) or by refusing ("error").
    """

    def __init__(self, fn, descriptor):
        self._fn = fn
        self.descriptor = descriptor

    def __call__(self, i) -> float:
        i = int(i)
        if i < 1:
            raise ValueError(f"budget index must be >= 1, got {i}")
        return float(self._fn(i))

    def __repr__(self):
        return f"VariationBudget({self.descriptor!r})"

    # -- constructors ----------------------------------------------------------

    @classmethod
    def constant(cls, c) -> "VariationBudget":
        c = float(c)
        if not (c > 0 and math.isfinite(c)):
            raise ValueError(f"budget must be positive and finite, got {c}")
        return cls(lambda i: c, f"const:{c:g}")

    @classmethod
    def linear(cls, base, slope) -> "VariationBudget":
        base = float(base)
        slope = float(slope)
        if slope < 0:
            raise ValueError("slope must be >= 0 to keep the budget nondecreasing")
        if base + slope <= 0:
            raise ValueError("budget must be positive at i = 1")
        return cls(lambda i: base + slope * i, f"linear:{base:g},{slope:g}")

    @classmethod
    def exponential(cls, base, ratio) -> "VariationBudget":
        base = float(base)
        ratio = float(ratio)
        if base <= 0:
            raise ValueError("base must be positive")
        if ratio < 1:
            raise ValueError("ratio must be >= 1 to keep the budget nondecreasing")
        return cls(lambda i: base * ratio**i, f"exp:{base:g},{ratio:g}")

    @classmethod
    def from_table(cls, values, extend="hold") -> "VariationBudget":
        vals = np.asarray(values, dtype=np.float64)
        if vals.ndim != 1 or vals.size == 0:
            raise ValueError("table must be a non-empty 1-d sequence")
        if not np.isfinite(vals).all() or (vals <= 0).any():
            raise ValueError("table entries must be positive and finite")
        if (np.diff(vals) < 0).any():
            raise ValueError("table must be nondecreasing")
        if extend not in ("hold", "error"):
            raise ValueError("extend must be 'hold' or 'error'")

        def fn(i):
            if i <= vals.size:
                return vals[i - 1]
            if extend == "hold":
                return vals[-1]
            raise ValueError(f"budget table has {vals.size} entries; no value for i={i}")

        return cls(fn, f"table[{vals.size}]:{extend}")

    @classmethod
    def parse(cls, spec) -> "VariationBudget":
        """Build from a CLI-style spec: const:V | linear:A,B | exp:A,R | table:PATH."""
        kind, _, rest = str(spec).partition(":")
        if kind == "const":
            return cls.constant(float(rest))
        if kind == "linear":
            base, slope = rest.split(",")
            return cls.linear(float(base), float(slope))
        if kind == "exp":
            base, ratio = rest.split(",")
            return cls.exponential(float(base), float(ratio))
        if kind == "table":
            with open(rest, encoding="utf-8") as fh:
                values = [float(tok) for tok in fh.read().split()]
            return cls.from_table(values)
        raise ValueError(f"unknown budget spec {spec!r}")


def budget_membership(f: StepDensity, budget: VariationBudget, i_max: int) -> bool:
    """True iff the variation of f over [-i, i) is strictly below the budget
    for every window i = 1..i_max."""
    if i_max < 1:
        raise ValueError("need i_max >= 1")
    return all(step_variation(f, -i, i) < budget(i) for i in range(1, i_max + 1))
