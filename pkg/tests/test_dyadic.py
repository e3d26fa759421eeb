import math

import numpy as np
import pytest

from seqdensity import LEVEL_CAP, DyadicCell, cell_of


def test_cell_of_examples():
    assert cell_of(0.3, 1) == DyadicCell(1, 0)  # 0.3 in [0, 0.5)
    assert cell_of(0.5, 1) == DyadicCell(1, 1)  # boundary is left-closed
    assert cell_of(-0.1, 2) == DyadicCell(2, -1)  # floor semantics below zero


def test_cell_contains_its_point():
    rng = np.random.default_rng(1)
    for x in rng.uniform(-100, 100, size=200):
        for k in (1, 3, 17, 40):
            cell = cell_of(x, k)
            assert x in cell
            assert cell.left <= x < cell.right


def test_nesting():
    rng = np.random.default_rng(2)
    for x in rng.uniform(-50, 50, size=100):
        for k in range(2, 12):
            child = cell_of(x, k)
            assert child.parent() == cell_of(x, k - 1)
            assert cell_of(x, k - 1).left <= child.left
            assert child.right <= cell_of(x, k - 1).right


def test_tiling_unique_cell():
    # every point maps to exactly one level-k cell: same point, same cell,
    # and neighbouring cells are disjoint
    rng = np.random.default_rng(3)
    for k in (1, 5, 9):
        pts = rng.uniform(-8, 8, size=500)
        cells = [cell_of(x, k) for x in pts]
        for x, c in zip(pts, cells):
            assert cell_of(x, k) == c
        width = math.ldexp(1.0, -k)
        for c in cells:
            assert c.right - c.left == pytest.approx(width)
            assert x not in DyadicCell(k, c.index + 1) or not (c.left <= x < c.right)


def test_boundaries_are_exact_dyadics():
    # left boundary reproduces the cell: no drift at deep levels
    for k in (1, 10, 20, 31):
        for j in (-5, 0, 3, 2**10):
            cell = DyadicCell(k, j)
            assert cell_of(cell.left, k) == cell


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        cell_of(float("nan"), 1)
    with pytest.raises(ValueError):
        cell_of(math.inf, 2)
    with pytest.raises(ValueError):
        cell_of(0.5, 0)
    with pytest.raises(ValueError):
        cell_of(0.5, LEVEL_CAP + 1)
    with pytest.raises(ValueError):
        DyadicCell(1, 0).parent()
