import pytest

from seqdensity import StepDensity, VariationBudget, budget_membership, rademacher_density


def test_constant_budget():
    a = VariationBudget.constant(3.0)
    assert a(1) == a(50) == 3.0
    with pytest.raises(ValueError):
        VariationBudget.constant(0.0)
    with pytest.raises(ValueError):
        VariationBudget.constant(-1.0)
    with pytest.raises(ValueError):
        a(0)


def test_linear_and_exponential_budgets():
    lin = VariationBudget.linear(1.0, 0.5)
    assert lin(1) == 1.5
    assert lin(4) == 3.0
    with pytest.raises(ValueError):
        VariationBudget.linear(1.0, -0.1)
    exp = VariationBudget.exponential(2.0, 1.5)
    assert exp(2) == 2.0 * 1.5**2
    with pytest.raises(ValueError):
        VariationBudget.exponential(2.0, 0.9)


def test_table_budget_extension_rules():
    t = VariationBudget.from_table([1.0, 2.0, 2.0])
    assert t(2) == 2.0
    assert t(10) == 2.0  # holds the last value
    strict = VariationBudget.from_table([1.0, 2.0], extend="error")
    with pytest.raises(ValueError):
        strict(3)
    with pytest.raises(ValueError):
        VariationBudget.from_table([2.0, 1.0])  # decreasing
    with pytest.raises(ValueError):
        VariationBudget.from_table([1.0, -2.0])


def test_parse_specs(tmp_path):
    assert VariationBudget.parse("const:3")(7) == 3.0
    assert VariationBudget.parse("linear:1,0.5")(2) == 2.0
    assert VariationBudget.parse("exp:1,2")(3) == 8.0
    path = tmp_path / "alpha.txt"
    path.write_text("1.0\n2.5\n2.5\n")
    assert VariationBudget.parse(f"table:{path}")(9) == 2.5
    with pytest.raises(ValueError):
        VariationBudget.parse("cubic:1")


def test_membership_examples():
    uniform = StepDensity([0, 1], [1.0])
    assert budget_membership(uniform, VariationBudget.constant(3.0), 4)
    # V = 2 on wide windows is not strictly below 2
    assert not budget_membership(uniform, VariationBudget.constant(2.0), 4)
    h3 = rademacher_density(3)
    assert budget_membership(h3, VariationBudget.constant(1000.0), 1)
