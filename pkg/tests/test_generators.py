import math

import numpy as np
import pytest

from seqdensity import (
    SampleBuffer,
    certified_index,
    constant_source,
    discrepancy_envelope,
    empirical_measure,
    integrate,
    iid_source,
    markov_source,
    normal_density,
    rademacher_density,
    radical_inverse_base2,
    stratified_rademacher_source,
    sup_interval_discrepancy,
    uniform_density,
    van_der_corput_source,
)


# -- target densities ----------------------------------------------------------


def test_rademacher_density_examples():
    h1 = rademacher_density(1)
    assert list(h1.breakpoints) == [0.0, 0.5]
    assert list(h1.heights) == [2.0]
    h2 = rademacher_density(2)
    assert h2(0.1) == 2.0 and h2(0.3) == 0.0 and h2(0.6) == 2.0 and h2(0.8) == 0.0
    for k in range(1, 11):
        assert rademacher_density(k).integral() == 1.0


def test_rademacher_pairwise_l1_distance():
    from seqdensity import l1_step

    for j in range(1, 7):
        for k in range(1, 7):
            d = l1_step(rademacher_density(j), rademacher_density(k))
            assert d == (0.0 if j == k else 1.0)


def test_rademacher_measure_close_to_length():
    # a level-k member is within 2^(1-k) of interval length on any probe
    rng = np.random.default_rng(41)
    for k in range(1, 7):
        h = rademacher_density(k)
        for _ in range(50):
            a, b = np.sort(rng.uniform(0, 1, size=2))
            assert abs(integrate(h, a, b) - (b - a)) <= 2.0 ** (1 - k) + 1e-12


# -- i.i.d. sources -------------------------------------------------------------


def test_iid_uniform_range_and_replay():
    s1 = iid_source(uniform_density(0, 1), seed=3)
    s2 = iid_source(uniform_density(0, 1), seed=3)
    a, b = s1.take(1000), s2.take(1000)
    assert np.array_equal(a, b)
    assert ((0 <= a) & (a < 1)).all()


def test_iid_step_density_avoids_zero_mass():
    src = iid_source(rademacher_density(2), seed=4)
    xs = src.take(50000)
    assert not ((xs >= 0.25) & (xs < 0.5)).any()
    buf = SampleBuffer(xs)
    assert empirical_measure(buf, 0.0, 0.25) == pytest.approx(0.5, abs=0.01)


def test_iid_requires_density():
    with pytest.raises(ValueError):
        iid_source(rademacher_density(2).__class__([0, 1], [0.5]), seed=1)
    with pytest.raises(TypeError):
        iid_source(lambda: None, seed=1)


# -- Markov sources --------------------------------------------------------------


def test_ar1_reduces_to_iid_at_rho_zero():
    src = markov_source("ar1", seed=5, rho=0.0, sd=1.0)
    xs = src.take(20000)
    lag1 = np.corrcoef(xs[:-1], xs[1:])[0, 1]
    assert abs(lag1) < 0.02
    buf = SampleBuffer(xs)
    assert sup_interval_discrepancy(buf, normal_density(0, 1)) < 0.02


def test_ar1_stationary_marginal_and_autocorrelation():
    src = markov_source("ar1", seed=6, rho=0.5, sd=2.0)
    xs = src.take(200000)
    assert np.std(xs) == pytest.approx(2.0, rel=0.02)
    lag1 = np.corrcoef(xs[:-1], xs[1:])[0, 1]
    assert lag1 == pytest.approx(0.5, abs=0.02)
    assert src.density.name == "normal(0,2)"


def test_ar1_rejects_nonergodic_coefficient():
    with pytest.raises(ValueError):
        markov_source("ar1", seed=1, rho=1.0)
    with pytest.raises(ValueError):
        markov_source("ar1", seed=1, rho=-1.5)
    with pytest.raises(ValueError):
        markov_source("nope", seed=1)


def test_uniform_slice_chain():
    src = markov_source("uniform-slice", seed=7)
    xs = src.take(100000)
    assert ((0 <= xs) & (xs < 1)).all()
    assert sup_interval_discrepancy(SampleBuffer(xs), uniform_density(0, 1)) < 0.02


def test_markov_replay_is_bit_identical():
    a = markov_source("ar1", seed=11, rho=0.3, sd=1.0).take(500)
    b = markov_source("ar1", seed=11, rho=0.3, sd=1.0).take(500)
    assert np.array_equal(a, b)


def test_constant_source():
    src = constant_source(0.25)
    assert np.array_equal(src.take(5), np.full(5, 0.25))
    assert src.density is None


# -- deterministic low-discrepancy sources -----------------------------------------


def test_van_der_corput_first_terms():
    src = van_der_corput_source()
    assert src.take(3).tolist() == [0.5, 0.25, 0.75]
    assert src.take(1).tolist() == [0.125]  # state advances across takes
    assert radical_inverse_base2(np.array([5, 6, 7])).tolist() == [0.625, 0.375, 0.875]


def test_van_der_corput_exact_stratification():
    # the first 2^m terms hit every level-p cell exactly the right number
    # of times, for all p <= m
    src = van_der_corput_source()
    for m in (3, 6, 10):
        buf = SampleBuffer(van_der_corput_source().take(2**m))
        for p in (1, m // 2, m):
            width = 2.0**-p
            for j in range(2**p):
                assert empirical_measure(buf, j * width, (j + 1) * width) == width
    del src


def test_van_der_corput_discrepancy_bound():
    n = 2**10
    buf = SampleBuffer(van_der_corput_source().take(n))
    disc = sup_interval_discrepancy(buf, uniform_density(0, 1))
    assert disc <= 2 * (10 + 1) / n


def test_envelope_holds_along_the_sequence():
    src = van_der_corput_source()
    buf = SampleBuffer()
    target = uniform_density(0, 1)
    for m in (1, 2, 3, 5, 8, 13, 47, 128, 1000, 4096):
        buf.extend(src.take(m - buf.n))
        assert sup_interval_discrepancy(buf, target) <= discrepancy_envelope(m)


def test_stratified_source_support_and_delta():
    src = stratified_rademacher_source(1)
    xs = src.take(256)
    assert ((0 <= xs) & (xs < 0.5)).all()
    buf = SampleBuffer(xs[:64])
    assert sup_interval_discrepancy(buf, rademacher_density(1)) <= 0.5
    assert empirical_measure(SampleBuffer(xs), 0.0, 0.25) == pytest.approx(0.5, abs=0.05)


def test_stratified_source_inherits_envelope():
    for k in (1, 2, 4):
        src = stratified_rademacher_source(k)
        target = rademacher_density(k)
        buf = SampleBuffer()
        for m in (1, 4, 16, 64, 256, 1024):
            buf.extend(src.take(m - buf.n))
            assert sup_interval_discrepancy(buf, target) <= discrepancy_envelope(m)


def test_certified_index_is_a_valid_cutoff():
    for tau in (0.5, 1 / 3, 0.25, 0.2, 0.125, 0.05):
        m = certified_index(tau)
        assert discrepancy_envelope(m) <= tau
        # every later prefix stays under tau as well
        assert all(discrepancy_envelope(v) <= tau for v in range(m, 4 * m))
        if m > 1:
            assert discrepancy_envelope(m - 1) > tau


def test_source_take_contract():
    src = van_der_corput_source()
    assert src.take(0).size == 0
    with pytest.raises(ValueError):
        src.take(-1)
    it = iter(van_der_corput_source())
    assert next(it) == 0.5
