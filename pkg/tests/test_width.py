import math

import pytest
from hypothesis import given, strategies as st

from infowidth import (
    DomainError,
    OutOfRangeError,
    PropertyCollection,
    UndefinedValueError,
    brute_force_width,
    efficiency,
    info_width,
    information,
    kappa_star,
    optimal_property,
    provider_width_bruteforce,
    threshold_r,
)
from infowidth.width import EXACT, LOGDOMAIN, min_description_bits

from oracles import brute_width, greedy_width


@pytest.mark.parametrize("ny, members, r", [(2, 3, 2), (4, 5, 2), (4, 1, 1), (8, 1, 1)])
def test_threshold_examples(ny, members, r):
    assert threshold_r(ny, members=members) == r
    assert threshold_r(ny, members=members, backend=LOGDOMAIN) == r


def test_width_examples():
    assert info_width(2, l=math.log2(4 / 3)).width_bits == pytest.approx(2 / 3, abs=1e-12)
    assert info_width(4, members=5).width_bits == pytest.approx(1.8, abs=1e-12)
    for n in (1, 2, 5, 17, 100):
        assert info_width(n, members=1).width_bits == math.log2(n)
    full = info_width(4, members=15).width_bits
    assert full == pytest.approx(2 - (8 + 4 * math.log2(3)) / 15, abs=1e-12)


def test_witness_examples():
    assert optimal_property(4, 5).counts == {1: 4, 2: 1}
    assert optimal_property(4, 4).counts == {1: 4}
    assert information(optimal_property(4, 4)) == 2.0
    assert optimal_property(2, 3).counts == {1: 2, 2: 1}


def test_kappa_star_examples():
    assert kappa_star(8, members=1) == pytest.approx(8 / 3, abs=1e-15)
    # log2(16/5) / 1.8 evaluated at high precision
    assert kappa_star(4, members=5) == pytest.approx(0.932262169507021, abs=1e-12)
    assert kappa_star(2, members=2) == 1.0


def test_efficiency_examples():
    assert efficiency(PropertyCollection.profiled(4, {1: 4})) == 1.0
    assert efficiency(PropertyCollection.profiled(4, {1: 4, 2: 4})) == 1.0
    with pytest.raises(UndefinedValueError):
        efficiency(PropertyCollection.explicit(2, [[0, 1]]))


def test_provider_width_examples():
    # values from a hand enumeration of every member set and target
    assert provider_width_bruteforce(1, 1) == 0.0
    assert provider_width_bruteforce(2, 1) == 0.0
    assert provider_width_bruteforce(2, 3) == pytest.approx(2 / 3, abs=1e-12)


def test_brute_force_matches_independent_oracle():
    assert brute_force_width(4, 5) == pytest.approx(1.8, abs=1e-12)
    for m in range(1, 8):
        assert brute_force_width(3, m) == pytest.approx(brute_width(3, m), abs=1e-12)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"space_size": 0, "members": 1},
        {"space_size": 4, "members": 16},
        {"space_size": 4, "members": 0},
        {"space_size": 4, "l": 4.5},
        {"space_size": 4, "l": 0.01},
        {"space_size": 4, "l": math.nan},
    ],
)
def test_out_of_range(kwargs):
    with pytest.raises(DomainError):
        info_width(**kwargs)


def test_range_error_type():
    with pytest.raises(OutOfRangeError):
        info_width(3, members=8)


def test_smallest_l_is_accepted():
    n = 6
    res = info_width(n, l=min_description_bits(n))
    assert res.width_bits == pytest.approx(info_width(n, members=(1 << n) - 1).width_bits, abs=1e-12)


# --- property-based invariants ---------------------------------------------------------------


@given(st.integers(1, 12), st.data())
def test_exact_width_matches_mpmath(ny, data):
    m = data.draw(st.integers(1, (1 << ny) - 1))
    assert info_width(ny, members=m).width_bits == pytest.approx(greedy_width(ny, m), abs=1e-12)


@given(st.integers(1, 10), st.data())
def test_witness_attains_width(ny, data):
    m = data.draw(st.integers(1, (1 << ny) - 1))
    x = optimal_property(ny, m)
    assert x.size == m
    assert information(x) == info_width(ny, members=m).width_bits


@given(st.integers(2, 6), st.data())
def test_explicit_efficiency_at_most_one(ny, data):
    masks = data.draw(st.sets(st.integers(1, (1 << ny) - 1), min_size=1, max_size=(1 << ny) - 2))
    x = PropertyCollection.explicit(ny, [[i for i in range(ny) if m >> i & 1] for m in masks])
    if information(x) > 0:
        assert efficiency(x) <= 1 + 1e-12


@given(st.sampled_from([5, 32, 64, 128, 300]), st.floats(0.0, 1.0))
def test_backends_agree(ny, frac):
    lo = min_description_bits(ny)
    l = lo + frac * (ny - lo)
    a = info_width(ny, l=l, backend=EXACT).width_bits
    b = info_width(ny, l=l, backend=LOGDOMAIN).width_bits
    assert a == pytest.approx(b, abs=1e-9)


@given(st.integers(2, 64), st.floats(0.0, 1.0), st.floats(0.0, 1.0))
def test_width_monotone_in_l(ny, f1, f2):
    lo = min_description_bits(ny)
    l1, l2 = sorted((lo + f1 * (ny - lo), lo + f2 * (ny - lo)))
    assert info_width(ny, l=l1).width_bits <= info_width(ny, l=l2).width_bits + 1e-12


def test_large_space_logdomain_is_finite():
    for ny in (1 << 10, 1 << 20, 1 << 30):
        for l in (1.0, 10.0, ny / 2, float(ny)):
            w = info_width(ny, l=l).width_bits
            assert math.isfinite(w) and 0 <= w <= math.log2(ny) + 1e-12
