import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conecount.counts import m_fast, mprime
from conecount.hyperbola import (
    quadratic_partition,
    sandwich,
    telescope_constant,
    xi_main_term,
    xi_sum,
)


def test_partition_examples():
    assert quadratic_partition(10**8).L == 10
    assert quadratic_partition(16).L == 2
    assert quadratic_partition(1).L == 1
    assert quadratic_partition(16).samples == [1, 4]


@given(st.integers(1, 10**12))
@settings(max_examples=200, deadline=None)
def test_partition_eighth_power_bracketing(B):
    L = quadratic_partition(B).L
    assert (L - 1) ** 8 < B <= L**8


def test_xi_examples():
    assert xi_sum(1) == 0  # L = 1: empty sum
    assert xi_sum(16) == m_fast(1, 4) - m_fast(1, 1)


def test_xi_resummation():
    for B in (10**4, 5 * 10**4):
        L = quadratic_partition(B).L
        Z = math.isqrt(B)
        first = sum(m_fast(l * l, Z // (l * l)) for l in range(1, L))
        second = sum(m_fast(l * l, Z // ((l + 1) * (l + 1))) for l in range(1, L))
        assert xi_sum(B) == first - second


@pytest.mark.parametrize("B", [16, 10**4, 10**5])
def test_sandwich(B):
    s = sandwich(B)
    assert s.lower <= s.exact <= s.upper
    assert s.exact == mprime(B)


@given(st.integers(16, 30000))
@settings(max_examples=30, deadline=None)
def test_sandwich_random(B):
    s = sandwich(B)
    assert s.lower <= s.exact <= s.upper


def test_sandwich_tiny_b():
    for B in range(1, 16):
        s = sandwich(B)
        assert s.lower <= s.exact <= s.upper


def test_telescope():
    assert telescope_constant(2) == pytest.approx(15.0 / 16.0 - 4.0 * math.log(2.0), abs=1e-14)
    with pytest.raises(ValueError):
        telescope_constant(1)


def test_telescope_cauchy():
    # telescope(L) = c1 + 8/L + O(1/L^2), so consecutive decades move by ~8/L
    t3 = telescope_constant(1000)
    t4 = telescope_constant(10**4)
    gap = 1.0 / 1000 - 1.0 / 10**4
    assert abs(t3 - t4) <= 9.0 * gap
    assert abs(t3 - t4) >= 7.0 * gap  # the O(1/L) rate is really there
    assert math.isfinite(telescope_constant(10**4))


def test_xi_main_term_example():
    m = xi_main_term(16)
    assert m.direct == pytest.approx(360.0, abs=1e-9)
    assert m.split == pytest.approx(360.0, abs=1e-9)
    z = xi_main_term(1)
    assert z.direct == 0.0


@pytest.mark.parametrize("B", [10**4, 10**6])
def test_xi_main_split_agreement(B):
    m = xi_main_term(B)
    assert abs(m.direct - m.split) <= 1e-9 * abs(m.direct)


@pytest.mark.parametrize("B", [10**4, 10**6])
def test_xi_vs_main_term_deviation(B):
    dev = abs(2.0 * xi_sum(B) - 2.0 * xi_main_term(B).direct) / (
        B ** (7.0 / 8.0) * math.log(B) ** 2
    )
    assert dev <= 5.0
