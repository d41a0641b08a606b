import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conecount.closed_forms import (
    F_closed,
    F_float,
    G_value,
    S_brute,
    harmonic_A,
    harmonic_B,
    s_brute_prefix,
    s_parts,
    tu_sums,
)
from conecount.errors import ResourceLimitError


def test_harmonic_values():
    assert harmonic_A(0) == 0
    assert harmonic_A(1) == 1
    assert harmonic_A(3) == Fraction(11, 6)
    assert harmonic_B(0) == 0
    assert harmonic_B(2) == Fraction(5, 4)
    assert harmonic_B(3) == Fraction(49, 36)


@given(st.integers(1, 400))
@settings(max_examples=50, deadline=None)
def test_harmonic_recurrences(n):
    assert harmonic_A(n) - harmonic_A(n - 1) == Fraction(1, n)
    assert harmonic_B(n) - harmonic_B(n - 1) == Fraction(1, n * n)


def test_f_values():
    assert F_closed(0) == 0
    assert F_closed(1) == 6
    assert F_closed(2) == Fraction(63, 2)


def test_f_float_tracks_exact():
    for n in (1, 2, 17, 60, 200):
        exact = float(F_closed(n))
        assert abs(F_float(n) - exact) <= 1e-9 * max(1.0, abs(exact))


def test_g_values():
    assert G_value(0.5) == pytest.approx(-(33 - math.pi**2) / 8, abs=1e-12)
    assert G_value(1.0) == pytest.approx(6 - (33 - math.pi**2) / 2, abs=1e-12)
    assert G_value(1e-7) == pytest.approx(0.0, abs=1e-12)  # t -> 0+ limit
    with pytest.raises(ValueError):
        G_value(0.0)


def test_s_brute_small():
    assert S_brute(1) == 6
    assert S_brute(2) == Fraction(63, 2)
    assert S_brute(5) == F_closed(5)


def test_s_brute_equals_f_up_to_60():
    prefix = s_brute_prefix(60)
    for n in range(61):
        assert prefix[n] == F_closed(n), f"triple-sum identity broken at n = {n}"


def test_s_brute_cap():
    with pytest.raises(ResourceLimitError):
        S_brute(101)


def test_s_parts_n1():
    assert s_parts(1, "closed") == (9, 0, 1)
    assert s_parts(1, "brute") == (9, 0, 1)


@pytest.mark.parametrize("n", [1, 2, 3, 7, 13, 25, 40])
def test_s_parts_brute_equals_closed(n):
    brute = s_parts(n, "brute")
    closed = s_parts(n, "closed")
    assert brute == closed
    # recombination with the full triple sum
    assert brute[0] + 6 * brute[1] - 3 * brute[2] == F_closed(n)


def test_tu_n1_all_zero():
    assert tu_sums(1, "closed") == (0, 0, 0, 0, 0)
    assert tu_sums(1, "brute") == (0, 0, 0, 0, 0)


@pytest.mark.parametrize("n", [2, 3, 5, 10, 24, 40])
def test_tu_brute_equals_closed(n):
    assert tu_sums(n, "brute") == tu_sums(n, "closed")


def test_mode_validation():
    with pytest.raises(ValueError):
        s_parts(3, "fast")
    with pytest.raises(ValueError):
        tu_sums(3, "fast")
    with pytest.raises(ResourceLimitError):
        tu_sums(201, "brute")


def test_g_bound_on_log_grid():
    # |G(t)| <= 36 min(t, t^2); the ratio tends to about 35.57 just below
    # integers, so the empirical constant has only a little slack.
    import numpy as np

    ts = np.concatenate(
        [np.logspace(-6, 4, 2000), np.arange(1, 10001) - 1e-9, np.arange(1, 10001) + 1e-9]
    )
    ts = ts[(ts > 0) & (ts <= 1e4)]
    worst = max(abs(G_value(float(t))) / min(t, t * t) for t in ts)
    assert worst <= 36.0
    assert worst > 30.0  # the constant really is of this size
