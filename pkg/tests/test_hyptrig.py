import math

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypgraft import DomainError, hyptrig

lengths = st.floats(0.01, 20.0)


def oracle_opposite(a, b, c):
    a, b, c = mp.mpf(a), mp.mpf(b), mp.mpf(c)
    return mp.acosh((mp.cosh(b) * mp.cosh(c) + mp.cosh(a)) / (mp.sinh(b) * mp.sinh(c)))


# values computed once with mpmath at 50 digits and frozen
FROZEN_OPPOSITE = [
    ((1.0, 1.0, 1.0), 1.70491283235801369),
    ((0.1, 3.0, 3.0), 0.19956143505657724),
    ((0.5, 2.0, 2.0), 0.56136359875473),
]


@pytest.mark.parametrize("args,expected", FROZEN_OPPOSITE)
def test_opposite_frozen(args, expected):
    assert hyptrig.hexagon_opposite(*args) == pytest.approx(expected, rel=1e-12)


def test_pentagon_frozen():
    assert hyptrig.pentagon_side(1.0, 1.0) == pytest.approx(0.84745058129585137, rel=1e-12)


def test_lambert_frozen():
    assert hyptrig.lambert_bound(1.0, 0.1) == pytest.approx(7.64131112321055695, rel=1e-12)


@settings(max_examples=200, deadline=None)
@given(lengths, lengths, lengths)
def test_opposite_matches_oracle(a, b, c):
    assert hyptrig.hexagon_opposite(a, b, c) == pytest.approx(float(oracle_opposite(a, b, c)), rel=1e-11)


def test_opposite_long_sides_do_not_overflow():
    val = hyptrig.hexagon_opposite(800.0, 1.0, 1.0)
    assert val == pytest.approx(float(oracle_opposite(800, 1, 1)), rel=1e-12)


def test_opposite_zero_a_only_when_allowed():
    with pytest.raises(DomainError):
        hyptrig.hexagon_opposite(0.0, 1.0, 1.0)
    assert hyptrig.hexagon_opposite(0.0, 1.0, 1.0, allow_zero_a=True) == pytest.approx(
        float(oracle_opposite(0, 1, 1)), rel=1e-12)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.9, 10.0), st.floats(0.9, 10.0))
def test_pentagon_matches_oracle(a, b):
    expected = mp.acosh(mp.sinh(a) * mp.sinh(b))
    assert hyptrig.pentagon_side(a, b) == pytest.approx(float(expected), rel=1e-10, abs=1e-14)


def test_pentagon_rejects_small_sides():
    with pytest.raises(DomainError):
        hyptrig.pentagon_side(0.1, 0.1)


@settings(max_examples=200, deadline=None)
@given(st.floats(-15, 15))
def test_gd_inverts_sec_integral(x):
    assert hyptrig.sec_integral(hyptrig.gd(x)) == pytest.approx(x, abs=1e-8)


def test_gd_limits():
    assert hyptrig.gd(math.inf) == math.pi / 2
    assert hyptrig.gd(-math.inf) == -math.pi / 2
    with pytest.raises(DomainError):
        hyptrig.sec_integral(math.pi / 2)


@settings(max_examples=100, deadline=None)
@given(st.floats(1e-6, 50.0))
def test_log_sinh_cosh(x):
    assert hyptrig.log_sinh(x) == pytest.approx(float(mp.log(mp.sinh(x))), rel=1e-12, abs=1e-12)
    assert hyptrig.log_cosh(x) == pytest.approx(float(mp.log(mp.cosh(x))), rel=1e-12, abs=1e-14)


def test_collar_radii():
    assert hyptrig.standard_collar_radius(1.0) == pytest.approx(float(mp.asinh(1 / mp.sinh(0.5))), rel=1e-14)
    assert hyptrig.surface_collar_radius(0.25, 0.02) == pytest.approx(
        float(mp.asinh(mp.mpf(0.25) / mp.sinh(0.01))), rel=1e-14)
    assert hyptrig.hex_collar_radius(0.25, 0.01) == pytest.approx(3.91240611234767612, rel=1e-14)
