import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypgraft import BudgetError, ConfigError, DomainError, chabauty
from hypgraft.chabauty import ElementarySubgroup, Isometry

points = st.builds(complex, st.floats(-3, 3), st.floats(0.2, 3))


def mobius(m, z):
    return (m[0] * z + m[1]) / (m[2] * z + m[3])


@settings(max_examples=100, deadline=None)
@given(st.floats(0.01, 2 * math.pi - 0.01), points)
def test_rotation_fixes_centre(theta, p):
    g = chabauty.rotation(theta, p)
    assert abs(g.apply(p) - p) < 1e-9 * (1 + abs(p))
    c = chabauty.classify_isometry(g)
    assert c.kind == "elliptic"
    assert c.angle == pytest.approx(theta, abs=1e-7)
    assert abs(c.center - p) < 1e-7


def test_rotation_is_counterclockwise():
    # a quarter turn about i moves the direction of inf toward the left
    g = chabauty.rotation(math.pi / 2)
    assert g.apply(math.inf) == pytest.approx(-1.0)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.05, 5), st.floats(-5, 5), st.floats(0.1, 5))
def test_translation_classification(tau, u, w):
    axis = (u, u + w)
    c = chabauty.classify_isometry(chabauty.translation(tau, axis))
    assert c.kind == "hyperbolic"
    assert c.translation_length == pytest.approx(tau, rel=1e-8)
    assert c.axis == pytest.approx(axis, rel=1e-6, abs=1e-6)


def test_displacement_formula():
    g = chabauty.translation(1.3)
    d = chabauty.displacement(g.array[None, :])[0]
    assert d == pytest.approx(1.3)
    z = 0.3 + 2j
    gz = mobius(g.array, z)
    expected = math.acosh(1 + abs(z - gz) ** 2 / (2 * z.imag * gz.imag))
    assert chabauty.displacement(g.array[None, :], z)[0] == pytest.approx(expected)


def test_parabolic_and_identity():
    assert chabauty.classify_isometry(chabauty.parabolic(1.0)).xi == math.inf
    assert chabauty.classify_isometry(chabauty.parabolic(1.0, 2.0)).xi == pytest.approx(2.0)
    assert chabauty.classify_isometry(chabauty.IDENTITY).kind == "identity"


def test_isometry_normalization_and_round_trip():
    g = Isometry.from_matrix([-2, 0, 0, -0.5])
    assert g.trace > 0 and g.m11 * g.m22 - g.m12 * g.m21 == pytest.approx(1.0)
    assert Isometry.from_dict(g.to_dict()) == g
    assert (g @ g.inverse()).array == pytest.approx(chabauty.IDENTITY.array)


def test_subgroup_validation():
    with pytest.raises(ConfigError):
        ElementarySubgroup("k", p=1j, n=1)
    with pytest.raises(ConfigError):
        ElementarySubgroup("a'", axis=(0.0, math.inf), t=1.0, p=1 + 1j)
    with pytest.raises(ConfigError):
        ElementarySubgroup("Z")
    assert str(ElementarySubgroup("Trivial")) == "1"


def test_finite_rotation_group_sample():
    s = chabauty.sample_subgroup(ElementarySubgroup("k", p=1j, n=7), 3.0)
    assert len(s) == 7


def test_modular_group_words():
    S = Isometry.from_matrix([0, -1, 1, 0])
    T = Isometry.from_matrix([1, 1, 0, 1])
    s = chabauty.sample_subgroup([S, T], 3.0)
    assert len(s) == 66
    assert np.all(np.abs(s.elements - np.round(s.elements)) < 1e-9)


def test_budget():
    with pytest.raises(BudgetError):
        chabauty.sample_subgroup(ElementarySubgroup("A", axis=(0.0, math.inf)), 3.0, step=1e-7)


def test_distance_identifies_sign():
    a = chabauty.sample_subgroup(ElementarySubgroup("k", p=1j, n=4), 2.0)
    b = chabauty.GroupSample(2.0, -a.elements, "negated")
    assert chabauty.chabauty_distance(a, b) == 0.0
    with pytest.raises(ConfigError):
        chabauty.chabauty_distance(a, chabauty.sample_subgroup(ElementarySubgroup("Trivial"), 3.0))


@pytest.mark.parametrize("family", chabauty.FAMILIES)
def test_limit_families(family):
    rep = chabauty.limit_experiment(family, steps=6)
    assert rep["verdict"], rep["distances"]


def test_negative_radius():
    with pytest.raises(DomainError):
        chabauty.sample_subgroup(ElementarySubgroup("Trivial"), -1.0)
