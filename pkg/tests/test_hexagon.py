import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypgraft import ConfigError, GeometryError, hexagon, lorentz

sides = st.floats(0.05, 5.0)


@settings(max_examples=100, deadline=None)
@given(sides, sides, sides)
def test_solution_satisfies_hexagon_rule(a, b, c):
    h = hexagon.solve_hexagon(a, b, c)
    assert max(h.residuals()) <= 1e-12


@settings(max_examples=50, deadline=None)
@given(st.floats(0.05, 3.0), st.floats(0.05, 3.0), st.floats(0.05, 3.0))
def test_realization_closes(a, b, c):
    h = hexagon.solve_hexagon(a, b, c)
    real = hexagon.realize(h)
    # rounding in the walk grows like the product of the boost norms
    assert real.closure <= 1e-14 * math.exp(sum(h.cycle_lengths()))


def test_neck_frozen_value():
    # mpmath, 50 digits: a = c = 1, b = 2
    n = hexagon.nonside_neck(hexagon.solve_hexagon(1, 2, 1), "b")
    assert n.length == pytest.approx(1.08637385300999085, rel=1e-12)
    assert n.feet[0] == n.feet[1] == 1.0


@settings(max_examples=50, deadline=None)
@given(sides, sides, sides)
def test_neck_against_oracle(a, b, c):
    n = hexagon.nonside_neck(hexagon.solve_hexagon(a, b, c), "b")
    ca, cc = mp.cosh(a), mp.cosh(c)
    # sinh x+ / sinh x- = cosh a / cosh c with x+ + x- = b
    xp = mp.findroot(lambda x: mp.sinh(x) * cc - mp.sinh(b - x) * ca, b / 2)
    ell = mp.asinh(ca / mp.sinh(xp))
    assert n.length == pytest.approx(float(ell), rel=1e-9)
    assert n.feet[0] == pytest.approx(float(xp), rel=1e-9)


def test_neck_is_the_common_perpendicular_length():
    h = hexagon.solve_hexagon(0.7, 1.3, 2.1)
    real = hexagon.realize(h)
    n = hexagon.nonside_neck(h, "b")
    frame = real.neck_frame("Nb")
    end = lorentz.fermi_point(frame, np.array([n.length]), np.array([0.0]))
    # the far end lies on side B at distance y+ from its start toward c
    fB = real.frames[hexagon.CYCLE.index("B")]
    u, t = lorentz.fermi_coords(fB, end)
    assert abs(t[0]) < 1e-9
    assert h.side("B") - u[0] == pytest.approx(n.opposite_feet[0], abs=1e-9) or \
        u[0] == pytest.approx(n.opposite_feet[0], abs=1e-9)


def test_hexagon_round_trip():
    h = hexagon.solve_hexagon(0.3, 1.0, 4.0)
    assert hexagon.RAHexagon.from_dict(h.to_dict()) == h
    bad = h.to_dict()
    bad["determined"][0] += 1.0
    with pytest.raises(ConfigError):
        hexagon.RAHexagon.from_dict(bad)


def test_thick_thin_on_short_side():
    h = hexagon.solve_hexagon(1e-4, 2.0, 2.0)
    dec = hexagon.thick_thin(h)
    assert [n.label for n in dec.necks] == ["a"]
    lo, hi = dec.side_length_interval
    assert lo > 0 and hi < math.inf
    assert dec.min_separation == math.inf


def test_thick_thin_rejects_touching_necks():
    h = hexagon.solve_hexagon(1e-4, 8.0, 8.0)
    touching = [hexagon.side_neck(h, "a"), hexagon.nonside_neck(h, "a")]
    with pytest.raises(GeometryError):
        hexagon.thick_thin(h, necks=touching)


def test_select_necks_extra_sides():
    h = hexagon.solve_hexagon(1.0, 1.5, 1.2)
    labels = [n.label for n in hexagon.select_necks(h, extra_sides=["a", "b"])]
    assert labels == ["a", "b"]
    with pytest.raises(ConfigError):
        hexagon.select_necks(h, extra_sides=["a", "C"])


def test_distortion_bound_constants():
    d = hexagon.distortion_bound(2.0, 0.1)
    x_min = math.asinh(1 / math.sinh(0.1))
    assert d["M1"] == pytest.approx(math.sqrt(1 + math.cosh(2.0)))
    assert d["M2"] == pytest.approx(math.sqrt(2 * math.cosh(2.0)) / math.tanh(x_min))
    assert d["M"] == max(d["M1"], d["M2"], d["M3"])


def test_neck_distortion_refuses_adjacent_neck():
    hp, hq = hexagon.solve_hexagon(1.0, 0.01, 5.0), hexagon.solve_hexagon(1.5, 0.01, 5.0)
    with pytest.raises(ConfigError):
        hexagon.neck_distortion(hp, hq, "Na")
    ratio, disp, M = hexagon.neck_distortion(hp, hq, "b")
    assert 1 / M <= ratio <= M


def test_hexagon_map_identity_and_continuity():
    h = hexagon.solve_hexagon(0.5, 3.0, 3.0)
    hm = hexagon.hexagon_map(h, h)
    assert hm.distortion()["K"] == pytest.approx(1.0, abs=1e-9)
    real = hexagon.realize(h)
    for k, ell in enumerate(h.cycle_lengths()):
        p = lorentz.fermi_point(real.frames[k], np.array([0.5 * ell]), np.array([0.2]))
        assert np.allclose(hm(p), p, atol=1e-9)


def test_hexagon_map_changes_one_side_only():
    with pytest.raises(ConfigError):
        hexagon.hexagon_map(hexagon.solve_hexagon(1, 2, 3), hexagon.solve_hexagon(2, 3, 3))
