import math

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypgraft import ConfigError, DomainError, Unsupported, pants
from hypgraft.hyptrig import gd


def genus_two():
    return pants.SurfaceFN(
        [("c1", "c1", "c2"), ("c3", "c3", "c2")],
        {"c1": pants.CurveFN(0.5), "c2": pants.CurveFN(1.0, twist=0.3), "c3": pants.CurveFN(1.5)},
    )


@settings(max_examples=100, deadline=None)
@given(st.floats(0.1, 10), st.floats(0.1, 10), st.floats(0.1, 10))
def test_seams_are_doubled_hexagon_sides(l1, l2, l3):
    p = pants.pants_from_boundary(l1, l2, l3)
    assert p.hexagon.free == (l1 / 2, l2 / 2, l3 / 2)
    assert p.seam_lengths == p.hexagon.determined


def test_one_cusp_seam_and_unsupported_seams():
    p = pants.pants_from_boundary(2.0, 0.0, 2.0)
    assert p.cusps == (1,)
    # the seam between the two geodesic boundaries is still defined
    expected = mp.acosh((mp.cosh(1) * mp.cosh(1) + 1) / (mp.sinh(1) ** 2))
    assert p.seam(1) == pytest.approx(float(expected), rel=1e-12)
    with pytest.raises(Unsupported):
        p.seam(0)


def test_pants_round_trip_and_validation():
    p = pants.pants_from_boundary(1, 2, 3)
    assert pants.PantsData.from_dict(p.to_dict()) == p
    with pytest.raises(DomainError):
        pants.pants_from_boundary(1, -1, 2)


@settings(max_examples=100, deadline=None)
@given(st.floats(1e-5, 5.0))
def test_standard_collar_against_oracle(ell):
    c = pants.standard_collar(ell)
    M = mp.asinh(1 / mp.sinh(mp.mpf(ell) / 2))
    rho = 2 * mp.atan(mp.tanh(M / 2))
    assert c.radius == pytest.approx(float(M), rel=1e-12)
    assert c.modulus == pytest.approx(float(2 * rho / ell), rel=1e-12)
    assert math.pi / ell - 1 <= c.modulus <= math.pi / ell


def test_reduced_collar_boundary_tends_to_two_delta():
    for delta in (0.05, 0.1, 0.25):
        assert pants.collar_boundary_length(1e-6, delta) == pytest.approx(2 * delta, rel=1e-6)


def test_boundary_arc_constant():
    C = pants.boundary_arc_shortening_constant(2.0, 0.1)
    assert C == pytest.approx(23.617, abs=2e-3)
    assert pants.boundary_length_max(2.0, 0.1) == pytest.approx(2.00723, abs=2e-5)


def test_surface_validation():
    s = genus_two()
    s.validate()
    assert len(s.edges()) == 3
    with pytest.raises(ConfigError):
        pants.SurfaceFN([("c1", "c1", "c1")], {"c1": pants.CurveFN(1.0)})
    with pytest.raises(ConfigError):
        pants.SurfaceFN([("c1", "c2", "c3")], {"c1": pants.CurveFN(1.0), "c2": pants.CurveFN(1.0)})
    assert pants.SurfaceFN.from_dict(s.to_dict()).to_dict() == s.to_dict()


def _modulus(ell, delta):
    return 2 * gd(math.asinh(delta / math.sinh(ell / 2))) / ell


@settings(max_examples=60, deadline=None)
@given(st.floats(0.01, 2.0), st.floats(0.0, 100.0))
def test_pinch_solves_modulus_equation(ell, L):
    s = genus_two().with_lengths({"c1": ell})
    l = pants.pinch_lengths(s, ["c1"], {"c1": L})["c1"]
    target = (2 * gd(math.asinh(0.1 / math.sinh(ell / 2))) + 2 * L) / ell
    assert abs(_modulus(l, 0.1) - target) <= 1e-10 * target
    assert l <= ell


def test_pinch_rejects_long_curves_and_infinite_grafting():
    s = genus_two()
    with pytest.raises(DomainError):
        pants.pinch_lengths(s.with_lengths({"c3": 3.0}), ["c3"], {"c3": 1.0})
    with pytest.raises(DomainError):
        pants.pinch_lengths(s, ["c1"], {"c1": math.inf})


def test_global_eta():
    eta = pants.global_eta(2.0, 0.1)
    c = eta.constants
    assert c["K"] == pytest.approx(2.161, abs=5e-3)
    assert eta(0.0) == 0.0
    values = [eta(d) for d in (1, 10, 100, 1000)]
    assert values == sorted(values)
    assert values[-1] > 0
