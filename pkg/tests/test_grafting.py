import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from hypgraft import ConfigError, DomainError, grafting, pants
from hypgraft.grafting import StraightAnnulus, truncate


def test_truncation_examples():
    a = truncate(StraightAnnulus(2, 0, 9, lo_closed=True), 2)
    assert (a.lo, a.hi, a.lo_closed) == (0, 5, True)
    b = truncate(StraightAnnulus(1, -3, 3), 2)
    assert (b.lo, b.hi) == (-1, 1)
    assert truncate(StraightAnnulus(1, -1, 1), 5).is_empty


def test_truncation_of_infinite_ends():
    a = truncate(StraightAnnulus(1, -math.inf, 0, hi_closed=True), 3)
    assert a.lo == -math.inf and a.hi == 0


@settings(max_examples=300, deadline=None)
@given(st.floats(0.1, 5), st.floats(-100, 100), st.floats(-100, 100),
       st.floats(0, 1), st.floats(0, 1), st.floats(0, 20))
def test_quasimonotone(circ, x, y, u, v, D):
    lo, hi = min(x, y), max(x, y)
    assume(hi > lo)
    blo = max(lo, lo + (hi - lo) * min(u, v))
    bhi = min(hi, lo + (hi - lo) * max(u, v))
    assume(bhi > blo)
    A, B = StraightAnnulus(circ, lo, hi), StraightAnnulus(circ, blo, bhi)
    assert grafting.truncation_quasimonotone_check(A, B, D)


def test_quasimonotone_needs_open_nested_annuli():
    with pytest.raises(ConfigError):
        grafting.truncation_quasimonotone_check(
            StraightAnnulus(1, 0, 5, lo_closed=True), StraightAnnulus(1, 1, 2), 1)
    with pytest.raises(ConfigError):
        grafting.truncation_quasimonotone_check(StraightAnnulus(1, 0, 1), StraightAnnulus(1, 0, 2), 1)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.01, 2.0), st.floats(0, 50))
def test_extended_collar_and_coordinates(ell, L):
    ec = grafting.extended_collar(ell, L)
    assert ec.omega == pytest.approx(math.pi / (math.pi + 2 * L))
    assert ec.rho_prime < math.pi / 2
    for y in (-L, 0.0, 0.5 * ec.rho):
        q = grafting.to_rescaled(ec, (0.3, y))
        back = grafting.from_rescaled(ec, q)
        assert back[0] == pytest.approx(0.3) and back[1] == pytest.approx(y, abs=1e-12 * (1 + L))
    assert ec.annulus().modulus == pytest.approx((2 * ec.rho + 2 * L) / ell)


def test_infinite_grafting_is_a_cusp():
    ec = grafting.extended_collar(0.5, math.inf)
    assert ec.omega == 0 and ec.rho_prime == math.pi / 2
    with pytest.raises(DomainError):
        grafting.to_rescaled(ec, (0, 0))
    iv = grafting.grafted_length_bounds(0.5, math.inf, 2.0)
    assert iv.cusp and iv.hi == 0


@settings(max_examples=100, deadline=None)
@given(st.floats(0.01, 2.0), st.floats(0, 1e3), st.floats(0.01, 1e3))
def test_length_bounds_monotone(ell, L, dL):
    a = grafting.grafted_length_bounds(ell, L, 2.0)
    b = grafting.grafted_length_bounds(ell, L + dL, 2.0)
    assert 0 < a.lo < a.hi and b.hi < a.hi


def test_truncation_distance():
    N = grafting.N_constant(2.0)
    assert grafting.M_constant(2.0) == pytest.approx(math.log(N + 1))
    assert grafting.truncation_distance_lower(3.0, 2.0) == 0.0
    assert grafting.truncation_distance_lower(1e6, 2.0) > 0
    with pytest.raises(DomainError):
        grafting.truncation_distance_lower(2.0, 2.0)


def test_shat_relation():
    assert grafting.shat_relation(0.0, 0.5, 1.0) == 0.0
    assert grafting.shat_relation(0.7, 0.5, math.inf) == 0.7
    # at L = 0 the map is the identity up to the rho scaling of gd
    s = grafting.shat_relation(0.2, 0.5, 0.0)
    rho = grafting.extended_collar(0.5, 0.0).rho
    assert math.tan(grafting.gd(s)) == pytest.approx(math.tan(math.pi / (2 * rho) * grafting.gd(0.2)))


def test_grafting_data_round_trip():
    s = pants.SurfaceFN(
        [("c1", "c1", "c2"), ("c3", "c3", "c2")],
        {"c1": pants.CurveFN(0.5), "c2": pants.CurveFN(1.0), "c3": pants.CurveFN(1.5)},
    )
    g = grafting.GraftingData(s, {"c1": math.inf, "c2": 3.0}, {"c1": "+"})
    d = g.to_dict()
    assert d["L"]["c1"] == "inf"
    g2 = grafting.GraftingData.from_dict(d)
    assert g2.L == g.L and g2.sides == {"c1": "+", "c2": "both"}
    with pytest.raises(ConfigError):
        grafting.GraftingData(s, {"zz": 1.0})
