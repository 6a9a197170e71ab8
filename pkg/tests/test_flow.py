import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from hypgraft import ConfigError, DomainError, flow


def test_h_and_phi():
    assert flow.h_default(0.5) == 1.0
    assert flow.h_default(1.0) == math.inf
    assert flow.h_inv_default(math.inf) == 1.0
    assert [flow.phi_default(x) for x in (0.5, 1.0, 1.5, 2.0, 3.0)] == [1.0, 1.0, 0.5, 0.0, 0.0]


@settings(max_examples=200, deadline=None)
@given(st.floats(0, 1), st.floats(1e-3, 1.0), st.floats(1e-3, 1.0))
def test_grafting_length(t, ell, sys):
    assume(ell >= sys)
    L = flow.grafting_length(t, ell, sys)
    assert L >= 0
    if ell >= 2 * min(sys, 0.1):
        assert L == 0.0
    assert flow.grafting_length(0.0, ell, sys) == 0.0


def test_long_curves_untouched():
    assert flow.grafting_length(0.7, 0.5, 0.5) == 0.0
    img = flow.h_t_annulus(0.5, 0.7, 0.5, (0.1, 0.3))
    assert img.region == "identity" and img.s == 0.3


@settings(max_examples=100, deadline=None)
@given(st.floats(1e-3, 0.1), st.floats(0.01, 0.99))
def test_subannulus_order(ell, t):
    b = flow.subannuli_bounds(ell, t, ell)
    assert 0 < b.R_I < b.R_II < b.M
    assert b.rho_I < b.rho_II
    assert b.Delta_I < b.Delta_II
    assert b.delta_I < b.rho_II


@settings(max_examples=100, deadline=None)
@given(st.floats(1e-3, 0.2), st.floats(0, 0.999), st.floats(0.2, 1.0))
def test_h_t_continuous(ell, t, frac):
    assert max(flow.annulus_boundary_mismatch(ell, t, ell * frac).values()) <= 1e-10


@settings(max_examples=100, deadline=None)
@given(st.floats(1e-3, 0.1), st.floats(0.05, 0.99), st.floats(0, 0.999))
def test_h_t_monotone_in_s(ell, t, u):
    b = flow.subannuli_bounds(ell, t, ell)
    s1 = u * b.M * 0.999
    s2 = min(s1 + 0.01, 0.999 * b.M)
    assume(s2 > s1)
    y1 = flow.h_t_annulus(ell, t, ell, (0, s1)).y
    y2 = flow.h_t_annulus(ell, t, ell, (0, s2)).y
    assert y1 < y2


def test_pinched_inner_annulus_leaves_finite_part():
    with pytest.raises(DomainError):
        flow.h_t_annulus(0.05, 1.0, 0.05, (0.0, 0.1))


@settings(max_examples=200, deadline=None)
@given(st.floats(-5, 5), st.floats(0.1, 5), st.floats(-5, 5), st.floats(0.1, 5), st.floats(0, 1))
def test_stretch_inverse_and_translation(a, w, a2, w2, u):
    b, b2 = a + w, a2 + w2
    y = a + u * w
    for make in (flow.stretch, flow.stretch_star):
        s = make(a, b, a2, b2)
        z = s(y)
        assert a2 - 1e-12 <= z <= b2 + 1e-12
        assert s.inverse(min(max(z, a2), b2)) == pytest.approx(y, abs=1e-9)
        assert make(0.0, w, 0.0, w2)(y - a) == pytest.approx(z - a2, abs=1e-12)


def test_stretch_to_infinity():
    s = flow.stretch(0.0, 1.0, 0.0, math.inf)
    assert s(1.0) == math.inf and s(0.5) == pytest.approx(2.0)
    with pytest.raises(DomainError):
        flow.stretch_star(0.0, 1.0, 0.0, math.inf)


def test_cusp_map():
    cb = flow.cusp_bounds(0.05)
    assert cb.mu_I == pytest.approx(math.log(20))
    assert flow.h_t_cusp(0.05, 0.5, (0.1, 0.5)) == (0.1, 0.5)
    x, y = flow.h_t_cusp(0.05, 0.5, (0.1, cb.mu_I + 1))
    assert y == pytest.approx(cb.mu_I + 2)
    # continuity at mu_I
    _, below = flow.h_t_cusp(0.05, 0.5, (0, cb.mu_I - 1e-12))
    assert below == pytest.approx(cb.mu_I + 1.0, abs=1e-9)


def test_classify_limit():
    cusp = flow.classify_limit(flow.LimitState("cusp", theta=0.0))
    assert cusp.tag == "N" and cusp.xi == math.inf
    assert flow.classify_limit(flow.LimitState("cusp", theta=math.pi)).xi == pytest.approx(0.0, abs=1e-15)
    boundary = flow.classify_limit(flow.LimitState("collar", s=2.0, R_I=2.0))
    assert boundary.tag == "N"
    inner = flow.classify_limit(flow.LimitState("collar", s=0.5, R_I=2.0))
    assert inner.tag == "A" and inner.note["distance"] == 0.5
    assert inner.axis == pytest.approx((-math.exp(0.5), math.exp(0.5)))
    deg = flow.classify_limit(flow.LimitState("collar", s=1.5, R_I=2.0, curve="degenerate"))
    assert deg.tag == "A'" and deg.note["distance"] > 1.5
    with pytest.raises(ConfigError):
        flow.classify_limit(flow.LimitState("collar", s=3.0, R_I=2.0))


def test_trace_rows():
    rows = flow.trace_rows(0.05, 0.05, 5)
    assert [r["t"] for r in rows] == [0, 0.25, 0.5, 0.75, 1.0]
    assert rows[0]["L_t"] == 0.0 and rows[-1]["L_t"] == math.inf
    assert all(r["R_I"] == rows[0]["R_I"] for r in rows)
