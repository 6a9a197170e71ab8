import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypgraft import DomainError, Unsupported, lens


def test_modular_orders_give_sphere():
    r = lens.lens_from_orders("2,3,inf")
    assert r.space.is_sphere and str(r.space) == "L(1,1) ≅ S^3"
    assert r.case == 2 and r.raw == (1, 1)


@pytest.mark.parametrize("orders,expected,case", [
    ((2, 5, "inf"), (3, 1), 2),
    ((3, 4, "inf"), (5, 2), 2),
    ((4, 4, "inf"), (2, 1), 3),
    ((7, 7, "inf"), (5, 1), 3),
    ((3, "inf", "inf"), (4, 1), 4),
    (("inf", "inf", "inf"), (1, 0), 5),
])
def test_cases(orders, expected, case):
    r = lens.lens_from_orders(orders)
    assert r.case == case
    assert lens.lens_equiv(r.space, lens.lens(*expected))


def test_rejections():
    with pytest.raises(DomainError):
        lens.lens_from_orders("2,2,inf")
    with pytest.raises(DomainError):
        lens.lens_from_orders("1,3,inf")
    with pytest.raises(DomainError):
        lens.lens_from_orders("2,3")
    with pytest.raises(Unsupported):
        lens.lens_from_orders("2,3,7")
    with pytest.raises(DomainError):
        lens.lens_from_orders("2,3,7")
    with pytest.raises(DomainError):
        lens.lens(6, 4)


@given(st.integers(2, 60), st.integers(2, 60))
def test_meridian_arithmetic_agrees(n, k):
    if n == k or 1 / n + 1 / k >= 1:
        return
    a = lens.lens_from_orders([n, k, math.inf]).space
    assert lens.lens_equiv(a, lens.meridian_arithmetic(n, k)["space"])
    # swapping the two cone points gives the same lens space
    assert lens.lens_equiv(a, lens.lens_from_orders([k, n, math.inf]).space)


@given(st.integers(2, 200), st.integers(-500, 500))
def test_canonical_representative(p, q):
    if math.gcd(p, q) != 1:
        return
    L = lens.lens(p, q)
    assert 0 <= L.q < p
    for q2 in (-q, pow(q, -1, p), -pow(q, -1, p)):
        assert lens.lens(p, q2) == L


def test_parse_orders():
    assert lens.parse_orders(" inf, 3 ,2") == (2, 3, math.inf)
    assert lens.LensSpace(0, 0).pi1_order == math.inf
