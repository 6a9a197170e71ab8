"""Scalar hyperbolic trigonometry and strip-model transition functions.

Everything here works on Python floats. Identities are evaluated in forms
that keep relative accuracy for very short sides and do not overflow for
sides up to several hundred.
"""
from __future__ import annotations

import math

from .errors import DomainError

__all__ = [
    "pentagon_side",
    "hexagon_opposite",
    "sec_integral",
    "gd",
    "lambert_bound",
    "log_sinh",
    "log_cosh",
    "hex_collar_radius",
    "surface_collar_radius",
    "standard_collar_radius",
]

_HALF_PI = 0.5 * math.pi
# above this, cosh/sinh are replaced by their exponential asymptotics
_BIG = 350.0


def _sinh(x: float) -> float:
    if abs(x) < 1e-8:
        return x + x * x * x / 6.0
    return math.sinh(x)


def log_sinh(x: float) -> float:
    """Return ``ln sinh(x)`` for ``x > 0`` without overflow."""
    if x <= 0:
        raise DomainError(f"log_sinh needs x > 0, got {x}")
    if x > 20.0:
        return x - math.log(2.0) + math.log1p(-math.exp(-2.0 * x))
    return math.log(_sinh(x))


def log_cosh(x: float) -> float:
    """Return ``ln cosh(x)`` without overflow."""
    x = abs(x)
    return x - math.log(2.0) + math.log1p(math.exp(-2.0 * x))


def _acosh_from_excess(u: float) -> float:
    # acosh(1 + u) for u >= 0, accurate when u is tiny
    return 2.0 * math.asinh(math.sqrt(0.5 * u))


def _check_length(name: str, x: float) -> float:
    x = float(x)
    if not (x > 0.0) or math.isinf(x):
        raise DomainError(f"{name} must be a positive finite length, got {x}")
    return x


def pentagon_side(a: float, b: float) -> float:
    """Fifth side of a right-angled pentagon.

    Given two nonadjacent sides ``a`` and ``b``, the side opposite to the
    vertex between them satisfies ``cosh c = sinh a sinh b``.

    Parameters
    ----------
    a, b : float
        Positive side lengths.

    Returns
    -------
    float
        ``acosh(sinh a * sinh b)``.

    Raises
    ------
    DomainError
        If ``sinh a * sinh b < 1``; no such pentagon exists.
    """
    a = _check_length("a", a)
    b = _check_length("b", b)
    if a + b > _BIG:
        lp = log_sinh(a) + log_sinh(b)
        if lp > 30.0:
            # acosh(p) = ln(2p) - 1/(4p^2) - ...
            return math.log(2.0) + lp - 0.25 * math.exp(-2.0 * lp)
        p = math.exp(lp)
        return math.acosh(p)
    p = _sinh(a) * _sinh(b)
    if p < 1.0:
        # sinh(asinh 1)**2 may land one ulp below 1
        if p >= 1.0 - 1e-12:
            return 0.0
        raise DomainError(f"sinh(a)sinh(b) = {p} < 1: no right-angled pentagon")
    return _acosh_from_excess(p - 1.0)


def hexagon_opposite(a: float, b: float, c: float, allow_zero_a: bool = False) -> float:
    """Side of a right-angled hexagon opposite the free side ``a``.

    The free sides ``a, b, c`` are pairwise nonadjacent; the returned side
    satisfies ``cosh l = (cosh b cosh c + cosh a) / (sinh b sinh c)``.

    We evaluate ``cosh l - 1 = (cosh(b - c) + cosh a) / (sinh b sinh c)``,
    which has no cancellation, and switch to logarithms for long sides.
    With ``allow_zero_a`` the side ``a`` may be 0 (an ideal vertex pair,
    as for a cusp); the formula is continuous there.
    """
    a = 0.0 if (allow_zero_a and a == 0) else _check_length("a", a)
    b = _check_length("b", b)
    c = _check_length("c", c)
    if max(a, b, c, abs(b - c)) > _BIG or min(b, c) < 1e-300:
        lnum = _logaddexp(log_cosh(b - c), log_cosh(a))
        lu = lnum - log_sinh(b) - log_sinh(c)
        if lu > 60.0:
            # 2 asinh(sqrt(u/2)) = ln(2u) + O(1/u)
            return math.log(2.0) + lu
        return _acosh_from_excess(math.exp(lu))
    u = (math.cosh(b - c) + math.cosh(a)) / (_sinh(b) * _sinh(c))
    return _acosh_from_excess(u)


def _logaddexp(x: float, y: float) -> float:
    hi, lo = (x, y) if x >= y else (y, x)
    return hi + math.log1p(math.exp(lo - hi))


def sec_integral(y: float) -> float:
    """Integral of ``sec`` from 0 to ``y``, i.e. ``ln tan(y/2 + pi/4)``.

    This converts a height in the hyperbolic strip model to hyperbolic
    distance from the core geodesic. Defined for ``|y| < pi/2``.
    """
    y = float(y)
    if not abs(y) < _HALF_PI:
        raise DomainError(f"sec_integral needs |y| < pi/2, got {y}")
    return math.asinh(math.tan(y))


def gd(x: float) -> float:
    """Gudermannian function, the inverse of :func:`sec_integral`.

    Accepts ``x = +-inf`` and returns ``+-pi/2``.
    """
    x = float(x)
    if math.isinf(x):
        return math.copysign(_HALF_PI, x)
    return 2.0 * math.atan(math.tanh(0.5 * x))


def lambert_bound(r: float, lgamma: float) -> float:
    """Upper bound ``tanh r / tanh l`` for ``cosh d(p, gamma)``.

    In a Lambert quadrilateral with a side of length ``l`` on ``gamma`` and
    the opposite side of length at most ``r``, the far vertex ``p`` satisfies
    ``cosh d(p, gamma) tanh l <= tanh r``.
    """
    r = _check_length("r", r) if not math.isinf(r) else r
    lgamma = _check_length("lgamma", lgamma)
    return math.tanh(r) / math.tanh(lgamma)


def _asinh_ratio(delta: float, s: float) -> float:
    # asinh(delta / sinh(s)) for s > 0 without overflow in sinh
    if s > _BIG:
        return math.asinh(2.0 * delta * math.exp(-s))
    return math.asinh(delta / _sinh(s))


def hex_collar_radius(delta: float, length: float) -> float:
    """Reduced collar radius of a hexagon neck, ``asinh(delta / sinh l)``."""
    return _asinh_ratio(delta, _check_length("length", length))


def surface_collar_radius(delta: float, length: float) -> float:
    """Reduced collar radius of a closed geodesic, ``asinh(delta / sinh(l/2))``."""
    return _asinh_ratio(delta, 0.5 * _check_length("length", length))


def standard_collar_radius(length: float) -> float:
    """Standard collar radius ``M_l = asinh(1 / sinh(l/2))``."""
    return surface_collar_radius(1.0, length)
