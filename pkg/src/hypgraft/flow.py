"""Grafting flow: time-dependent grafting lengths, the nested subannuli of
short collars and cusps, stretch maps and the homeomorphisms ``h_t``.

Collar points are given as ``(x, s)`` with ``s`` the distance to the core
geodesic before grafting. Images are reported in the conformal
coordinates ``S^1_l x [-L_t/2, rho_l)`` of the extended collar, where the
grafted cylinder of total length ``L_t`` occupies ``[-L_t/2, 0]`` on the
side containing the point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .chabauty import ElementarySubgroup, rotation
from .errors import ConfigError, DomainError
from .hyptrig import gd, sec_integral, standard_collar_radius

__all__ = [
    "h_default",
    "h_inv_default",
    "phi_default",
    "FlowParams",
    "grafting_length",
    "SubannulusBounds",
    "subannuli_bounds",
    "CuspBounds",
    "cusp_bounds",
    "Stretch",
    "stretch",
    "stretch_star",
    "HtImage",
    "h_t_annulus",
    "annulus_boundary_mismatch",
    "h_t_cusp",
    "LimitState",
    "classify_limit",
    "trace_rows",
]


def h_default(s: float) -> float:
    """``s / (1 - s)``, an increasing homeomorphism ``[0, 1] -> [0, inf]``."""
    if s >= 1.0:
        return math.inf
    return s / (1.0 - s)


def h_inv_default(y: float) -> float:
    if math.isinf(y):
        return 1.0
    return y / (1.0 + y)


def phi_default(x: float) -> float:
    """Bump equal to 1 on ``[0, 1]``, linear on ``[1, 2]``, 0 beyond."""
    return min(1.0, max(0.0, 2.0 - x))


@dataclass(frozen=True)
class FlowParams:
    epsilon: float = 0.1
    h: Callable[[float], float] = h_default
    h_inv: Callable[[float], float] = h_inv_default
    phi: Callable[[float], float] = phi_default
    delta0: float = 0.25

    def __post_init__(self):
        if not (0 < self.epsilon < 1):
            raise ConfigError("epsilon must lie in (0, 1)")
        if not (0 < self.delta0 <= 1):
            raise ConfigError("delta0 must lie in (0, 1]")


DEFAULT = FlowParams()


def grafting_length(t: float, length: float, sys: float, params: FlowParams = DEFAULT) -> float:
    """``L_t = h(t phi(l / min(sys, eps)))``.

    Zero for curves of length at least ``2 eps`` and infinite exactly when
    ``t = 1`` and the curve is a systole of length at most ``eps``.
    """
    if not (0.0 <= t <= 1.0):
        raise DomainError(f"t must lie in [0, 1], got {t}")
    if not (length > 0 and sys > 0):
        raise DomainError("lengths must be positive")
    minsys = min(sys, params.epsilon)
    return params.h(t * params.phi(length / minsys))


# ---------------------------------------------------------------------------
# subannuli


@dataclass(frozen=True)
class SubannulusBounds:
    length: float
    L_t: float
    M: float
    R_I: float
    R_II: float
    rho_I: float
    rho_II: float
    omega: float
    Delta_I: float
    Delta_II: float
    delta_I: float

    @property
    def infinite(self) -> bool:
        return math.isinf(self.L_t)


def subannuli_bounds(length: float, t: float, sys: float, params: FlowParams = DEFAULT) -> SubannulusBounds:
    """Radii of the inner and middle subannuli of a short collar and their
    images in the extended collar.

    ``R_I = asinh(delta0 max(0, 1 - l/2eps) / sinh(l/2))`` and ``R_II`` moves
    from ``R_I`` toward ``M_l`` as ``L_t`` grows. ``omega = pi/(pi + L_t)``
    rescales the extended collar to a strip of height ``pi``.
    """
    eps = params.epsilon
    if not (0 < length <= 2.0 * eps):
        raise DomainError(f"collar bounds need 0 < l <= 2 eps, got {length}")
    L_t = grafting_length(t, length, sys, params)
    M = standard_collar_radius(length)
    R_I = math.asinh(params.delta0 * max(0.0, 1.0 - length / (2.0 * eps)) / math.sinh(0.5 * length))
    hl = params.h_inv(L_t)
    R_II = R_I + (M - R_I) * 0.5 * hl
    rho_I, rho_II = gd(R_I), gd(R_II)
    if math.isinf(L_t):
        return SubannulusBounds(length, L_t, M, R_I, R_II, rho_I, rho_II, 0.0, math.inf, math.inf, -math.inf)
    omega = math.pi / (math.pi + L_t)
    Delta_II = sec_integral((0.5 * L_t + rho_II) * omega)
    Delta_I = (1.0 - 0.25 * hl) * Delta_II
    delta_I = gd(Delta_I) / omega - 0.5 * L_t
    return SubannulusBounds(length, L_t, M, R_I, R_II, rho_I, rho_II, omega, Delta_I, Delta_II, delta_I)


@dataclass(frozen=True)
class CuspBounds:
    mu_I: float
    mu_II: float


def cusp_bounds(sigma: float) -> CuspBounds:
    """Depths of the thin part of a cusp, measured from the length-2 horocycle.

    Horocycle length decays like ``2 e^{-d}``, so the ``sigma``-thin part
    starts at depth ``ln(1/sigma)``.
    """
    if not (0.0 < sigma < 1.0):
        raise DomainError(f"sigma must lie in (0, 1), got {sigma}")
    mu = -math.log(sigma)
    return CuspBounds(mu, mu - 1.0)


# ---------------------------------------------------------------------------
# stretch maps


@dataclass(frozen=True)
class Stretch:
    """Increasing homeomorphism ``[a, b] -> [a', b']``.

    The plain map concentrates stretching at the right ends (``b'`` may be
    ``inf``); the starred map at the left ends (``a'`` may be ``-inf``).
    """

    a: float
    b: float
    a2: float
    b2: float
    star: bool
    params: FlowParams = DEFAULT

    def _ratio(self) -> float:
        return self.params.h_inv(self.b2 - self.a2) / self.params.h_inv(self.b - self.a)

    def __call__(self, y: float) -> float:
        h, hi = self.params.h, self.params.h_inv
        if not (self.a <= y <= self.b):
            raise DomainError(f"{y} outside [{self.a}, {self.b}]")
        if self.star:
            return self.b2 - h(hi(self.b - y) * self._ratio())
        return self.a2 + h(hi(y - self.a) * self._ratio())

    def inverse(self, z: float) -> float:
        h, hi = self.params.h, self.params.h_inv
        if not (self.a2 <= z <= self.b2):
            raise DomainError(f"{z} outside [{self.a2}, {self.b2}]")
        if self.star:
            return self.b - h(hi(self.b2 - z) / self._ratio())
        return self.a + h(hi(z - self.a2) / self._ratio())


def _check_intervals(a, b, a2, b2):
    if not (a < b and a2 < b2):
        raise DomainError("stretch maps need nondegenerate intervals")
    if math.isinf(a) or math.isinf(b):
        raise DomainError("the source interval must be finite")


def stretch(a: float, b: float, a2: float, b2: float, params: FlowParams = DEFAULT) -> Stretch:
    """``y -> a' + h(h^{-1}(y - a) / h^{-1}(b - a) * h^{-1}(b' - a'))``."""
    _check_intervals(a, b, a2, b2)
    if math.isinf(a2):
        raise DomainError("a' must be finite")
    return Stretch(a, b, a2, b2, False, params)


def stretch_star(a: float, b: float, a2: float, b2: float, params: FlowParams = DEFAULT) -> Stretch:
    """``y -> b' - h(h^{-1}(b - y) / h^{-1}(b - a) * h^{-1}(b' - a'))``."""
    _check_intervals(a, b, a2, b2)
    if math.isinf(b2):
        raise DomainError("b' must be finite")
    return Stretch(a, b, a2, b2, True, params)


# ---------------------------------------------------------------------------
# h_t on collars and cusps


@dataclass(frozen=True)
class HtImage:
    """Image point: region, conformal coordinates ``(x, y)`` and, when the
    image lies in a finite extended collar, its distance ``s`` to the core."""

    region: str
    x: float
    y: float
    s: float | None

    def depth(self, rho: float) -> float:
        """Conformal height below the collar boundary ``rho``."""
        return rho - self.y


def _inner_map(b: SubannulusBounds, s: float, params: FlowParams) -> float:
    """Distance to the core after the map: identity to ``R_I/2``, then stretch."""
    half = 0.5 * b.R_I
    if s <= half:
        return s
    return stretch(half, b.R_I, half, b.Delta_I, params)(s)


def _to_conformal(b: SubannulusBounds, S: float) -> float:
    return gd(S) / b.omega - 0.5 * b.L_t


def _to_distance(b: SubannulusBounds, y: float) -> float | None:
    if b.infinite:
        return None
    return sec_integral((y + 0.5 * b.L_t) * b.omega)


def _middle_map(b: SubannulusBounds, y: float, params: FlowParams) -> float:
    if not (b.rho_I < b.rho_II and b.delta_I < b.rho_II):
        # L_t so small that the middle subannulus is a single circle in floating point
        return b.rho_II
    return stretch_star(b.rho_I, b.rho_II, b.delta_I, b.rho_II, params)(y)


def h_t_annulus(
    length: float,
    t: float,
    sys: float,
    p: tuple[float, float],
    params: FlowParams = DEFAULT,
) -> HtImage:
    """Image under ``h_t`` of a point ``p = (x, s)`` of the standard collar.

    Inner subannulus ``s <= R_I``: distance map ``id`` then stretch, in the
    distance coordinate. Middle subannulus ``R_I < s <= R_II``: starred
    stretch in the conformal coordinate. Elsewhere the inclusion.
    """
    x, s = p
    if not (0.0 <= s < standard_collar_radius(length)):
        raise DomainError(f"s = {s} is outside the standard collar")
    if grafting_length(t, length, sys, params) == 0.0:
        return HtImage("identity", x, gd(s), s)
    b = subannuli_bounds(length, t, sys, params)
    if s <= b.R_I:
        if b.infinite:
            raise DomainError("the inner subannulus of a pinched systole is not in the finite part")
        S = _inner_map(b, s, params)
        return HtImage("A_I", x, _to_conformal(b, S), S)
    y = gd(s)
    if s <= b.R_II:
        y2 = _middle_map(b, y, params)
        return HtImage("A_II", x, y2, _to_distance(b, y2))
    return HtImage("outside", x, y, _to_distance(b, y))


def annulus_boundary_mismatch(length: float, t: float, sys: float, params: FlowParams = DEFAULT) -> dict:
    """Differences between the one-sided formulas of ``h_t`` at the region
    boundaries ``R_I/2``, ``R_I`` and ``R_II`` (conformal heights)."""
    b = subannuli_bounds(length, t, sys, params)
    out = {}
    if b.L_t == 0.0:
        return {"R_I/2": 0.0, "R_I": 0.0, "R_II": 0.0}
    if not b.infinite and b.R_I > 0:
        half = 0.5 * b.R_I
        out["R_I/2"] = abs(stretch(half, b.R_I, half, b.Delta_I, params)(half) - half)
        out["R_I"] = abs(_to_conformal(b, _inner_map(b, b.R_I, params)) - _middle_map(b, b.rho_I, params))
    out["R_II"] = abs(_middle_map(b, b.rho_II, params) - b.rho_II)
    return out


def h_t_cusp(sigma: float, t: float, p: tuple[float, float], params: FlowParams = DEFAULT) -> tuple[float, float]:
    """Image of ``p = (x, y)`` in the cusp neighbourhood, ``y`` the depth
    below the length-2 horocycle.

    Thin part ``y >= mu_I``: shift by ``h(t)``. Layer ``[mu_II, mu_I)``:
    stretch onto ``[mu_II, mu_I + h(t))``. Shallower points are fixed.
    """
    x, y = p
    cb = cusp_bounds(sigma)
    if not y >= 0.0:
        raise DomainError("cusp depth must be >= 0")
    shift = params.h(t)
    if y >= cb.mu_I:
        if math.isinf(shift):
            raise DomainError("the thin part of a cusp is not in the finite part at t = 1")
        return x, y + shift
    if y >= cb.mu_II:
        return x, stretch(cb.mu_II, cb.mu_I, cb.mu_II, cb.mu_I + shift, params)(y)
    return x, y


# ---------------------------------------------------------------------------
# limits at t = 1


@dataclass(frozen=True)
class LimitState:
    """Where the base vector sits at ``t = 1``.

    ``position`` is ``"cusp"`` (thin part of a cusp) or ``"collar"`` (the
    inner subannulus of a pinched systole, ``s`` its distance to the core).
    ``theta`` is the angle from the base vector to the direction of the
    cusp or of the core geodesic.
    """

    position: str
    theta: float = 0.0
    s: float | None = None
    R_I: float | None = None
    curve: str = "regular"


def _boundary_point(theta: float) -> float:
    # direction theta from i, measured from the upward vertical
    half = 0.5 * theta
    if math.sin(half) == 0.0:
        return math.inf
    return -math.cos(half) / math.sin(half)


def limit_distance(s: float, R_I: float, params: FlowParams = DEFAULT) -> float:
    """Limit of the inner distance map at ``t = 1``: identity on
    ``[0, R_I/2]`` then a stretch of ``[R_I/2, R_I)`` onto ``[R_I/2, inf)``."""
    if not (0.0 <= s < R_I):
        raise DomainError("s must lie in [0, R_I)")
    half = 0.5 * R_I
    if s <= half:
        return s
    return stretch(half, R_I, half, math.inf, params)(s)


def classify_limit(state: LimitState, params: FlowParams = DEFAULT) -> ElementarySubgroup:
    """Elementary subgroup reached at ``t = 1`` from the given position.

    Thin part of a cusp, or the boundary ``s = R_I``: parabolic group
    ``N(xi)``. Inside ``s < R_I``: the translation group ``A`` of an axis at
    distance ``D(s)`` (``A'`` for degenerate curves).
    """
    theta = float(state.theta)
    xi = _boundary_point(theta)
    if state.position == "cusp":
        return ElementarySubgroup("N", xi=xi, note={"theta": theta, "case": "cusp"})
    if state.position != "collar" or state.s is None or state.R_I is None:
        raise ConfigError("collar states need s and R_I")
    if state.curve not in ("regular", "degenerate"):
        raise ConfigError(f"unknown curve kind {state.curve!r}")
    if state.s == state.R_I:
        return ElementarySubgroup("N", xi=xi, note={"theta": theta, "case": "boundary"})
    if not (0.0 <= state.s < state.R_I):
        raise ConfigError("the base point is not in the inner subannulus")
    d = limit_distance(state.s, state.R_I, params)
    # geodesic perpendicular to the direction theta at distance d from i
    r = rotation(theta)
    ends = (r.apply(-math.exp(d)), r.apply(math.exp(d)))
    tag = "A" if state.curve == "regular" else "A'"
    return ElementarySubgroup(tag, axis=ends, note={"theta": theta, "distance": d, "case": state.curve})


def trace_rows(length: float, sys: float, steps: int, params: FlowParams = DEFAULT) -> list[dict]:
    """Rows ``t, L_t, R_I, R_II, Delta_I, Delta_II, delta_I`` on a uniform grid."""
    if steps < 2:
        raise DomainError("need at least two steps")
    rows = []
    for k in range(steps):
        t = k / (steps - 1)
        b = subannuli_bounds(length, t, sys, params)
        rows.append({"t": t, "L_t": b.L_t, "R_I": b.R_I, "R_II": b.R_II,
                     "Delta_I": b.Delta_I, "Delta_II": b.Delta_II, "delta_I": b.delta_I})
    return rows
