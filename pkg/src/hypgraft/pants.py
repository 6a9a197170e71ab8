"""Pairs of pants, standard and reduced collars, and the pinching model.

Pants are doubles of right-angled hexagons: a boundary of length ``l`` is
the double of a free side of length ``l/2`` and the seams are the
determined sides.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

import numpy as np

from .errors import ConfigError, ConvergenceError, DomainError, Unsupported
from .hexagon import RAHexagon, solve_hexagon
from .hyptrig import gd, hexagon_opposite, standard_collar_radius, surface_collar_radius

__all__ = [
    "PantsData",
    "pants_from_boundary",
    "StandardCollar",
    "standard_collar",
    "ReducedCollarSurface",
    "reduced_collar_surface",
    "collar_boundary_length",
    "boundary_length_max",
    "boundary_arc_shortening_constant",
    "CurveFN",
    "SurfaceFN",
    "pinch_lengths",
    "default_distortion_model",
    "reference_distortion",
    "global_constants",
    "global_eta",
]


@dataclass(frozen=True)
class PantsData:
    """Pair of pants with boundary lengths ``l1, l2, l3`` (0 means a cusp)."""

    boundary_lengths: tuple[float, float, float]
    hexagon: RAHexagon | None

    @property
    def cusps(self) -> tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.boundary_lengths) if x == 0.0)

    def seam(self, i: int) -> float:
        """Seam opposite boundary ``i``; it runs between the other two boundaries."""
        others = [j for j in range(3) if j != i]
        if any(self.boundary_lengths[j] == 0.0 for j in others):
            raise Unsupported(f"seam {i} ends at a cusp (ideal hexagons are not computed)")
        if self.hexagon is not None:
            return self.hexagon.determined[i]
        half = [0.5 * x for x in self.boundary_lengths]
        return hexagon_opposite(half[i], half[others[0]], half[others[1]], allow_zero_a=True)

    @property
    def seam_lengths(self) -> tuple[float, float, float]:
        return tuple(self.seam(i) for i in range(3))

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "type": "PantsData",
            "boundary_lengths": list(self.boundary_lengths),
            "hexagon": None if self.hexagon is None else self.hexagon.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PantsData":
        if d.get("type") != "PantsData":
            raise ConfigError("not a PantsData record")
        return pants_from_boundary(*d["boundary_lengths"])


def pants_from_boundary(l1: float, l2: float, l3: float) -> PantsData:
    """Pants with the given boundary lengths; zeros are cusps.

    >>> p = pants_from_boundary(2, 2, 2)
    >>> p.hexagon.free
    (1.0, 1.0, 1.0)
    """
    ls = tuple(float(x) for x in (l1, l2, l3))
    for x in ls:
        if not (x >= 0.0) or math.isinf(x):
            raise DomainError(f"boundary lengths must be finite and >= 0, got {x}")
    hexa = solve_hexagon(*(0.5 * x for x in ls)) if all(x > 0 for x in ls) else None
    return PantsData(ls, hexa)


# ---------------------------------------------------------------------------
# collars on surfaces


@dataclass(frozen=True)
class StandardCollar:
    """Standard collar of a closed geodesic or a cusp.

    ``radius`` is ``M_l = asinh(1/sinh(l/2))`` and ``halfheight`` is
    ``gd(M_l)``, the height of the collar in the strip model.
    """

    curve_length: float
    radius: float
    halfheight: float
    kind: str = "geodesic"

    @property
    def modulus(self) -> float:
        if self.kind == "cusp":
            return math.inf
        return 2.0 * self.halfheight / self.curve_length

    @property
    def boundary_length(self) -> float:
        if self.kind == "cusp":
            return 2.0
        # l cosh(asinh(x)) = l sqrt(1 + x^2) with x = 1/sinh(l/2)
        x = 1.0 / math.sinh(0.5 * self.curve_length)
        return self.curve_length * math.sqrt(1.0 + x * x)

    @classmethod
    def cusp(cls) -> "StandardCollar":
        return cls(0.0, math.inf, 0.5 * math.pi, "cusp")


def standard_collar(length: float) -> StandardCollar:
    """Standard collar of a geodesic of the given length.

    >>> round(standard_collar(2 * math.asinh(1)).halfheight / math.pi, 12)
    0.25
    """
    if not (length > 0) or math.isinf(length):
        raise DomainError(f"curve length must be positive, got {length}")
    m = standard_collar_radius(length)
    return StandardCollar(float(length), m, gd(m))


@dataclass(frozen=True)
class ReducedCollarSurface:
    delta: float
    length: float
    radius: float

    @property
    def boundary_length(self) -> float:
        return collar_boundary_length(self.length, self.delta)


def reduced_collar_surface(length: float, delta: float) -> ReducedCollarSurface:
    """``delta``-reduced collar of a closed geodesic, radius ``asinh(delta/sinh(l/2))``."""
    if not (0.0 < delta <= 1.0):
        raise DomainError(f"delta must lie in (0, 1], got {delta}")
    if not (length > 0) or math.isinf(length):
        raise DomainError(f"curve length must be positive, got {length}")
    return ReducedCollarSurface(float(delta), float(length), surface_collar_radius(delta, length))


def collar_boundary_length(length: float, delta: float) -> float:
    """Length ``l cosh(R_{delta,l})`` of a reduced collar boundary; tends to ``2 delta``."""
    x = delta / math.sinh(0.5 * length)
    return length * math.sqrt(1.0 + x * x)


def boundary_length_max(L: float, delta: float, n: int = 20001) -> float:
    """Supremum over ``l in (0, L]`` of the reduced collar boundary length.

    Evaluated on a grid that is geometric near 0 and linear elsewhere,
    together with the limit ``2 delta`` at ``l -> 0``.
    """
    grid = np.unique(np.concatenate([np.geomspace(1e-8 * L, L, n // 2), np.linspace(0, L, n // 2)[1:]]))
    x = delta / np.sinh(0.5 * grid)
    vals = grid * np.sqrt(1.0 + x * x)
    return float(max(vals.max(), 2.0 * delta))


def boundary_arc_shortening_constant(L: float, delta: float, n: int = 20001) -> float:
    """Constant ``C`` such that an arc in a reduced collar with both ends on
    one boundary component is homotopic into that component with length
    growing by at most the factor ``C``.

    ``C = max(10, l_max / r)`` with ``r = min(1, R_{delta,L})``; the 10
    covers the projection to the boundary, whose Lipschitz constant is at
    most ``4 cosh r < 10``.
    """
    if not (L > 0 and 0 < delta <= 1):
        raise DomainError("need L > 0 and 0 < delta <= 1")
    r = min(1.0, surface_collar_radius(delta, L))
    return max(10.0, boundary_length_max(L, delta, n) / r)


# ---------------------------------------------------------------------------
# Fenchel-Nielsen data


@dataclass(frozen=True)
class CurveFN:
    length: float
    twist: float = 0.0
    flag: str = "regular"

    def to_dict(self) -> dict:
        return {"length": self.length, "twist": self.twist, "flag": self.flag}


CUSP = "cusp"


@dataclass
class SurfaceFN:
    """Pants decomposition with length and twist parameters.

    ``pants`` lists, for every pair of pants, its three boundary curve names
    (or ``"cusp"``). A curve named in two slots is glued there; a curve named
    once is a boundary of the surface.
    """

    pants: list[tuple[str, str, str]]
    curves: dict[str, CurveFN] = field(default_factory=dict)

    def __post_init__(self):
        self.pants = [tuple(p) for p in self.pants]
        self.validate()

    def validate(self) -> None:
        for p in self.pants:
            if len(p) != 3:
                raise ConfigError(f"pants must have three boundaries, got {p}")
            for c in p:
                if c != CUSP and c not in self.curves:
                    raise ConfigError(f"curve {c!r} has no Fenchel-Nielsen data")
        for name, cv in self.curves.items():
            if not (cv.length > 0) or math.isinf(cv.length):
                raise ConfigError(f"curve {name} must have positive length")
            if cv.flag not in ("regular", "degenerate"):
                raise ConfigError(f"curve {name}: flag must be regular or degenerate")
            if not math.isfinite(cv.twist):
                raise ConfigError(f"curve {name}: twist must be finite")
            if self.slots(name) > 2:
                raise ConfigError(f"curve {name} bounds more than two pants slots")
        if self.pants and not self._connected():
            raise ConfigError("pants graph is not connected")

    def slots(self, name: str) -> int:
        return sum(p.count(name) for p in self.pants)

    def edges(self) -> list[tuple[int, int, str]]:
        """Gluing edges ``(pants_i, pants_j, curve)``."""
        where: dict[str, list[int]] = {}
        for i, p in enumerate(self.pants):
            for c in p:
                if c != CUSP:
                    where.setdefault(c, []).append(i)
        return [(v[0], v[1], c) for c, v in where.items() if len(v) == 2]

    def _connected(self) -> bool:
        adj = {i: set() for i in range(len(self.pants))}
        for i, j, _ in self.edges():
            adj[i].add(j)
            adj[j].add(i)
        seen, todo = {0}, deque([0])
        while todo:
            for j in adj[todo.popleft()] - seen:
                seen.add(j)
                todo.append(j)
        return len(seen) == len(self.pants)

    def pants_data(self, i: int) -> PantsData:
        return pants_from_boundary(*(0.0 if c == CUSP else self.curves[c].length for c in self.pants[i]))

    def with_lengths(self, lengths: Mapping[str, float]) -> "SurfaceFN":
        curves = dict(self.curves)
        for name, x in lengths.items():
            cv = curves[name]
            curves[name] = CurveFN(float(x), cv.twist, cv.flag)
        return SurfaceFN(list(self.pants), curves)

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "type": "SurfaceFN",
            "pants": [list(p) for p in self.pants],
            "curves": {k: v.to_dict() for k, v in sorted(self.curves.items())},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SurfaceFN":
        if d.get("type") != "SurfaceFN":
            raise ConfigError("not a SurfaceFN record")
        extra = set(d) - {"schema", "type", "pants", "curves"}
        if extra:
            raise ConfigError(f"unknown keys {sorted(extra)}")
        curves = {k: CurveFN(float(v["length"]), float(v.get("twist", 0.0)), v.get("flag", "regular"))
                  for k, v in d["curves"].items()}
        return cls([tuple(p) for p in d["pants"]], curves)


# ---------------------------------------------------------------------------
# pinching


def _collar_modulus(length: float, delta: float) -> float:
    return 2.0 * gd(surface_collar_radius(delta, length)) / length


def _pinch_one(length: float, graft: float, delta: float) -> float:
    target = (2.0 * gd(surface_collar_radius(delta, length)) + 2.0 * graft) / length
    if graft == 0.0:
        return length

    def f(log_l: float) -> float:
        return _collar_modulus(math.exp(log_l), delta) - target

    hi = math.log(length)
    lo = hi - 1.0
    while f(lo) <= 0.0:
        lo -= 2.0 * (hi - lo)
        if lo < -700.0:
            raise ConvergenceError("pinched length underflows")
    for _ in range(300):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if f(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    l = math.exp(0.5 * (lo + hi))
    if abs(_collar_modulus(l, delta) - target) > 1e-10 * target:
        raise ConvergenceError("pinch solver missed the modulus tolerance")
    return l


def pinch_lengths(
    surface: SurfaceFN,
    S: Iterable[str],
    L: Mapping[str, float],
    delta: float = 0.1,
    L_max: float = 2.0,
) -> dict[str, float]:
    """New lengths making each reduced collar as long (in modulus) as the
    grafted collar.

    Solves ``2 gd(R_{delta,l}) / l = (2 gd(R_{delta,len}) + 2 L) / len`` for
    ``l`` in ``(0, len]``; the left side decreases strictly in ``l``.
    The relative residual of the modulus equation is at most 1e-10.
    """
    if not (0.0 < delta <= 1.0):
        raise DomainError(f"delta must lie in (0, 1], got {delta}")
    out = {}
    for c in S:
        length = surface.curves[c].length
        graft = float(L[c])
        if length > L_max:
            raise DomainError(f"curve {c} is longer than L_max = {L_max}")
        if not (0.0 <= graft < math.inf):
            raise DomainError(f"grafting length for {c} must be finite and >= 0, got {graft}")
        out[c] = _pinch_one(length, graft, delta)
    return out


# ---------------------------------------------------------------------------
# global distance distortion


def default_distortion_model(d: float, K: float) -> float:
    """Placeholder quasiconformal distance distortion ``max(0, d/K - ln 4)``."""
    return max(0.0, d / K - math.log(4.0))


def reference_distortion(L: float = 2.0, delta: float = 0.1) -> float:
    """Measured hexagon-map distortion for halving a free side of length ``L``."""
    from .hexagon import hexagon_map

    hp, hq = solve_hexagon(L, L, L), solve_hexagon(0.5 * L, L, L)
    return hexagon_map(hp, hq, delta=delta, L=L).distortion()["K"]


def global_constants(L: float = 2.0, delta: float = 0.1, K: float | None = None) -> dict:
    """Constants assembled for the global lower distance bound.

    ``K`` is the bilipschitz constant outside collars, ``case1`` the
    constant for arcs crossing a collar, ``case2 = K C`` for arcs returning
    to the same boundary, and ``K_prime`` the worst of them.
    """
    if K is None:
        K = reference_distortion(L, delta)
    lmax = boundary_length_max(L, delta)
    R = surface_collar_radius(delta, L)
    C = boundary_arc_shortening_constant(L, delta)
    case1 = 1.0 + 2.0 * lmax / R
    case2 = K * C
    return {"K": K, "C": C, "l_max": lmax, "R": R, "case1": case1, "case2": case2,
            "K_prime": max(K, case1, case2)}


def global_eta(
    L: float = 2.0,
    delta: float = 0.1,
    distortion_model: Callable[[float, float], float] | None = None,
    K: float | None = None,
) -> Callable[[float], float]:
    """Lower bound ``eta`` with ``d_new(x, y) >= eta(d_old(x, y))``.

    ``eta(s) = delta_K(s / K')``. ``distortion_model(d, K)`` plays the role of
    ``delta_K``; it must be nondecreasing in ``d``.
    """
    consts = global_constants(L, delta, K)
    model = distortion_model or default_distortion_model
    Kq, Kp = consts["K"], consts["K_prime"]
    probe = np.concatenate([[0.0], np.geomspace(1e-6, 1e6, 400)])
    vals = np.array([model(float(d), Kq) for d in probe])
    if np.any(np.diff(vals) < -1e-12):
        raise ConfigError("distortion model is not monotone")

    def eta(s: float) -> float:
        return model(s / Kp, Kq)

    eta.constants = consts
    return eta
