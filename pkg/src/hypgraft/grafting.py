"""Grafting along short curves: extended collars, their coordinates,
straight-annulus truncation and modulus estimates for grafted lengths.

Conformal coordinates on one half of an extended collar are
``(x, y) in S^1_l x [-L, rho_l)``: the grafted cylinder occupies
``[-L, 0]`` and the hyperbolic half collar ``[0, rho_l)``. The rescaled
coordinates multiply by ``omega = pi/(pi + 2L)`` after moving the core to
``y = -L``, and the semi-hyperbolic coordinate is ``s = Sec(y')``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .errors import ConfigError, DomainError
from .hyptrig import gd, sec_integral, standard_collar_radius
from .pants import SurfaceFN

__all__ = [
    "StraightAnnulus",
    "ExtendedCollar",
    "extended_collar",
    "to_rescaled",
    "from_rescaled",
    "to_semihyperbolic",
    "from_semihyperbolic",
    "truncate",
    "truncation_quasimonotone_check",
    "N_constant",
    "M_constant",
    "truncation_distance_lower",
    "LengthInterval",
    "grafted_length_bounds",
    "shat_relation",
    "GraftingData",
]

HALF_PI = 0.5 * math.pi


@dataclass(frozen=True)
class StraightAnnulus:
    """Annulus ``S^1_l x I`` with ``I`` from ``lo`` to ``hi``.

    Closed ends are boundary circles; open ends (finite or infinite) are the
    ends of the annulus and are what truncation removes.
    """

    circumference: float
    lo: float
    hi: float
    lo_closed: bool = False
    hi_closed: bool = False
    kind: str = "euclidean"
    degenerate: bool = False

    def __post_init__(self):
        if not self.circumference > 0:
            raise DomainError("circumference must be positive")
        if self.kind not in ("hyperbolic-strip", "euclidean", "cusp"):
            raise ConfigError(f"unknown annulus kind {self.kind!r}")
        if self.kind == "hyperbolic-strip" and not self.is_empty:
            if self.lo < -HALF_PI or self.hi > HALF_PI:
                raise DomainError("hyperbolic strip heights must lie in (-pi/2, pi/2)")

    @property
    def is_empty(self) -> bool:
        if self.lo < self.hi:
            return False
        return not (self.lo == self.hi and self.lo_closed and self.hi_closed)

    @property
    def height(self) -> float:
        return 0.0 if self.is_empty else self.hi - self.lo

    @property
    def modulus(self) -> float:
        return self.height / self.circumference

    def contains(self, other: "StraightAnnulus") -> bool:
        """Containment of height intervals (the empty annulus is in everything)."""
        if other.is_empty:
            return True
        if self.is_empty:
            return False
        lo_ok = self.lo < other.lo or (self.lo == other.lo and (self.lo_closed or not other.lo_closed))
        hi_ok = other.hi < self.hi or (self.hi == other.hi and (self.hi_closed or not other.hi_closed))
        return lo_ok and hi_ok


def truncate(a: StraightAnnulus, D: float) -> StraightAnnulus:
    """Delete straight end neighbourhoods of modulus ``D`` from every end.

    >>> b = truncate(StraightAnnulus(2, 0, 9, lo_closed=True), 2)
    >>> b.lo, b.hi
    (0, 5)
    """
    if not D >= 0:
        raise DomainError(f"truncation modulus must be >= 0, got {D}")
    cut = D * a.circumference
    lo = a.lo if a.lo_closed else a.lo + cut
    hi = a.hi if a.hi_closed else a.hi - cut
    return replace(a, lo=lo, hi=hi)


def truncation_quasimonotone_check(A: StraightAnnulus, B: StraightAnnulus, D: float) -> bool:
    """Whether the ``(D+2)``-truncation of ``B`` lies in the ``D``-truncation of ``A``."""
    if A.circumference != B.circumference:
        raise ConfigError("annuli must have the same circumference")
    if A.lo_closed or A.hi_closed or B.lo_closed or B.hi_closed:
        raise ConfigError("quasi-monotonicity is stated for open annuli")
    if not A.contains(B):
        raise ConfigError("B must be a subannulus of A")
    return truncate(A, D).contains(truncate(B, D + 2))


# ---------------------------------------------------------------------------
# extended collars


@dataclass(frozen=True)
class ExtendedCollar:
    """Standard collar of a curve of length ``l`` with a flat cylinder of
    length ``L`` grafted on each side."""

    length: float
    L: float
    rho: float
    omega: float
    length_prime: float
    rho_prime: float
    degenerate: bool = False

    @property
    def modulus(self) -> float:
        if math.isinf(self.L):
            return math.inf
        return (2.0 * self.rho + 2.0 * self.L) / self.length

    def annulus(self) -> StraightAnnulus:
        """The whole extended collar in conformal coordinates."""
        lo = -math.inf if math.isinf(self.L) else -2.0 * self.L - self.rho
        return StraightAnnulus(self.length, lo, self.rho, degenerate=self.degenerate)


def extended_collar(length: float, L: float, degenerate: bool = False) -> ExtendedCollar:
    """Extended standard collar data.

    >>> ec = extended_collar(1.0, math.pi / 2)
    >>> ec.omega, ec.length_prime
    (0.5, 0.5)
    """
    if not (length > 0) or math.isinf(length):
        raise DomainError(f"curve length must be positive, got {length}")
    if not L >= 0:
        raise DomainError(f"grafting length must be >= 0, got {L}")
    rho = gd(standard_collar_radius(length))
    if math.isinf(L):
        return ExtendedCollar(float(length), math.inf, rho, 0.0, 0.0, HALF_PI, degenerate)
    omega = math.pi / (math.pi + 2.0 * L)
    return ExtendedCollar(float(length), float(L), rho, omega, length * omega, (L + rho) * omega, degenerate)


def _check_finite(ec: ExtendedCollar) -> None:
    if math.isinf(ec.L):
        raise DomainError("rescaled coordinates need a finite grafting length")


def to_rescaled(ec: ExtendedCollar, p: tuple[float, float]) -> tuple[float, float]:
    x, y = p
    _check_finite(ec)
    if not (-ec.L <= y < ec.rho):
        raise DomainError(f"height {y} outside [-L, rho)")
    return x * ec.omega, (y + ec.L) * ec.omega


def from_rescaled(ec: ExtendedCollar, q: tuple[float, float]) -> tuple[float, float]:
    _check_finite(ec)
    x, y = q
    if not (0.0 <= y < ec.rho_prime):
        raise DomainError(f"rescaled height {y} outside [0, rho')")
    return x / ec.omega, y / ec.omega - ec.L


def to_semihyperbolic(ec: ExtendedCollar, p: tuple[float, float]) -> tuple[float, float]:
    """``(x', s)`` with ``s`` the distance to the core geodesic of the
    complete metric on the rescaled strip."""
    x, y = to_rescaled(ec, p)
    return x, sec_integral(y)


def from_semihyperbolic(ec: ExtendedCollar, q: tuple[float, float]) -> tuple[float, float]:
    x, s = q
    if s < 0:
        raise DomainError("s must be >= 0")
    return from_rescaled(ec, (x, gd(s)))


# ---------------------------------------------------------------------------
# modulus estimates


def _m_inf(Lcal: float) -> float:
    if not Lcal > 0:
        raise DomainError(f"length bound must be positive, got {Lcal}")
    # gd(M_l)/l decreases in l, so the infimum over (0, Lcal] sits at Lcal
    return gd(standard_collar_radius(Lcal)) / Lcal


def N_constant(Lcal: float) -> float:
    """Truncation depth ``4 (6+m)/m + 1`` with ``m`` the smallest half-collar modulus."""
    m = _m_inf(Lcal)
    return 4.0 * (6.0 + m) / m + 1.0


def M_constant(Lcal: float) -> float:
    return math.log(N_constant(Lcal) + 1.0)


def truncation_distance_lower(D: float, Lcal: float) -> float:
    """Lower bound on the distance from the ``D``-truncation of an extended
    collar to the outside of the collar."""
    if not D > 2:
        raise DomainError(f"need D > 2, got {D}")
    return max(0.0, math.log(D - 2.0) - M_constant(Lcal))


@dataclass(frozen=True)
class LengthInterval:
    lo: float
    hi: float
    cusp: bool = False

    def __contains__(self, x: float) -> bool:
        return self.lo <= x <= self.hi


def grafted_length_bounds(length: float, L: float, Lcal: float) -> LengthInterval:
    """Interval for the hyperbolic length of a curve after grafting.

    With ``m_ext`` the modulus of the extended collar, ``pi/l_hat`` lies in
    ``[m_ext, m_ext + 2N + 2]``. Infinite ``L`` gives the cusp interval.
    """
    if not (0 < length <= Lcal):
        raise DomainError(f"need 0 < length <= {Lcal}, got {length}")
    if math.isinf(L):
        return LengthInterval(0.0, 0.0, cusp=True)
    m_ext = extended_collar(length, L).modulus
    slack = 2.0 * N_constant(Lcal) + 2.0
    return LengthInterval(math.pi / (m_ext + slack), math.pi / m_ext)


def shat_relation(s: float, length: float, L: float) -> float:
    """Distance to the core in the complete metric of the extended collar,
    given the distance ``s`` in the semi-hyperbolic coordinate."""
    if not s >= 0:
        raise DomainError("s must be >= 0")
    if math.isinf(L):
        return float(s)
    rho = gd(standard_collar_radius(length))
    angle = (math.pi + 2.0 * L) / (2.0 * rho + 2.0 * L) * gd(s)
    if angle >= HALF_PI:
        raise DomainError("s lies outside the extended collar")
    return sec_integral(angle)


# ---------------------------------------------------------------------------
# grafting data


def _num(x: float):
    return "inf" if math.isinf(x) else x


def _parse_num(x) -> float:
    if x == "inf":
        return math.inf
    if isinstance(x, str):
        raise ConfigError(f"bad numeric token {x!r}")
    return float(x)


@dataclass
class GraftingData:
    """Curves of a surface to graft along, with side markers and lengths.

    ``sides[c]`` is ``"+"``, ``"-"`` or ``"both"``; ``L[c]`` may be infinite.
    """

    surface: SurfaceFN
    L: dict[str, float]
    sides: dict[str, str] = field(default_factory=dict)
    Lcal: float = 2.0

    def __post_init__(self):
        for c, x in self.L.items():
            if c not in self.surface.curves:
                raise ConfigError(f"unknown curve {c!r}")
            if not x >= 0:
                raise ConfigError(f"grafting length of {c} must be >= 0")
            if self.surface.curves[c].length > self.Lcal:
                raise ConfigError(f"curve {c} is longer than {self.Lcal}")
            self.sides.setdefault(c, "both")
        for c, sd in self.sides.items():
            if c not in self.L or sd not in ("+", "-", "both"):
                raise ConfigError(f"bad side marker for {c!r}")

    def degenerate(self, c: str) -> bool:
        return self.surface.curves[c].flag == "degenerate"

    def collar(self, c: str) -> ExtendedCollar:
        return extended_collar(self.surface.curves[c].length, self.L[c], self.degenerate(c))

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "type": "GraftingData",
            "surface": self.surface.to_dict(),
            "L": {c: _num(x) for c, x in sorted(self.L.items())},
            "sides": dict(sorted(self.sides.items())),
            "Lcal": self.Lcal,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GraftingData":
        if d.get("type") != "GraftingData":
            raise ConfigError("not a GraftingData record")
        extra = set(d) - {"schema", "type", "surface", "L", "sides", "Lcal"}
        if extra:
            raise ConfigError(f"unknown keys {sorted(extra)}")
        return cls(SurfaceFN.from_dict(d["surface"]), {c: _parse_num(x) for c, x in d["L"].items()},
                   dict(d.get("sides", {})), float(d.get("Lcal", 2.0)))
