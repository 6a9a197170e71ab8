"""Right-angled hexagons: necks, reduced collars and thick-thin pieces.

Labeling
--------
Free sides are ``a, b, c`` and the determined side opposite a free side
carries the capital letter, so ``A`` is opposite ``a``. Going around the
hexagon counterclockwise the sides read ``a, C, b, A, c, B``.

A non-side neck ``Nb`` is the common perpendicular from ``b`` to ``B``. It
cuts ``b`` into ``b+`` (the part next to ``a``, through ``C``) and ``b-``
(the part next to ``c``). In general the plus part of free side ``i`` faces
free side ``i-1`` and the minus part faces ``i+1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Union

import numpy as np

from . import kernels, lorentz
from .errors import ConfigError, ConvergenceError, DomainError, GeometryError
from .hyptrig import hex_collar_radius, hexagon_opposite, log_cosh, log_sinh, pentagon_side

__all__ = [
    "FREE_LABELS",
    "DET_LABELS",
    "CYCLE",
    "NONSIDE_LABELS",
    "RAHexagon",
    "Neck",
    "CollarSpec",
    "BoundaryPiece",
    "ComplementPiece",
    "ThickThinDecomp",
    "solve_hexagon",
    "side_neck",
    "nonside_neck",
    "all_necks",
    "reduced_collar",
    "select_necks",
    "thick_thin",
    "neck_distortion",
    "distortion_bound",
    "realize",
    "HexagonRealization",
    "hexagon_map",
    "HexagonMap",
]

FREE_LABELS = ("a", "b", "c")
DET_LABELS = ("A", "B", "C")
CYCLE = ("a", "C", "b", "A", "c", "B")
NONSIDE_LABELS = ("Na", "Nb", "Nc")

DEFAULT_L = 2.0
DEFAULT_DELTA = 0.1
DEFAULT_DELTA_MIN = 0.05
DEFAULT_EPS_MAX = DEFAULT_DELTA_MIN / 100.0
DEFAULT_EPS_MIN = DEFAULT_EPS_MAX / 10.0

_BISECT_RTOL = 1e-12
_BISECT_MAXITER = 200


def _idx(label: str) -> int:
    try:
        return CYCLE.index(label)
    except ValueError:
        raise ConfigError(f"unknown side label {label!r}") from None


def _free_index(label: str) -> int:
    if label not in FREE_LABELS:
        raise ConfigError(f"{label!r} is not a free side label")
    return FREE_LABELS.index(label)


@dataclass(frozen=True)
class RAHexagon:
    """Right-angled hexagon given by its free sides.

    ``determined[i]`` is the side opposite ``free[i]``.
    """

    free: tuple[float, float, float]
    determined: tuple[float, float, float]

    def side(self, label: str) -> float:
        if label in FREE_LABELS:
            return self.free[FREE_LABELS.index(label)]
        if label in DET_LABELS:
            return self.determined[DET_LABELS.index(label)]
        raise ConfigError(f"unknown side label {label!r}")

    def cycle_lengths(self) -> tuple[float, ...]:
        """Side lengths in counterclockwise order ``a, C, b, A, c, B``."""
        return tuple(self.side(s) for s in CYCLE)

    def residuals(self) -> tuple[float, ...]:
        """Relative residuals of the three hexagon-rule identities."""
        out = []
        for i in range(3):
            a, b, c = self.free[i], self.free[(i + 1) % 3], self.free[(i + 2) % 3]
            lhs = math.cosh(self.determined[i])
            rhs = (math.cosh(b) * math.cosh(c) + math.cosh(a)) / (math.sinh(b) * math.sinh(c))
            out.append(abs(lhs - rhs) / max(1.0, abs(lhs)))
        return tuple(out)

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "type": "RAHexagon",
            "free": list(self.free),
            "determined": list(self.determined),
            "marking": list(CYCLE),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RAHexagon":
        if d.get("type") != "RAHexagon":
            raise ConfigError("not an RAHexagon record")
        hexa = solve_hexagon(*d["free"])
        if any(abs(x - y) > 1e-9 * max(1.0, y) for x, y in zip(d["determined"], hexa.determined)):
            raise ConfigError("determined sides inconsistent with free sides")
        return cls(tuple(float(x) for x in d["free"]), tuple(float(x) for x in d["determined"]))


def solve_hexagon(a: float, b: float, c: float) -> RAHexagon:
    """Right-angled hexagon with free sides ``a, b, c``.

    Examples
    --------
    >>> round(solve_hexagon(1, 1, 1).determined[0], 4)
    1.7049
    """
    for name, x in (("a", a), ("b", b), ("c", c)):
        if not (x > 0) or not math.isfinite(x):
            raise DomainError(f"free side {name} must be positive and finite, got {x}")
    free = (float(a), float(b), float(c))
    det = tuple(hexagon_opposite(free[i], free[(i + 1) % 3], free[(i + 2) % 3]) for i in range(3))
    return RAHexagon(free, det)


@dataclass(frozen=True)
class Neck:
    """A side of the hexagon or the common perpendicular to two opposite sides.

    For non-side necks ``feet = (x+, x-)`` splits the incident free side and
    ``opposite_feet = (y+, y-)`` splits the opposite determined side; the
    plus parts lie in the same pentagon.
    """

    label: str
    kind: str
    length: float
    incident_side: str
    feet: tuple[float, float] | None = None
    opposite_side: str | None = None
    opposite_feet: tuple[float, float] | None = None

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "kind": self.kind,
            "length": self.length,
            "incident_side": self.incident_side,
            "feet": None if self.feet is None else list(self.feet),
            "opposite_side": self.opposite_side,
            "opposite_feet": None if self.opposite_feet is None else list(self.opposite_feet),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Neck":
        return cls(
            d["label"],
            d["kind"],
            float(d["length"]),
            d["incident_side"],
            None if d.get("feet") is None else tuple(d["feet"]),
            d.get("opposite_side"),
            None if d.get("opposite_feet") is None else tuple(d["opposite_feet"]),
        )


def side_neck(hexa: RAHexagon, label: str) -> Neck:
    _idx(label)
    return Neck(label, "side", hexa.side(label), label)


def _split_side(b: float, ca: float, cc: float) -> tuple[float, float]:
    """Split ``b`` into ``(x+, x-)`` with ``sinh x+ / sinh x- = ca / cc``.

    ``ca`` and ``cc`` are logarithms of the two cosh values. The shorter part
    is found by bisection in log space, which keeps relative accuracy when
    it is exponentially small.
    """
    target = ca - cc
    if target == 0.0:
        return 0.5 * b, 0.5 * b
    # s is the shorter part; g(s) = ln sinh(b - s) - ln sinh(s) - |target| decreases in s
    k = abs(target)

    def g(s: float) -> float:
        return log_sinh(b - s) - log_sinh(s) - k

    hi = math.log(0.5 * b)
    lo = hi - 60.0
    while g(math.exp(lo)) <= 0.0:
        lo -= 60.0
        if lo < -745.0:
            raise ConvergenceError("neck foot underflows double precision")
    for _ in range(_BISECT_MAXITER):
        mid = 0.5 * (lo + hi)
        if g(math.exp(mid)) > 0.0:
            lo = mid
        else:
            hi = mid
        # width in log space is the relative width of s
        if hi - lo <= _BISECT_RTOL:
            break
    else:
        raise ConvergenceError("neck bisection did not converge in 200 iterations")
    s = math.exp(0.5 * (lo + hi))
    long_part = b - s
    return (long_part, s) if target > 0 else (s, long_part)


def nonside_neck(hexa: RAHexagon, incident_free_side: str) -> Neck:
    """Common perpendicular from a free side to the opposite determined side.

    Solves ``sinh(l) sinh(x+) = cosh(prev free side)`` and
    ``sinh(l) sinh(x-) = cosh(next free side)`` with ``x+ + x- = side``.

    Examples
    --------
    >>> n = nonside_neck(solve_hexagon(1, 2, 1), "b")
    >>> round(n.length, 4), n.feet[0] == n.feet[1]
    (1.0864, True)
    """
    i = _free_index(incident_free_side)
    b = hexa.free[i]
    prev, nxt = hexa.free[(i - 1) % 3], hexa.free[(i + 1) % 3]
    bp, bm = _split_side(b, log_cosh(prev), log_cosh(nxt))
    # use the larger foot for the length; it carries more relative accuracy
    if bp >= bm:
        lsh = log_cosh(prev) - log_sinh(bp)
    else:
        lsh = log_cosh(nxt) - log_sinh(bm)
    length = _asinh_exp(lsh)
    # feet on the opposite side: cosh(Det next to plus part) = sinh l sinh y+
    det_plus = hexa.determined[(i + 1) % 3]
    det_minus = hexa.determined[(i - 1) % 3]
    lsl = log_sinh(length)
    yp = _asinh_exp(log_cosh(det_plus) - lsl)
    ym = _asinh_exp(log_cosh(det_minus) - lsl)
    return Neck(
        NONSIDE_LABELS[i],
        "nonside",
        length,
        incident_free_side,
        (bp, bm),
        DET_LABELS[i],
        (yp, ym),
    )


def _asinh_exp(lx: float) -> float:
    # asinh(exp(lx)) without overflow
    if lx > 30.0:
        return lx + math.log(2.0) + 0.25 * math.exp(-2.0 * lx)
    return math.asinh(math.exp(lx))


def all_necks(hexa: RAHexagon) -> list[Neck]:
    """The six side necks followed by the three non-side necks."""
    return [side_neck(hexa, s) for s in CYCLE] + [nonside_neck(hexa, s) for s in FREE_LABELS]


@dataclass(frozen=True)
class CollarSpec:
    """Reduced collar of a neck on one side (``+``/``-``) or both.

    Side necks only have the ``+`` side, pointing into the hexagon.
    """

    neck: Neck
    coorientation: str
    delta: float
    radius: float

    @property
    def label(self) -> str:
        if self.neck.kind == "side":
            return self.neck.label
        return self.neck.label + ("" if self.coorientation == "both" else self.coorientation)

    @property
    def is_rectangle(self) -> bool:
        return self.delta <= 1.0

    @property
    def boundary_length(self) -> float:
        return self.neck.length * math.cosh(self.radius)

    def to_dict(self) -> dict:
        return {
            "neck": self.neck.to_dict(),
            "coorientation": self.coorientation,
            "delta": self.delta,
            "radius": self.radius,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CollarSpec":
        return cls(Neck.from_dict(d["neck"]), d["coorientation"], float(d["delta"]), float(d["radius"]))


def reduced_collar(neck: Neck, coorientation: str = "+", delta: float = DEFAULT_DELTA) -> CollarSpec:
    """``delta``-reduced collar of a hexagon neck, radius ``asinh(delta / sinh l)``."""
    if not (0.0 < delta <= 1.0):
        raise DomainError(f"delta must lie in (0, 1], got {delta}")
    if coorientation not in ("+", "-", "both"):
        raise ConfigError(f"coorientation must be '+', '-' or 'both', got {coorientation!r}")
    if neck.kind == "side" and coorientation != "+":
        raise ConfigError("side necks only have the inward coorientation '+'")
    return CollarSpec(neck, coorientation, float(delta), hex_collar_radius(delta, neck.length))


# ---------------------------------------------------------------------------
# thick-thin decomposition

DeltaFn = Union[float, Callable[[str, str], float]]


@dataclass(frozen=True)
class BoundaryPiece:
    """One side of a complement piece.

    ``kind == "geodesic"``: the arclength range ``[start, end]`` of hexagon
    side ``source``. ``kind == "collar"``: the arc at signed distance
    ``offset`` from the core of collar ``source``, over the core range
    ``start -> end`` (which may decrease).
    """

    kind: str
    source: str
    start: float
    end: float
    offset: float
    length: float

    def to_dict(self) -> dict:
        return dict(kind=self.kind, source=self.source, start=self.start, end=self.end,
                    offset=self.offset, length=self.length)


@dataclass(frozen=True)
class ComplementPiece:
    shape: str
    sides: tuple[BoundaryPiece, ...]

    @property
    def side_lengths(self) -> tuple[float, ...]:
        return tuple(p.length for p in self.sides)

    def to_dict(self) -> dict:
        return {"shape": self.shape, "sides": [p.to_dict() for p in self.sides]}


@dataclass(frozen=True)
class ThickThinDecomp:
    hexagon: RAHexagon
    necks: tuple[Neck, ...]
    collars: tuple[CollarSpec, ...]
    complement: tuple[ComplementPiece, ...]
    separations: dict = field(default_factory=dict)

    @property
    def min_separation(self) -> float:
        return min(self.separations.values()) if self.separations else math.inf

    @property
    def side_length_interval(self) -> tuple[float, float]:
        lengths = [x for piece in self.complement for x in piece.side_lengths]
        return min(lengths), max(lengths)

    def collar(self, label: str) -> CollarSpec:
        for c in self.collars:
            if c.label == label:
                return c
        raise KeyError(label)

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "type": "ThickThinDecomp",
            "hexagon": self.hexagon.to_dict(),
            "necks": [n.to_dict() for n in self.necks],
            "collars": [c.to_dict() for c in self.collars],
            "complement": [p.to_dict() for p in self.complement],
            "separations": {"|".join(k): v for k, v in sorted(self.separations.items())},
            "min_separation": self.min_separation,
        }


def select_necks(
    hexa: RAHexagon,
    eps_min: float = DEFAULT_EPS_MIN,
    eps_max: float = DEFAULT_EPS_MAX,
    extra_sides: Iterable[str] = (),
    L: float = DEFAULT_L,
) -> list[Neck]:
    """Neck set: short necks plus the requested exceptional sides.

    Necks shorter than ``eps_min`` are always taken; those in
    ``[eps_min, eps_max)`` are taken iff shorter than ``eps_max / 2``.
    """
    if not (0.0 < eps_min < eps_max):
        raise ConfigError(f"need 0 < eps_min < eps_max, got {eps_min}, {eps_max}")
    extra = sorted(set(extra_sides), key=_idx)
    for s in extra:
        length = hexa.side(s)
        if not (eps_max <= length <= L):
            raise ConfigError(f"extra side {s} has length {length} outside [{eps_max}, {L}]")
    for s in extra:
        for t in extra:
            if (_idx(s) - _idx(t)) % 6 in (1, 5):
                raise ConfigError(f"extra sides {s} and {t} are adjacent")
    chosen = []
    for neck in all_necks(hexa):
        ell = neck.length
        short = ell < eps_min or (ell < eps_max and ell < 0.5 * eps_max)
        if short or neck.label in extra:
            chosen.append(neck)
    return chosen


def _delta_of(delta_fn: DeltaFn, label: str, coorientation: str) -> float:
    d = delta_fn(label, coorientation) if callable(delta_fn) else delta_fn
    d = float(d)
    if not (0.0 < d <= 1.0):
        raise ConfigError(f"delta for {label}{coorientation} must lie in (0, 1], got {d}")
    return d




def _perpendicular(hexa: RAHexagon, n1: Neck, n2: Neck, nonside_len: dict) -> tuple:
    """Common perpendicular between two neck segments.

    Returns ``(d, facing1, facing2)``: the perpendicular's length and the
    coorientation of each neck that faces the other. ``d`` is ``None`` when
    the necks touch (adjacent sides, a side and an incident non-side neck,
    or two crossing non-side necks).
    """
    if n1.kind == "nonside" and n2.kind == "nonside":
        return None, "", ""
    if n1.kind == "nonside":
        d, f2, f1 = _perpendicular(hexa, n2, n1, nonside_len)
        return d, f1, f2
    lengths = hexa.cycle_lengths()
    k = _idx(n1.label)
    if n2.kind == "side":
        diff = (_idx(n2.label) - k) % 6
        if diff in (1, 5):
            return None, "", ""
        if diff == 2:
            return lengths[(k + 1) % 6], "+", "+"
        if diff == 4:
            return lengths[(k - 1) % 6], "+", "+"
        free = n1.label if n1.label in FREE_LABELS else n2.label
        return nonside_len[free], "+", "+"
    rel = (k - 2 * FREE_LABELS.index(n2.incident_side)) % 6
    if rel in (0, 3):
        return None, "", ""
    bp, bm = n2.feet
    yp, ym = n2.opposite_feet
    d, facing = {5: (bp, "+"), 4: (yp, "+"), 1: (bm, "-"), 2: (ym, "-")}[rel]
    return d, "+", facing


def _piece_builder(hexa: RAHexagon, side_radius: dict):
    lengths = hexa.cycle_lengths()

    def seg(k: int, s0: float, s1: float) -> BoundaryPiece:
        if s0 == 0.0 and (k - 1) % 6 in side_radius:
            s0 = side_radius[(k - 1) % 6]
        if s1 == lengths[k] and (k + 1) % 6 in side_radius:
            s1 = s1 - side_radius[(k + 1) % 6]
        return BoundaryPiece("geodesic", CYCLE[k], s0, s1, 0.0, s1 - s0)

    def side(k: int) -> BoundaryPiece:
        if k in side_radius:
            r = side_radius[k]
            return BoundaryPiece("collar", CYCLE[k], 0.0, lengths[k], r, lengths[k] * math.cosh(r))
        return seg(k, 0.0, lengths[k])

    return lengths, seg, side


def _complement(hexa: RAHexagon, collars: list[CollarSpec]) -> tuple[ComplementPiece, ...]:
    side_radius = {_idx(c.neck.label): c.radius for c in collars if c.neck.kind == "side"}
    lengths, seg, side = _piece_builder(hexa, side_radius)
    nonside = [c for c in collars if c.neck.kind == "nonside"]
    if not nonside:
        return (ComplementPiece("hexagon", tuple(side(k) for k in range(6))),)
    neck = nonside[0].neck
    rp = next(c.radius for c in nonside if c.coorientation in ("+", "both"))
    rm = next(c.radius for c in nonside if c.coorientation in ("-", "both"))
    s = 2 * FREE_LABELS.index(neck.incident_side)
    o = (s + 3) % 6
    bp, _ = neck.feet
    _, ym = neck.opposite_feet
    ell = neck.length
    plus = (
        seg(o, ym + rp, lengths[o]),
        side((o + 1) % 6),
        side((o + 2) % 6),
        seg(s, 0.0, bp - rp),
        BoundaryPiece("collar", neck.label + "+", 0.0, ell, rp, ell * math.cosh(rp)),
    )
    minus = (
        seg(s, bp + rm, lengths[s]),
        side((s + 1) % 6),
        side((s + 2) % 6),
        seg(o, 0.0, ym - rm),
        BoundaryPiece("collar", neck.label + "-", ell, 0.0, -rm, ell * math.cosh(rm)),
    )
    return ComplementPiece("pentagon", plus), ComplementPiece("pentagon", minus)


def thick_thin(
    hexa: RAHexagon,
    eps_min: float = DEFAULT_EPS_MIN,
    eps_max: float = DEFAULT_EPS_MAX,
    extra_sides: Iterable[str] = (),
    delta_fn: DeltaFn = DEFAULT_DELTA,
    L: float = DEFAULT_L,
    necks: Iterable[Neck] | None = None,
) -> ThickThinDecomp:
    """Collar the short necks (and chosen exceptional sides) of a hexagon.

    Parameters
    ----------
    hexa : RAHexagon
    eps_min, eps_max : float
        Short-neck thresholds, see :func:`select_necks`.
    extra_sides : iterable of str
        Pairwise nonadjacent sides with length in ``[eps_max, L]`` to collar too.
    delta_fn : float or callable
        Collar parameter, either constant or ``delta_fn(label, coorientation)``.
    L : float
        Upper length for exceptional sides.
    necks : iterable of Neck, optional
        Use this neck set instead of selecting one (the thresholds are then
        ignored). Used to transport a neck set to an altered hexagon.

    Returns
    -------
    ThickThinDecomp
        Collars, complement pieces and the separation of every collar pair.

    Raises
    ------
    GeometryError
        If two chosen necks touch or their collars overlap.
    """
    if necks is None:
        chosen = select_necks(hexa, eps_min, eps_max, extra_sides, L)
    else:
        chosen = list(necks)
    collars: list[CollarSpec] = []
    for n in chosen:
        sides = ("+",) if n.kind == "side" else ("+", "-")
        for co in sides:
            collars.append(reduced_collar(n, co, _delta_of(delta_fn, n.label, co)))

    nonside_len = {n.incident_side: n.length for n in all_necks(hexa) if n.kind == "nonside"}
    radius = {c.label: c.radius for c in collars}
    seps = {}
    for i, n1 in enumerate(chosen):
        for n2 in chosen[i + 1:]:
            d, f1, f2 = _perpendicular(hexa, n1, n2, nonside_len)
            if d is None:
                raise GeometryError(f"necks {n1.label} and {n2.label} touch; their collars overlap")
            r1 = radius[n1.label if n1.kind == "side" else n1.label + f1]
            r2 = radius[n2.label if n2.kind == "side" else n2.label + f2]
            sep = d - r1 - r2
            if not sep > 0.0:
                raise GeometryError(
                    f"collars of {n1.label} and {n2.label} overlap (separation {sep:.3g})"
                )
            seps[(n1.label, n2.label)] = sep
    # a side collar must not reach the opposite side either
    for c in collars:
        if c.neck.kind == "side":
            k = _idx(c.neck.label)
            free = CYCLE[k] if CYCLE[k] in FREE_LABELS else CYCLE[(k + 3) % 6]
            if not c.radius < nonside_len[free]:
                raise GeometryError(f"collar of {c.label} reaches the opposite side")
    pieces = _complement(hexa, collars)
    for p in pieces:
        for bp in p.sides:
            if not bp.length > 0.0:
                raise GeometryError(f"complement side on {bp.source} has length {bp.length:.3g}")
    return ThickThinDecomp(hexa, tuple(chosen), tuple(collars), pieces, seps)


# ---------------------------------------------------------------------------
# neck distortion under a change of one free side


def _altered_index(hp: RAHexagon, hq: RAHexagon) -> int | None:
    diff = [i for i in range(3) if hp.free[i] != hq.free[i]]
    if len(diff) > 1:
        raise ConfigError("hexagons differ in more than one free side")
    return diff[0] if diff else None


def _admissible_labels(altered: int) -> tuple[str, ...]:
    """Necks that neither touch nor are adjacent to the altered free side."""
    k = 2 * altered
    sides = tuple(CYCLE[(k + d) % 6] for d in (2, 3, 4))
    nonside = tuple(NONSIDE_LABELS[(altered + d) % 3] for d in (1, 2))
    return sides + nonside


def distortion_bound(L: float = DEFAULT_L, eps: float = 0.1) -> dict:
    """Constants bounding how short necks move when one free side changes.

    ``M1`` bounds the length ratio of the determined side opposite the
    altered side, ``M2`` that of a non-side neck and ``M3`` its foot
    displacement. ``M`` is their maximum.

    The non-side estimate uses ``sinh x >= tanh(x_min) cosh x`` for feet of
    length at least ``x_min = asinh(1/sinh eps)``, which holds for necks
    shorter than ``eps``.
    """
    if not (L > 0 and eps > 0):
        raise DomainError("L and eps must be positive")
    m1p = 1.0 + math.cosh(L)
    x_min = math.asinh(1.0 / math.sinh(eps))
    m2p = 2.0 * math.cosh(L) / math.tanh(x_min) ** 2
    m3p = math.sqrt(m2p) * math.cosh(L)
    m1 = math.sqrt(m1p)
    m2 = math.sqrt(m2p)
    m3 = math.log(m3p)
    return {"M1p": m1p, "M2p": m2p, "M3p": m3p, "M1": m1, "M2": m2, "M3": m3, "M": max(m1, m2, m3)}


def _neck_by_label(hexa: RAHexagon, label: str) -> Neck:
    if label in NONSIDE_LABELS:
        return nonside_neck(hexa, FREE_LABELS[NONSIDE_LABELS.index(label)])
    return side_neck(hexa, label)


def neck_distortion(
    hp: RAHexagon,
    hq: RAHexagon,
    neck_label: str,
    L: float = DEFAULT_L,
    eps: float = 0.1,
) -> tuple[float, float, float]:
    """Length ratio and foot displacement of a short neck after altering one side.

    Returns
    -------
    ratio : float
        ``l(neck in hq) / l(neck in hp)``.
    displacement : float
        ``|x+ - x+'|`` for a non-side neck, 0 for a side.
    M : float
        The bound from :func:`distortion_bound`.

    Raises
    ------
    DomainError
        If the altered side exceeds ``L`` in either hexagon.
    ConfigError
        If the neck touches or is adjacent to the altered side, or is not
        shorter than ``eps`` in both hexagons.
    GeometryError
        If the computed values violate the bound.
    """
    i = _altered_index(hp, hq)
    if i is not None:
        if hp.free[i] > L or hq.free[i] > L:
            raise DomainError(f"altered side exceeds L = {L}")
        if neck_label not in _admissible_labels(i):
            raise ConfigError(f"neck {neck_label} touches or is adjacent to the altered side")
    n, m = _neck_by_label(hp, neck_label), _neck_by_label(hq, neck_label)
    M = distortion_bound(L, eps)["M"]
    if i is None:
        return 1.0, 0.0, M
    if not (n.length < eps and m.length < eps):
        raise ConfigError(f"neck {neck_label} is not shorter than eps = {eps} in both hexagons")
    ratio = m.length / n.length
    disp = abs(n.feet[0] - m.feet[0]) if n.kind == "nonside" else 0.0
    if not (1.0 / M <= ratio <= M and disp <= M):
        raise GeometryError(f"distortion bound violated: ratio {ratio}, displacement {disp}, M {M}")
    return ratio, disp, M


# ---------------------------------------------------------------------------
# explicit realization in the hyperboloid model


@dataclass
class HexagonRealization:
    """A hexagon placed in the hyperboloid model.

    ``frames[k]`` sits at the start vertex of side ``CYCLE[k]``, points along
    it, and has the hexagon to its left. ``closure`` measures how far the
    walk around the six sides fails to return to the identity.
    """

    hexagon: RAHexagon
    frames: tuple[np.ndarray, ...]
    closure: float
    nonside: dict

    def vertex(self, k: int) -> np.ndarray:
        return self.frames[k][:, 0].copy()

    def neck_frame(self, label: str) -> np.ndarray:
        """Frame along a neck: sides start at their first vertex, non-side
        necks at their foot on the free side with the plus part to the left."""
        label = label.rstrip("+-")
        if label in CYCLE:
            return self.frames[_idx(label)]
        neck = self.nonside[label]
        s = 2 * FREE_LABELS.index(neck.incident_side)
        return self.frames[s] @ lorentz.boost_x(neck.feet[0]) @ lorentz.LEFT_TURN

    def piece_points(self, piece: BoundaryPiece, tau: np.ndarray) -> np.ndarray:
        u = piece.start + (piece.end - piece.start) * np.asarray(tau, dtype=float)
        if piece.kind == "geodesic":
            return lorentz.fermi_point(self.frames[_idx(piece.source)], u, np.zeros_like(u))
        return lorentz.fermi_point(self.neck_frame(piece.source), u, np.full_like(u, piece.offset))


def realize(hexa: RAHexagon, anchor: int = 0) -> HexagonRealization:
    """Walk around the hexagon with right turns of pi/2 to the left.

    Side ``CYCLE[anchor]`` starts at the origin of the hyperboloid along the
    first axis. Anchoring near the region of interest keeps coordinates
    small when the hexagon has very long sides.
    """
    lengths = hexa.cycle_lengths()
    frame = np.eye(3)
    frames: list = [None] * 6
    for j in range(6):
        k = (anchor + j) % 6
        frames[k] = frame
        frame = frame @ lorentz.boost_x(lengths[k]) @ lorentz.LEFT_TURN
    closure = float(np.max(np.abs(frame - np.eye(3))))
    nonside = {n.label: n for n in (nonside_neck(hexa, s) for s in FREE_LABELS)}
    return HexagonRealization(hexa, tuple(frames), closure, nonside)


# ---------------------------------------------------------------------------
# piecewise map between a hexagon and an altered copy


def _collar_map_params(cp: CollarSpec, cq: CollarSpec, altered_label: str | None):
    """Affine leaf maps ``u -> su*u``, ``t -> st*t + shift`` on a collar."""
    su = cq.neck.length / cp.neck.length
    if cp.neck.kind == "side":
        if cp.neck.label == altered_label:
            return su, cq.radius / cp.radius, 0.0
        return su, 1.0, 0.0
    return su, 1.0, cq.neck.feet[0] - cp.neck.feet[0]


def _leaf_distortion(su: float, st: float, shift: float, tmin: float, tmax: float) -> float:
    """Bilipschitz constant of the collar block.

    Geodesic leaves are stretched by ``st``; the equidistant arc at ``t`` is
    stretched by ``su cosh(st t + shift) / cosh t``. The foliations are
    orthogonal on both sides, so the constant is the worst of these.
    """
    t = np.linspace(tmin, tmax, 4001)
    arc = su * np.cosh(st * t + shift) / np.cosh(t)
    vals = np.concatenate([arc, 1.0 / arc, [st, 1.0 / st]])
    return float(vals.max())


def _polygon_contains(z: np.ndarray, poly: np.ndarray) -> np.ndarray:
    x, y = z[:, 0:1], z[:, 1:2]
    x0, y0 = poly[:, 0], poly[:, 1]
    x1, y1 = np.roll(x0, -1), np.roll(y0, -1)
    crosses = (y0 > y) != (y1 > y)
    with np.errstate(divide="ignore", invalid="ignore"):
        xint = x0 + (y - y0) * (x1 - x0) / (y1 - y0)
    return (np.sum(crosses & (x < xint), axis=1) % 2) == 1


def _distance_to_polyline(z: np.ndarray, poly: np.ndarray) -> np.ndarray:
    p0 = poly
    p1 = np.roll(poly, -1, axis=0)
    e = p1 - p0
    ee = np.maximum(np.sum(e * e, axis=1), 1e-300)
    w = z[:, None, :] - p0[None, :, :]
    s = np.clip(np.sum(w * e[None], axis=2) / ee, 0.0, 1.0)
    proj = p0[None] + s[..., None] * e[None]
    return np.sqrt(np.min(np.sum((z[:, None, :] - proj) ** 2, axis=2), axis=1))


@dataclass
class _PieceMap:
    """Interpolating map of one complement piece.

    ``cx`` maps global source coordinates to a chart centered on the piece
    and ``cy`` does the same on the target; ``zx`` and ``zy`` are the
    matched boundary samples in those charts (Klein model).
    """

    cx: np.ndarray
    cy: np.ndarray
    zx: np.ndarray
    zy: np.ndarray

    def klein(self, z: np.ndarray) -> np.ndarray:
        return kernels.mvc_map(z, self.zx, self.zy)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        z = lorentz.to_klein(np.atleast_2d(x) @ self.cx.T)
        w = self.klein(z)
        return lorentz.from_klein(w) @ lorentz.inverse(self.cy).T

    def contains(self, x: np.ndarray) -> np.ndarray:
        z = lorentz.to_klein(np.atleast_2d(x) @ self.cx.T)
        return _polygon_contains(z, self.zx)

    def interior_samples(self, grid: int = 24, margin: float = 0.04, min_points: int = 40) -> np.ndarray:
        lo, hi = self.zx.min(axis=0), self.zx.max(axis=0)
        diam = float(np.max(hi - lo))
        z = np.empty((0, 2))
        while grid <= 400:
            gx, gy = np.meshgrid(np.linspace(lo[0], hi[0], grid), np.linspace(lo[1], hi[1], grid))
            z = np.column_stack([gx.ravel(), gy.ravel()])
            z = z[_polygon_contains(z, self.zx)]
            z = z[_distance_to_polyline(z, self.zx) > margin * diam]
            if len(z) >= min_points:
                return z
            grid *= 2
        if len(z) == 0:
            raise GeometryError("complement piece too thin to sample")
        return z

    def distortion(self, grid: int = 24, margin: float = 0.04, rel_step: float = 1e-5) -> float:
        """Largest hyperbolic stretch of the interpolating map on interior samples."""
        z = self.interior_samples(grid, margin)
        diam = float(np.max(self.zx.max(axis=0) - self.zx.min(axis=0)))
        h = rel_step * diam
        stencil = np.concatenate([z + [h, 0], z - [h, 0], z + [0, h], z - [0, h], z])
        img = self.klein(stencil).reshape(5, len(z), 2)
        jac = np.empty((len(z), 2, 2))
        jac[:, :, 0] = (img[0] - img[1]) / (2 * h)
        jac[:, :, 1] = (img[2] - img[3]) / (2 * h)
        gx_half = lorentz.klein_metric_sqrt(z)
        gy_half = lorentz.klein_metric_sqrt(img[4])
        hyp = gy_half @ jac @ np.linalg.inv(gx_half)
        sv = np.linalg.svd(hyp, compute_uv=False)
        return float(np.max(np.maximum(sv[:, 0], 1.0 / sv[:, 1])))


@dataclass
class HexagonMap:
    """Piecewise map from a hexagon to a copy with one free side altered.

    Collars go to collars by affine maps of the collar coordinates
    ``(u, t)`` (arclength along the core, signed distance from it). The
    complement goes to the complement through the constant-speed boundary
    correspondence, extended inside by mean value interpolation in the
    Klein model.
    """

    source: RAHexagon
    target: RAHexagon
    delta: float
    altered: str | None
    decomposition: ThickThinDecomp
    target_decomposition: ThickThinDecomp
    real_source: HexagonRealization
    real_target: HexagonRealization
    piece_maps: list = field(default_factory=list)

    # -- collar blocks --------------------------------------------------
    def collar_pairs(self):
        for cp in self.decomposition.collars:
            yield cp, self.target_decomposition.collar(cp.label)

    def same_radius_residuals(self) -> dict:
        """``R'+ + R'- - (R+ + R-)`` for each non-side neck collar."""
        out = {}
        dec, tdec = self.decomposition, self.target_decomposition
        for n in dec.necks:
            if n.kind == "nonside":
                r = dec.collar(n.label + "+").radius + dec.collar(n.label + "-").radius
                rq = tdec.collar(n.label + "+").radius + tdec.collar(n.label + "-").radius
                out[n.label] = rq - r
        return out

    def collar_map(self, label: str, u, t):
        """Image collar coordinates of ``(u, t)`` in the collar of neck ``label``."""
        cp = next(c for c in self.decomposition.collars if c.neck.label == label.rstrip("+-"))
        cq = self.target_decomposition.collar(cp.label)
        su, st, shift = _collar_map_params(cp, cq, self.altered)
        return su * np.asarray(u, dtype=float), st * np.asarray(t, dtype=float) + shift

    def side_map(self, label: str, s):
        """Image of arclength ``s`` on a free side (constant speed)."""
        return np.asarray(s, dtype=float) * self.target.side(label) / self.source.side(label)

    def collar_distortion(self) -> dict:
        out = {}
        for cp, cq in self.collar_pairs():
            if cp.neck.label == self.altered:
                continue
            su, st, shift = _collar_map_params(cp, cq, self.altered)
            if cp.neck.kind == "side":
                tmin, tmax = 0.0, cp.radius
            elif cp.coorientation == "+":
                tmin, tmax = 0.0, cp.radius
            else:
                tmin, tmax = -cp.radius, 0.0
            out[cp.label] = _leaf_distortion(su, st, shift, tmin, tmax)
        return out

    # -- complement -----------------------------------------------------
    def complement_distortion(self, grid: int = 24) -> list[float]:
        return [pm.distortion(grid=grid) for pm in self.piece_maps]

    def distortion(self, grid: int = 24) -> dict:
        """Measured bilipschitz constants outside the altered side's collar."""
        coll = self.collar_distortion()
        comp = self.complement_distortion(grid)
        worst = max(list(coll.values()) + comp) if (coll or comp) else 1.0
        return {"collars": coll, "complement": comp, "K": worst}

    # -- pointwise evaluation -------------------------------------------
    def __call__(self, x) -> np.ndarray:
        """Map hyperboloid points of the source realization to the target."""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        out = np.full_like(x, np.nan)
        todo = np.ones(len(x), dtype=bool)
        for cp, cq in self.collar_pairs():
            fp = self.real_source.neck_frame(cp.label)
            fq = self.real_target.neck_frame(cq.label)
            u, t = lorentz.fermi_coords(fp, x)
            tol = 1e-12
            if cp.coorientation == "-":
                tin = (t <= tol) & (t >= -cp.radius - tol)
            else:
                tin = (t >= -tol) & (t <= cp.radius + tol)
            inside = todo & tin & (u >= -tol) & (u <= cp.neck.length + tol)
            if inside.any():
                su, st, shift = _collar_map_params(cp, cq, self.altered)
                out[inside] = lorentz.fermi_point(fq, su * u[inside], st * t[inside] + shift)
                todo &= ~inside
        for pm in self.piece_maps:
            if not todo.any():
                break
            inside = todo & pm.contains(x)
            if inside.any():
                out[inside] = pm(x[inside])
                todo &= ~inside
        if todo.any():
            raise DomainError("point outside the hexagon")
        return out


def walk_piece(piece: ComplementPiece, counts) -> tuple[np.ndarray, float]:
    """Boundary samples of a complement piece in a chart of its own.

    The piece is traced from the start of its first side: geodesic sides
    are straight runs, collar sides are equidistant arcs with the core on
    the right, and consecutive sides meet at right angles. Returns the
    samples and the closure defect of the walk.
    """
    frame = np.eye(3)
    pts = []
    for bp, n in zip(piece.sides, counts):
        tau = np.arange(n) / n
        if bp.kind == "geodesic":
            local = np.stack([np.cosh(tau * bp.length), np.sinh(tau * bp.length), 0 * tau], axis=-1)
            step = lorentz.boost_x(bp.length)
        else:
            r, du = abs(bp.offset), abs(bp.end - bp.start)
            local = np.array([lorentz.equidistant_step(r, x * du)[:, 0] for x in tau])
            step = lorentz.equidistant_step(r, du)
        pts.append(local @ frame.T)
        frame = frame @ step @ lorentz.LEFT_TURN
    return np.concatenate(pts), float(np.max(np.abs(frame - np.eye(3))))


def _piece_start_frame(real: HexagonRealization, piece: ComplementPiece) -> np.ndarray:
    bp = piece.sides[0]
    if bp.kind == "geodesic":
        return real.frames[_idx(bp.source)] @ lorentz.boost_x(bp.start)
    f = real.neck_frame(bp.source) @ lorentz.boost_x(bp.start) @ lorentz.boost_y(bp.offset)
    return f if bp.end >= bp.start else f @ lorentz.rotation(np.pi)


def hexagon_map(
    hp: RAHexagon,
    hq: RAHexagon,
    delta: float = DEFAULT_DELTA,
    L: float = DEFAULT_L,
    eps: float = DEFAULT_EPS_MAX,
    samples: int = 480,
) -> HexagonMap:
    """Build the piecewise map between two hexagons differing in one free side.

    The neck set is every neck of ``hp`` shorter than ``eps`` plus every free
    side of length at most ``L``. Collar parameters on the target follow the
    radius matching rules: free sides keep ``delta``; determined sides keep
    their radius; a non-side neck keeps ``x+ - R+`` on each side.

    Raises
    ------
    GeometryError
        If a matched collar is not a valid rectangle or collars overlap.
    """
    i = _altered_index(hp, hq)
    altered = None if i is None else FREE_LABELS[i]
    for k in range(3):
        if hp.free[k] != hq.free[k] and (hp.free[k] > L or hq.free[k] > L):
            raise DomainError(f"altered side exceeds L = {L}")
    necks = [n for n in all_necks(hp) if n.length < eps or (n.label in FREE_LABELS and n.length <= L)]
    dp = thick_thin(hp, delta_fn=delta, necks=necks)
    qnecks = [_neck_by_label(hq, n.label) for n in necks]
    qneck = {n.label: n for n in qnecks}

    def delta_q(label: str, co: str) -> float:
        if label in FREE_LABELS:
            return delta
        cp = dp.collar(label if label in CYCLE else label + co)
        n, m = cp.neck, qneck[label]
        if label in DET_LABELS:
            r = cp.radius
        else:
            k = 0 if co == "+" else 1
            r = cp.radius + m.feet[k] - n.feet[k]
        if not r > 0.0:
            raise GeometryError(f"matched radius for {label}{co} is not positive")
        d = math.sinh(r) * math.sinh(m.length)
        if d > 1.0:
            raise GeometryError(f"matched collar of {label}{co} is not a rectangle (delta' = {d:.3g})")
        return d

    dq = thick_thin(hq, delta_fn=delta_q, necks=qnecks)
    rp, rq = realize(hp), realize(hq)
    hm = HexagonMap(hp, hq, delta, altered, dp, dq, rp, rq)
    for pp, pq in zip(dp.complement, dq.complement):
        total = sum(pp.side_lengths)
        counts = [max(12, int(round(samples * x / total))) for x in pp.side_lengths]
        xs, cl_p = walk_piece(pp, counts)
        ys, cl_q = walk_piece(pq, counts)
        if max(cl_p, cl_q) > 1e-6:
            raise GeometryError(f"complement piece does not close (defect {max(cl_p, cl_q):.3g})")
        cx, cy = lorentz.centering(xs), lorentz.centering(ys)
        # global -> piece chart is the inverse of the piece's start frame
        gx = cx @ lorentz.inverse(_piece_start_frame(rp, pp))
        gy = cy @ lorentz.inverse(_piece_start_frame(rq, pq))
        hm.piece_maps.append(
            _PieceMap(gx, gy, lorentz.to_klein(xs @ cx.T), lorentz.to_klein(ys @ cy.T))
        )
    return hm
