"""Elements and elementary subgroups of PSL(2, R), ball samples of
subgroups and a Hausdorff surrogate for Chabauty convergence.

Boundary points of the upper half plane are real numbers or ``inf``.
Matrices are stored as rows ``(m11, m12, m21, m22)``; ``g`` and ``-g`` are
the same element and distances identify them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetError, ConfigError, DomainError
from .kernels import directed_hausdorff

__all__ = [
    "Isometry",
    "Classification",
    "classify_isometry",
    "rotation",
    "translation",
    "parabolic",
    "frame_to_point",
    "frame_to_axis",
    "frame_to_boundary",
    "ElementarySubgroup",
    "GroupSample",
    "displacement",
    "sample_subgroup",
    "chabauty_distance",
    "limit_schedule",
    "limit_experiment",
    "FAMILIES",
]

TRACE_TOL = 1e-10
DEDUP_TOL = 1e-9
MAX_ELEMENTS = 1_000_000


def _normalize(m: np.ndarray) -> np.ndarray:
    """Scale to determinant 1 and pick the sign with nonnegative trace."""
    m = np.asarray(m, dtype=float).reshape(4)
    det = m[0] * m[3] - m[1] * m[2]
    if not det > 0:
        raise DomainError(f"matrix must have positive determinant, got {det}")
    m = m / math.sqrt(det)
    tr = m[0] + m[3]
    if tr < 0 or (tr == 0 and m[np.flatnonzero(m)[0]] < 0):
        m = -m
    return m


@dataclass(frozen=True)
class Isometry:
    """Orientation preserving isometry of the upper half plane."""

    m11: float
    m12: float
    m21: float
    m22: float

    @classmethod
    def from_matrix(cls, m) -> "Isometry":
        return cls(*(float(x) for x in _normalize(m)))

    @property
    def array(self) -> np.ndarray:
        return np.array([self.m11, self.m12, self.m21, self.m22])

    @property
    def matrix(self) -> np.ndarray:
        return self.array.reshape(2, 2)

    @property
    def trace(self) -> float:
        return self.m11 + self.m22

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return Isometry.from_matrix(self.matrix @ other.matrix)

    def inverse(self) -> "Isometry":
        return Isometry.from_matrix([self.m22, -self.m12, -self.m21, self.m11])

    def apply(self, z):
        if z == math.inf:
            return math.inf if self.m21 == 0 else self.m11 / self.m21
        den = self.m21 * z + self.m22
        if den == 0:
            return math.inf
        return (self.m11 * z + self.m12) / den

    def to_dict(self) -> dict:
        return {"schema": 1, "type": "Isometry", "matrix": [self.m11, self.m12, self.m21, self.m22]}

    @classmethod
    def from_dict(cls, d: dict) -> "Isometry":
        if d.get("type") != "Isometry":
            raise ConfigError("not an Isometry record")
        return cls.from_matrix(d["matrix"])


IDENTITY = Isometry(1.0, 0.0, 0.0, 1.0)


@dataclass(frozen=True)
class Classification:
    kind: str  # identity | elliptic | parabolic | hyperbolic
    angle: float | None = None
    center: complex | None = None
    xi: float | None = None
    axis: tuple[float, float] | None = None
    translation_length: float | None = None


def classify_isometry(g: Isometry) -> Classification:
    """Type and fixed-point data of ``g``.

    Elliptic angles are counterclockwise in ``[0, 2 pi)``; a hyperbolic
    axis is returned as ``(repelling, attracting)``.

    >>> classify_isometry(Isometry.from_matrix([1, 1, 0, 1])).kind
    'parabolic'
    """
    a, b, c, d = g.m11, g.m12, g.m21, g.m22
    tr = abs(a + d)
    scale = max(1.0, abs(a), abs(b), abs(c), abs(d))
    if abs(tr - 2.0) <= TRACE_TOL:
        if max(abs(a - d), abs(b), abs(c)) <= TRACE_TOL * scale:
            return Classification("identity")
        xi = math.inf if abs(c) <= TRACE_TOL * scale else (a - d) / (2.0 * c)
        return Classification("parabolic", xi=xi)
    if tr < 2.0:
        root = math.sqrt(4.0 - tr * tr)
        z = complex(a - d, root) / (2.0 * c)
        if z.imag < 0:
            z = z.conjugate()
        w = c * z + d
        angle = (-2.0 * math.atan2(w.imag, w.real)) % (2.0 * math.pi)
        return Classification("elliptic", angle=angle, center=z)
    length = 2.0 * math.acosh(0.5 * tr)
    if abs(c) <= 1e-15 * scale:
        fixed = [math.inf, b / (d - a)]
        att = math.inf if abs(a) > abs(d) else fixed[1]
    else:
        disc = math.sqrt((a - d) ** 2 + 4.0 * b * c)
        fixed = [(a - d + disc) / (2.0 * c), (a - d - disc) / (2.0 * c)]
        # |g'(z)| = 1/(cz + d)^2 < 1 at the attracting point
        att = min(fixed, key=lambda z: -abs(c * z + d))
    rep = fixed[0] if fixed[1] == att else fixed[1]
    return Classification("hyperbolic", axis=(rep + 0.0, att + 0.0), translation_length=length)


# ---------------------------------------------------------------------------
# standard elements and frames


def rotation(theta: float, p: complex = 1j) -> Isometry:
    """Counterclockwise rotation by ``theta`` about ``p``."""
    c, s = math.cos(0.5 * theta), math.sin(0.5 * theta)
    r = Isometry.from_matrix([c, s, -s, c])
    if p == 1j:
        return r
    f = frame_to_point(p)
    return f @ r @ f.inverse()


def translation(tau: float, axis: tuple[float, float] = (0.0, math.inf)) -> Isometry:
    """Translation by ``tau`` along the axis oriented from ``axis[0]`` to ``axis[1]``."""
    h = 0.5 * tau
    g = Isometry.from_matrix([math.exp(h), 0.0, 0.0, math.exp(-h)])
    f = frame_to_axis(axis)
    return f @ g @ f.inverse()


def parabolic(x: float, xi: float = math.inf) -> Isometry:
    f = frame_to_boundary(xi)
    return f @ Isometry.from_matrix([1.0, x, 0.0, 1.0]) @ f.inverse()


def frame_to_point(p: complex) -> Isometry:
    """Affine map sending ``i`` to ``p``."""
    if not p.imag > 0:
        raise DomainError(f"point must lie in the upper half plane, got {p}")
    y = math.sqrt(p.imag)
    return Isometry.from_matrix([y, p.real / y, 0.0, 1.0 / y])


def frame_to_axis(axis: tuple[float, float]) -> Isometry:
    """Isometry sending ``0`` to ``axis[0]`` and ``inf`` to ``axis[1]``."""
    u, v = (float(x) for x in axis)
    if u == v:
        raise DomainError("axis endpoints must differ")
    if math.isinf(v):
        return Isometry.from_matrix([1.0, u, 0.0, 1.0])
    if math.isinf(u):
        return Isometry.from_matrix([v, -1.0, 1.0, 0.0])
    s = 1.0 if v > u else -1.0
    return Isometry.from_matrix([v * s, u, s, 1.0])


def frame_to_boundary(xi: float) -> Isometry:
    """Rotation about ``i`` sending ``inf`` to ``xi``."""
    if math.isinf(xi):
        return IDENTITY
    # rotation by theta sends inf to -cot(theta/2)
    return rotation(2.0 * math.atan2(-1.0, xi) % (2.0 * math.pi))


# ---------------------------------------------------------------------------
# elementary subgroups


TAGS = ("Trivial", "K", "k", "A", "a", "A'", "a'", "N", "b", "B")


@dataclass(frozen=True)
class ElementarySubgroup:
    """Closed elementary subgroup given by a tag and its geometric data.

    ``K(p)``, ``k(p, n)``; ``A(axis)``, ``a(axis, t)``; ``A'(axis)``,
    ``a'(axis, t, p)``; ``N(xi)``; ``B(xi)``, ``b(xi, t)``.
    """

    tag: str
    p: complex | None = None
    n: int | None = None
    axis: tuple[float, float] | None = None
    t: float | None = None
    xi: float | None = None
    note: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        need = {
            "Trivial": (), "K": ("p",), "k": ("p", "n"), "A": ("axis",), "a": ("axis", "t"),
            "A'": ("axis",), "a'": ("axis", "t", "p"), "N": ("xi",), "b": ("xi", "t"), "B": ("xi",),
        }
        if self.tag not in need:
            raise ConfigError(f"unknown subgroup tag {self.tag!r}")
        for name in need[self.tag]:
            if getattr(self, name) is None:
                raise ConfigError(f"{self.tag} needs parameter {name}")
        if self.p is not None and not self.p.imag > 0:
            raise ConfigError("fixed point must lie in the upper half plane")
        if self.tag == "k" and (int(self.n) != self.n or self.n < 2):
            raise ConfigError("k(p, n) needs an integer n >= 2")
        if self.t is not None and not self.t > 0:
            raise ConfigError("translation length must be positive")
        if self.axis is not None and self.axis[0] == self.axis[1]:
            raise ConfigError("axis endpoints must differ")
        if self.tag == "a'":
            w = frame_to_axis(self.axis).inverse().apply(self.p)
            if abs(w.real) > 1e-9 * abs(w):
                raise ConfigError("a' rotation centre must lie on the axis")

    def __str__(self) -> str:
        args = {
            "Trivial": "", "K": f"{self.p}", "k": f"{self.p}, {self.n}", "A": f"{self.axis}",
            "a": f"{self.axis}, {self.t}", "A'": f"{self.axis}", "a'": f"{self.axis}, {self.t}, {self.p}",
            "N": f"{self.xi}", "b": f"{self.xi}, {self.t}", "B": f"{self.xi}",
        }[self.tag]
        return f"{self.tag}({args})" if args else "1"


@dataclass(frozen=True)
class GroupSample:
    """Elements of a subgroup moving the base point at most ``ball_radius``."""

    ball_radius: float
    elements: np.ndarray  # (n, 4), normalized rows
    provenance: str
    base: complex = 1j

    def __len__(self) -> int:
        return int(self.elements.shape[0])

    def isometries(self) -> list[Isometry]:
        return [Isometry(*row) for row in self.elements]


def _normalize_rows(m: np.ndarray) -> np.ndarray:
    det = m[:, 0] * m[:, 3] - m[:, 1] * m[:, 2]
    m = m / np.sqrt(det)[:, None]
    tr = m[:, 0] + m[:, 3]
    first = m[np.arange(len(m)), np.argmax(m != 0, axis=1)]
    flip = (tr < 0) | ((tr == 0) & (first < 0))
    m[flip] *= -1.0
    return m


def displacement(m: np.ndarray, base: complex = 1j) -> np.ndarray:
    """``d(base, g base)`` for rows ``g``."""
    m = np.atleast_2d(m)
    z = base
    gz = (m[:, 0] * z + m[:, 1]) / (m[:, 2] * z + m[:, 3])
    arg = 1.0 + np.abs(gz - z) ** 2 / (2.0 * z.imag * gz.imag)
    return np.arccosh(np.maximum(arg, 1.0))


def _conjugate(f: Isometry, m: np.ndarray) -> np.ndarray:
    fm, fi = f.matrix, f.inverse().matrix
    out = np.einsum("ij,njk,kl->nil", fm, m.reshape(-1, 2, 2), fi)
    return out.reshape(-1, 4)


def _sym_grid(half_width: float, step: float, centre: float = 0.0) -> np.ndarray:
    j = int(math.ceil(half_width / step))
    return centre + step * np.arange(-j, j + 1)


def _rotations(thetas: np.ndarray) -> np.ndarray:
    c, s = np.cos(0.5 * thetas), np.sin(0.5 * thetas)
    return np.stack([c, s, -s, c], axis=1)


def _diagonals(taus: np.ndarray) -> np.ndarray:
    e = np.exp(0.5 * taus)
    z = np.zeros_like(taus)
    return np.stack([e, z, z, 1.0 / e], axis=1)


def _half_turns_on_axis(us: np.ndarray) -> np.ndarray:
    """Rotations by pi about ``i e^u`` (on the imaginary axis)."""
    e = np.exp(0.5 * us)
    z = np.zeros_like(us)
    # conjugate [[0, 1], [-1, 0]] by diag(e, 1/e)
    return np.stack([z, e * e, -1.0 / (e * e), z], axis=1)


def _budget(count: float, cap: int) -> None:
    if count > cap:
        raise BudgetError(f"sample would have about {int(count)} elements (cap {cap})")


def _dedup(m: np.ndarray) -> np.ndarray:
    key = np.round(m / DEDUP_TOL).astype(np.int64)
    _, idx = np.unique(key, axis=0, return_index=True)
    return m[np.sort(idx)]


def _closed_form(H: ElementarySubgroup, R: float, base: complex, step: float, cap: int) -> np.ndarray:
    tag = H.tag
    if tag == "Trivial":
        return IDENTITY.array[None, :]
    if tag in ("K", "k"):
        n = H.n if tag == "k" else int(math.ceil(2.0 * math.pi / step))
        _budget(n, cap)
        rots = _rotations(2.0 * math.pi * np.arange(n) / n)
        return _conjugate(frame_to_point(H.p), rots)
    if tag in ("A", "a", "A'", "a'"):
        f = frame_to_axis(H.axis)
        w = f.inverse().apply(base)
        if tag in ("a", "a'"):
            jmax = int(math.floor(R / H.t + 1e-9))
            _budget(2 * jmax + 1, cap)
            taus = H.t * np.arange(-jmax, jmax + 1)
        else:
            _budget(2 * R / step, cap)
            taus = _sym_grid(R, step)
        parts = [_diagonals(taus)]
        if tag in ("A'", "a'"):
            # half turns about points within R/2 of the base's projection
            u0 = math.log(abs(w))
            if tag == "A'":
                _budget(R / step, cap)
                us = _sym_grid(0.5 * R, step, u0)
            else:
                up = math.log(abs(f.inverse().apply(H.p)))
                half = 0.5 * H.t
                kmin = math.ceil((u0 - 0.5 * R - up) / half - 1e-9)
                kmax = math.floor((u0 + 0.5 * R - up) / half + 1e-9)
                us = up + half * np.arange(kmin, kmax + 1)
            parts.append(_half_turns_on_axis(us))
        return _conjugate(f, np.concatenate(parts))
    if tag == "N":
        f = frame_to_boundary(H.xi)
        y = f.inverse().apply(base).imag
        xmax = y * math.sqrt(2.0 * math.cosh(R) - 2.0)
        _budget(2 * xmax / step, cap)
        xs = _sym_grid(xmax, step)
        z, o = np.zeros_like(xs), np.ones_like(xs)
        return _conjugate(f, np.stack([o, xs, z, o], axis=1))
    if tag in ("B", "b"):
        f = frame_to_boundary(H.xi)
        w = f.inverse().apply(base)
        if tag == "b":
            jmax = int(math.floor(R / H.t + 1e-9))
            taus = H.t * np.arange(-jmax, jmax + 1)
        else:
            taus = _sym_grid(R, step)
        root = w.imag * math.sqrt(2.0 * math.cosh(R) - 2.0)
        rows, total = [], 0
        for tau in taus:
            e = math.exp(0.5 * tau)
            centre = -(e * e - 1.0) * w.real / e
            half = root / e
            total += 2 * half / step
            _budget(total, cap)
            xs = _sym_grid(half, step, 0.0)
            xs = xs[np.abs(xs - centre) <= half + step]
            rows.append(np.stack([np.full_like(xs, e), xs, np.zeros_like(xs), np.full_like(xs, 1.0 / e)], axis=1))
        return _conjugate(f, np.concatenate(rows))
    raise ConfigError(f"unknown subgroup tag {tag!r}")


def _words(gens: list[Isometry], R: float, base: complex, max_len: int, cap: int) -> np.ndarray:
    gens = gens + [g.inverse() for g in gens]
    gm = np.array([g.array for g in gens])
    slack = float(displacement(gm, base).max())
    seen = {tuple(np.round(IDENTITY.array / DEDUP_TOL).astype(np.int64))}
    keep = [IDENTITY.array]
    frontier = IDENTITY.array[None, :]
    for _ in range(max_len):
        prod = np.einsum("nij,mjk->nmik", frontier.reshape(-1, 2, 2), gm.reshape(-1, 2, 2)).reshape(-1, 4)
        prod = _normalize_rows(prod)
        prod = prod[displacement(prod, base) <= R + slack]
        new = []
        for row in prod:
            key = tuple(np.round(row / DEDUP_TOL).astype(np.int64))
            if key not in seen:
                seen.add(key)
                new.append(row)
        if not new:
            break
        frontier = np.array(new)
        keep.extend(new)
        _budget(len(keep), cap)
    return np.array(keep)


def sample_subgroup(
    H,
    R: float,
    base: complex = 1j,
    step: float = 1e-3,
    max_elements: int = MAX_ELEMENTS,
    max_word_length: int = 20,
) -> GroupSample:
    """Elements of ``H`` within displacement ``R`` of ``base``.

    ``H`` is an :class:`ElementarySubgroup` (enumerated in closed form,
    continuous parameters discretized at ``step``) or a list of generating
    isometries (words enumerated with displacement pruning).
    """
    if not R >= 0:
        raise DomainError("ball radius must be >= 0")
    if isinstance(H, ElementarySubgroup):
        m = _closed_form(H, R, base, step, max_elements)
        prov = f"closed form {H}"
    else:
        m = _words(list(H), R, base, max_word_length, max_elements)
        prov = f"words in {len(H)} generators"
    m = _normalize_rows(np.asarray(m, dtype=float))
    m = m[displacement(m, base) <= R + 1e-12]
    return GroupSample(float(R), _dedup(m), prov, base)


def chabauty_distance(A: GroupSample, B: GroupSample) -> float:
    """Symmetric Hausdorff distance between two samples (Frobenius, up to sign)."""
    if abs(A.ball_radius - B.ball_radius) > 1e-12 or A.base != B.base:
        raise ConfigError("samples must share the ball radius and base point")
    return max(directed_hausdorff(A.elements, B.elements, True),
               directed_hausdorff(B.elements, A.elements, True))


# ---------------------------------------------------------------------------
# limit experiments


def limit_schedule(steps: int = 10, n_min: int = 25, n_max: int = 200) -> list[int]:
    """Distinct integers, roughly geometric from ``n_min`` to ``n_max``."""
    if steps < 2:
        raise ConfigError("need at least two steps")
    ns = sorted({int(round(x)) for x in np.geomspace(n_min, n_max, steps)})
    return ns


IMAG_AXIS = (0.0, math.inf)


def _family(name: str):
    """Return ``(member(n), limit group)`` for a named family."""
    if name == "k_to_K":
        return (lambda n: ElementarySubgroup("k", p=1j, n=n)), ElementarySubgroup("K", p=1j)
    if name == "a_to_A":
        return (lambda n: ElementarySubgroup("a", axis=IMAG_AXIS, t=1.0 / n)), ElementarySubgroup("A", axis=IMAG_AXIS)
    if name == "aprime_to_k2":
        # translation length n -> inf, rotation centre i e^{1/n} -> i
        return ((lambda n: ElementarySubgroup("a'", axis=IMAG_AXIS, t=float(n), p=1j * math.exp(1.0 / n))),
                ElementarySubgroup("k", p=1j, n=2))
    if name == "k_to_trivial":
        # centres exit with the generator displacement growing without bound
        return ((lambda n: ElementarySubgroup("k", p=1j * n * n / 50.0, n=n)), ElementarySubgroup("Trivial"))
    raise ConfigError(f"unknown limit family {name!r}; choose from {sorted(FAMILIES)}")


FAMILIES = ("k_to_K", "a_to_A", "aprime_to_k2", "k_to_trivial")


def limit_experiment(
    family: str,
    steps: int = 10,
    R: float = 3.0,
    n_min: int = 25,
    n_max: int = 200,
    threshold: float = 0.05,
) -> dict:
    """Distances from a parameter ray of subgroups to its claimed limit.

    For a nontrivial limit the verdict needs the distances to decrease
    strictly and end below ``threshold``. For the trivial limit, elements
    leave the ball one at a time, so the verdict needs the distance to reach
    0 and stay there.
    """
    member, limit = _family(family)
    ns = limit_schedule(steps, n_min, n_max)
    lim = sample_subgroup(limit, R)
    dists = [chabauty_distance(sample_subgroup(member(n), R), lim) for n in ns]
    d = np.array(dists)
    if limit.tag == "Trivial":
        nz = np.flatnonzero(d > 0)
        settled = len(nz) == 0 or nz[-1] < len(d) - 1
        ok = bool(settled)
    else:
        ok = bool(np.all(np.diff(d) < 0))
    return {
        "schema": 1,
        "family": family,
        "limit": str(limit),
        "ball_radius": R,
        "n": ns,
        "distances": dists,
        "threshold": threshold,
        "decreasing": ok,
        "verdict": bool(ok and dists[-1] < threshold),
    }
