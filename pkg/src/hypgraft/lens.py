"""Lens spaces arising as closures of subgroup spaces of spheres with three
cone points or cusps.

Orders are integers ``>= 2`` or ``inf`` for a cusp.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, Unsupported

__all__ = [
    "LensSpace",
    "lens",
    "lens_equiv",
    "parse_orders",
    "LensResult",
    "lens_from_orders",
    "meridian_arithmetic",
    "CompactCase",
]


class CompactCase(Unsupported, DomainError):
    """All three points are cone points; the closure is not a lens-space computation."""


def _ordinal(n: int) -> str:
    suffix = "th" if 10 <= n % 100 <= 20 else {1: "st", 2: "nd", 3: "rd"}.get(n % 10, "th")
    return f"{n}{suffix}"


def _orbit(p: int, q: int) -> set[int]:
    if p <= 1:
        return {0}
    inv = pow(q, -1, p)
    return {q % p, -q % p, inv, -inv % p}


@dataclass(frozen=True)
class LensSpace:
    """``L(p, q)`` with ``p >= 0`` and ``q`` the smallest member of its
    class ``+-q^{+-1} mod p``. ``L(1, 0)`` is the 3-sphere; ``L(0, 0)``
    stands for ``S^2 x S^1``."""

    p: int
    q: int

    @property
    def pi1_order(self) -> float:
        return math.inf if self.p == 0 else self.p

    @property
    def is_sphere(self) -> bool:
        return self.p == 1

    def __str__(self) -> str:
        if self.p == 1:
            return "L(1,1) ≅ S^3"
        if self.p == 0:
            return "S^2 x S^1"
        return f"L({self.p},{self.q})"

    def to_dict(self) -> dict:
        return {"schema": 1, "type": "LensSpace", "p": self.p, "q": self.q}


def lens(p: int, q: int) -> LensSpace:
    """Canonical representative of ``L(p, q)``.

    >>> lens(5, 3)
    LensSpace(p=5, q=2)
    """
    p, q = abs(int(p)), int(q)
    if p == 0:
        if abs(q) != 1:
            raise DomainError("L(0, q) needs q = +-1")
        return LensSpace(0, 0)
    if p > 1 and math.gcd(p, q) != 1:
        raise DomainError(f"gcd({p}, {q}) must be 1")
    return LensSpace(p, min(_orbit(p, q % p)))


def lens_equiv(a: LensSpace, b: LensSpace) -> bool:
    """Homeomorphism test ``p = p'`` and ``q' = +-q^{+-1} mod p``."""
    if a.p != b.p:
        return False
    if a.p <= 1:
        return True
    return b.q % b.p in _orbit(a.p, a.q)


def parse_orders(orders) -> tuple[float, float, float]:
    """Accept an iterable or a comma separated string such as ``"2,3,inf"``."""
    if isinstance(orders, str):
        orders = orders.split(",")
    out = []
    for o in orders:
        if isinstance(o, str):
            o = o.strip().lower()
            o = math.inf if o in ("inf", "∞", "cusp") else int(o)
        if o != math.inf:
            if int(o) != o or o < 2:
                raise DomainError(f"cone orders must be integers >= 2, got {o}")
            o = int(o)
        out.append(o)
    if len(out) != 3:
        raise DomainError("exactly three cone points or cusps are needed")
    return tuple(sorted(out))


@dataclass(frozen=True)
class LensResult:
    space: LensSpace
    case: int
    raw: tuple[int, int]
    note: str


def lens_from_orders(orders) -> LensResult:
    """Homeomorphism type of the closure for a sphere with the given orders.

    >>> str(lens_from_orders("2,3,inf").space)
    'L(1,1) ≅ S^3'
    """
    o = parse_orders(orders)
    finite = [x for x in o if x != math.inf]
    cusps = 3 - len(finite)
    if cusps == 0:
        raise CompactCase("compact spheres give T^1 S / Isom(S); not computed here")
    if cusps == 1:
        n, k = finite
        if 1.0 / n + 1.0 / k >= 1.0:
            raise DomainError(f"orders ({n}, {k}, inf) do not give a hyperbolic orbifold")
        if n != k:
            p, q = n * k - n - k, n - 1
            note = f"N is a regular fibre: the {_ordinal(n)} (or {_ordinal(k)}) power of a generator"
            return LensResult(lens(p, q), 2, (p, q), note)
        p, q = k - 2, 1
        note = f"N is a regular fibre: the {_ordinal(k)} power (or the square) of a generator"
        return LensResult(lens(p, q), 3, (p, q), note)
    if cusps == 2:
        k = finite[0]
        p, q = 2 * k - 2, 1
        note = f"N is a regular fibre: the {_ordinal(2 * k)} power (or the square) of a generator"
        return LensResult(lens(p, q), 4, (p, q), note)
    return LensResult(lens(1, 0), 5, (1, 0), "the closure is simply connected")


def meridian_arithmetic(n: int, k: int) -> dict:
    """Meridians of the two solid tori in the basis ``(alpha_k, beta)``.

    ``m_k = k alpha_k - beta`` and, using ``alpha_n = -alpha_k + beta``,
    ``m_n = -n alpha_k + (n - 1) beta``. Writing ``m_n = p alpha_k + q m_k``
    gives ``q = 1 - n`` and ``p = kn - k - n``.
    """
    if n < 2 or k < 2:
        raise DomainError("orders must be >= 2")
    m_k = (k, -1)
    alpha_n = (-1, 1)
    m_n = (n * alpha_n[0], n * alpha_n[1] - 1)
    q = -m_n[1]  # beta coefficient of q m_k is -q
    p = m_n[0] - q * m_k[0]
    return {"m_k": m_k, "alpha_n": alpha_n, "m_n": m_n, "p": p, "q": q, "space": lens(p, q)}
