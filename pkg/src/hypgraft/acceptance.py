"""Acceptance checks shared by the test suite and ``hypgraft selftest``.

Each check returns a :class:`CheckResult`; tolerances are fixed here.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import chabauty, flow, grafting, hexagon, lens, pants
from .errors import ConfigError
from .hyptrig import log_cosh, log_sinh

__all__ = ["CheckResult", "CHECKS", "run_all"]

SEED = 20240601


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.name}: {self.detail}"


def _rel(lhs_log: float, rhs_log: float) -> float:
    """Relative residual of ``exp(lhs) = exp(rhs)`` given logarithms."""
    return abs(math.expm1(lhs_log - rhs_log))


def hexagon_identities(n: int = 1000) -> tuple[bool, str]:
    rng = np.random.default_rng(SEED)
    worst_hex = worst_pent = 0.0
    seams_exact = True
    for a, b, c in rng.uniform(0.05, 5.0, size=(n, 3)):
        h = hexagon.solve_hexagon(a, b, c)
        worst_hex = max(worst_hex, *h.residuals())
        for i, lab in enumerate(hexagon.FREE_LABELS):
            nk = hexagon.nonside_neck(h, lab)
            ls = log_sinh(nk.length)
            prev, nxt = h.free[(i - 1) % 3], h.free[(i + 1) % 3]
            dp, dm = h.determined[(i + 1) % 3], h.determined[(i - 1) % 3]
            worst_pent = max(
                worst_pent,
                _rel(ls + log_sinh(nk.feet[0]), log_cosh(prev)),
                _rel(ls + log_sinh(nk.feet[1]), log_cosh(nxt)),
                _rel(ls + log_sinh(nk.opposite_feet[0]), log_cosh(dp)),
                _rel(ls + log_sinh(nk.opposite_feet[1]), log_cosh(dm)),
                abs(sum(nk.opposite_feet) - h.determined[i]) / h.determined[i],
            )
        p = pants.pants_from_boundary(2 * a, 2 * b, 2 * c)
        seams_exact &= p.seam_lengths == h.determined
    ok = worst_hex <= 1e-9 and worst_pent <= 1e-9 and seams_exact
    return ok, f"hexagon rule {worst_hex:.2e}, pentagon rule {worst_pent:.2e}, seams exact {seams_exact}"


def neck_equations(n: int = 1000) -> tuple[bool, str]:
    rng = np.random.default_rng(SEED + 1)
    worst = 0.0
    for a, b, c in rng.uniform(0.05, 5.0, size=(n, 3)):
        h = hexagon.solve_hexagon(a, b, c)
        nk = hexagon.nonside_neck(h, "b")
        worst = max(worst, _rel(log_sinh(nk.length) + log_sinh(nk.feet[0]), log_cosh(a)))
    sym = 0.0
    for a, b in rng.uniform(0.05, 5.0, size=(200, 2)):
        nk = hexagon.nonside_neck(hexagon.solve_hexagon(a, b, a), "b")
        sym = max(sym, abs(nk.feet[0] - nk.feet[1]))
    ok = worst <= 1e-9 and sym <= 1e-12
    return ok, f"residual {worst:.2e}, symmetric split {sym:.2e}"


def collar_modulus() -> tuple[bool, str]:
    worst = -math.inf
    for ell in np.geomspace(1e-4, 2.0, 40):
        m = pants.standard_collar(float(ell)).modulus
        lo, hi = math.pi / ell - 1.0, math.pi / ell
        worst = max(worst, lo - m, m - hi)
    bl = pants.standard_collar(1e-3).boundary_length
    ok = worst <= 0.0 and abs(bl - 2.0) < 1e-3
    return ok, f"max sandwich violation {worst:.3g} (<= 0), boundary length at 1e-3 = {bl:.6f}"


def truncation_algebra(n: int = 1000) -> tuple[bool, str]:
    A = grafting.truncate(grafting.StraightAnnulus(2, 0, 9, lo_closed=True), 2)
    B = grafting.truncate(grafting.StraightAnnulus(1, -3, 3), 2)
    examples = (A.lo, A.hi, A.lo_closed, A.hi_closed) == (0, 5, True, False) and (B.lo, B.hi) == (-1, 1)
    rng = np.random.default_rng(SEED + 2)
    fails = 0
    for _ in range(n):
        circ = rng.uniform(0.1, 3.0)
        lo, hi = np.sort(rng.uniform(-50, 50, 2))
        blo, bhi = np.sort(rng.uniform(lo, hi, 2))
        D = rng.uniform(0, 10)
        outer = grafting.StraightAnnulus(circ, lo, hi)
        inner = grafting.StraightAnnulus(circ, blo, bhi)
        fails += not grafting.truncation_quasimonotone_check(outer, inner, D)
    return examples and fails == 0, f"worked examples {examples}, containment failures {fails}/{n}"


def grafted_length(Lcal: float = 2.0) -> tuple[bool, str]:
    contains = decreasing = nonempty = True
    for ell in np.geomspace(1e-3, Lcal, 40):
        ell = float(ell)
        contains &= ell in grafting.grafted_length_bounds(ell, 0.0, Lcal)
        his = []
        for L in (0.0, 0.1, 1.0, 10.0, 100.0, 1e3, 1e4):
            iv = grafting.grafted_length_bounds(ell, L, Lcal)
            nonempty &= iv.lo < iv.hi
            his.append(iv.hi)
        decreasing &= bool(np.all(np.diff(his) < 0))
    small = max(grafting.grafted_length_bounds(0.5, k * math.pi * 0.5 * 50, Lcal).hi for k in (1, 2, 10))
    ok = contains and decreasing and nonempty and small < 1e-2
    return ok, f"contains l at L=0 {contains}, hi decreasing {decreasing}, nonempty {nonempty}, hi at L>=50 pi l: {small:.4g}"


def pinch_solver() -> tuple[bool, str]:
    surf = pants.SurfaceFN(
        [("c1", "c1", "c2"), ("c3", "c3", "c2")],
        {"c1": pants.CurveFN(0.5), "c2": pants.CurveFN(1.0), "c3": pants.CurveFN(1.5)},
    )
    delta = 0.1
    worst, shorter, monotone = 0.0, True, True
    Ls = [0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0, 200.0]
    for c in ("c1", "c2", "c3"):
        ell = surf.curves[c].length
        prev = math.inf
        for L in Ls:
            l = pants.pinch_lengths(surf, [c], {c: L}, delta)[c]
            lhs = 2 * flow.gd(math.asinh(delta / math.sinh(l / 2))) / l
            rhs = (2 * flow.gd(math.asinh(delta / math.sinh(ell / 2))) + 2 * L) / ell
            worst = max(worst, abs(lhs - rhs) / rhs)
            if L > 0:
                shorter &= l < ell
            monotone &= l < prev or (L == 0 and l == ell)
            prev = l
    ok = worst <= 1e-10 and shorter and monotone
    return ok, f"relative residual {worst:.2e}, shorter {shorter}, monotone {monotone}"


def flow_checks() -> tuple[bool, str]:
    eps = 0.1
    zero = all(flow.grafting_length(0.0, l, s) == 0.0
               for s in (0.01, 0.05, 0.1, 0.5) for l in (s, 1.5 * s, 3 * s, 0.25))
    inf_ok = True
    for s in (0.01, 0.05, 0.1, 0.15, 0.5):
        for l in (s, 1.2 * s, 2 * s):
            is_inf = math.isinf(flow.grafting_length(1.0, l, s))
            inf_ok &= is_inf == (l == s and s <= eps)
    worst = 0.0
    for ell in np.linspace(0.005, 2 * eps, 25):
        for t in np.linspace(0.0, 0.995, 25):
            for sys in (ell, 0.5 * ell):
                worst = max(worst, *flow.annulus_boundary_mismatch(float(ell), float(t), float(sys)).values())
    for ell in np.linspace(0.005, 2 * eps, 25):
        worst = max(worst, *flow.annulus_boundary_mismatch(float(ell), 1.0, 0.5 * float(ell)).values())
    rng = np.random.default_rng(SEED + 3)
    comm = 0.0
    for _ in range(1000):
        a, a2 = rng.uniform(-5, 5, 2)
        b, b2 = a + rng.uniform(0.1, 5), a2 + rng.uniform(0.1, 5)
        x = rng.uniform(a, b)
        s = flow.stretch(a, b, a2, b2)
        comm = max(comm, abs(flow.stretch(a, b, 0.0, b2 - a2)(x) - (s(x) - a2)))
        comm = max(comm, abs(flow.stretch(0.0, b - a, a2, b2)(x - a) - s(x)))
    ok = zero and inf_ok and worst <= 1e-10 and comm <= 1e-12
    return ok, f"L_0=0 {zero}, L_1=inf iff systole<=eps {inf_ok}, continuity {worst:.2e}, translation {comm:.2e}"


def chabauty_convergence() -> tuple[bool, str]:
    parts, ok = [], True
    for fam in ("k_to_K", "a_to_A", "aprime_to_k2"):
        rep = chabauty.limit_experiment(fam, steps=10, R=3.0, n_min=25, n_max=200)
        good = rep["verdict"] and len(rep["distances"]) >= 10
        ok &= good
        parts.append(f"{fam} final {rep['distances'][-1]:.4f} decreasing {rep['decreasing']}")
    return ok, "; ".join(parts)


def lens_table() -> tuple[bool, str]:
    modular = lens.lens_from_orders("2,3,inf").space == lens.lens(1, 1)
    consistent = symmetric = True
    for n in range(2, 11):
        for k in range(n + 1, 11):
            a = lens.lens_from_orders([n, k, "inf"]).space
            consistent &= lens.lens_equiv(a, lens.meridian_arithmetic(n, k)["space"])
            p = n * k - n - k
            symmetric &= lens.lens_equiv(lens.lens(p, n - 1), lens.lens(p, k - 1))
    ident = all((n - 1) * (k - 1) == (n * k - k - n) + 1 for n in range(2, 51) for k in range(2, 51))
    ok = modular and consistent and symmetric and ident
    return ok, f"(2,3) -> S^3 {modular}, table {consistent}, symmetry {symmetric}, identity {ident}"


def _admissible_pairs(n: int, L: float, eps: float, rng) -> list:
    out = []
    while len(out) < n:
        i = int(rng.integers(3))
        x, x2 = rng.uniform(0.02, L, 2)
        others = np.exp(rng.uniform(math.log(0.005), math.log(12.0), 2))
        fp = [0.0] * 3
        fp[i], fp[(i + 1) % 3], fp[(i + 2) % 3] = x, others[0], others[1]
        fq = list(fp)
        fq[i] = x2
        hp, hq = hexagon.solve_hexagon(*fp), hexagon.solve_hexagon(*fq)
        labels = [lab for lab in hexagon._admissible_labels(i)
                  if hexagon._neck_by_label(hp, lab).length < eps and hexagon._neck_by_label(hq, lab).length < eps]
        if labels:
            out.append((hp, hq, labels[int(rng.integers(len(labels)))]))
    return out


def neck_distortion_bounds(n: int = 1000, L: float = 2.0, eps: float = 0.1) -> tuple[bool, str]:
    rng = np.random.default_rng(SEED + 4)
    M = hexagon.distortion_bound(L, eps)["M"]
    violations, worst_ratio, worst_disp = 0, 1.0, 0.0
    for hp, hq, lab in _admissible_pairs(n, L, eps, rng):
        try:
            ratio, disp, _ = hexagon.neck_distortion(hp, hq, lab, L=L, eps=eps)
        except hexagon.GeometryError:
            violations += 1
            continue
        worst_ratio = max(worst_ratio, ratio, 1.0 / ratio)
        worst_disp = max(worst_disp, disp)
    return violations == 0, f"M = {M:.4f}, worst ratio {worst_ratio:.4f}, worst displacement {worst_disp:.4f}, violations {violations}/{n}"


def hexagon_map_checks() -> tuple[bool, str]:
    h = hexagon.solve_hexagon(0.5, 3.0, 3.0)
    K_id = hexagon.hexagon_map(h, h).distortion()["K"]
    hm = hexagon.hexagon_map(h, hexagon.solve_hexagon(2.0, 3.0, 3.0))
    K = hm.distortion()["K"]
    hm2 = hexagon.hexagon_map(hexagon.solve_hexagon(0.501, 3.0, 3.0), hexagon.solve_hexagon(2.0, 3.0, 3.0))
    K2 = hm2.distortion()["K"]
    long_neck = hexagon.hexagon_map(hexagon.solve_hexagon(1.0, 20.0, 1.2), hexagon.solve_hexagon(1.7, 20.0, 1.2))
    same = max([abs(v) for m in (hm, hm2, long_neck) for v in m.same_radius_residuals().values()] + [0.0])
    stable = math.isfinite(K) and abs(K2 / K - 1.0) <= 0.10
    ok = abs(K_id - 1.0) <= 1e-9 and same <= 1e-12 and stable
    return ok, f"identity K-1 = {K_id - 1:.2e}, same-radius residual {same:.2e}, K {K:.4f} vs perturbed {K2:.4f}"


CHECKS: list[tuple[int, str, Callable[[], tuple[bool, str]]]] = [
    (1, "hexagon identities", hexagon_identities),
    (2, "neck equations", neck_equations),
    (3, "collar modulus sandwich", collar_modulus),
    (4, "truncation algebra", truncation_algebra),
    (5, "grafted-length bounds", grafted_length),
    (6, "pinch solver", pinch_solver),
    (7, "flow", flow_checks),
    (8, "Chabauty convergence", chabauty_convergence),
    (9, "lens table", lens_table),
    (10, "neck distortion bounds", neck_distortion_bounds),
    (11, "hexagon map", hexagon_map_checks),
]


def run_check(number: int) -> CheckResult:
    for num, name, fn in CHECKS:
        if num == number:
            t = time.perf_counter()
            try:
                ok, detail = fn()
            except Exception as exc:  # report, do not crash the table
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            return CheckResult(num, name, bool(ok), detail, time.perf_counter() - t)
    raise ConfigError(f"no acceptance check {number}")


def run_all() -> list[CheckResult]:
    return [run_check(num) for num, _, _ in CHECKS]
