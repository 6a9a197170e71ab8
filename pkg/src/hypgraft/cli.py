"""Command line interface.

Exit codes: 0 success, 2 invalid input or unsupported request, 3 solver or
budget failure, 64 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from typing import Sequence

from . import __version__, acceptance, chabauty, flow, grafting, hexagon, lens, pants
from .errors import BudgetError, ConfigError, ConvergenceError, DomainError, GeometryError, Unsupported

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_SOLVER = 3
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_help(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _plain(x):
    """JSON-safe copy with ``inf`` as a string token."""
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        if math.isnan(x):
            return "nan"
        return x
    if isinstance(x, complex):
        return [_plain(x.real), _plain(x.imag)]
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if hasattr(x, "item"):  # numpy scalar
        return _plain(x.item())
    return x


def _emit(payload: dict, fmt: str, rows: list[dict] | None = None, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        payload = {"schema": 1, **payload}
        out.write(json.dumps(_plain(payload), indent=2, ensure_ascii=False) + "\n")
        return
    if rows is None:
        rows = [{k: v for k, v in payload.items() if not isinstance(v, (dict, list))}]
    rows = [_plain(r) for r in rows]
    buf = io.StringIO()
    fields = list(dict.fromkeys(k for r in rows for k in r))
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
    out.write(buf.getvalue())


def _triple(text: str) -> tuple[float, float, float]:
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"expected three comma separated numbers, got {text!r}")
    if len(vals) != 3:
        raise UsageError(f"expected three comma separated numbers, got {text!r}")
    return vals


def _length(text: str) -> float:
    return math.inf if text.strip().lower() in ("inf", "∞") else float(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_hexagon(args) -> int:
    if args.action == "map":
        hp = hexagon.solve_hexagon(*_triple(args.source))
        hq = hexagon.solve_hexagon(*_triple(args.target))
        hm = hexagon.hexagon_map(hp, hq, delta=args.delta, L=args.L, eps=args.eps)
        d = hm.distortion()
        payload = {
            "source": hp.to_dict(),
            "target": hq.to_dict(),
            "K": d["K"],
            "collars": d["collars"],
            "complement": d["complement"],
            "same_radius_residuals": hm.same_radius_residuals(),
        }
        _emit(payload, args.format, [{"K": d["K"], "complement": d["complement"]}])
        return EXIT_OK
    h = hexagon.solve_hexagon(*_triple(args.sides))
    if args.action == "solve":
        payload = {**h.to_dict(), "residuals": list(h.residuals())}
        row = dict(zip(hexagon.FREE_LABELS + hexagon.DET_LABELS, h.free + h.determined))
        _emit(payload, args.format, [row])
    else:
        necks = [n.to_dict() for n in hexagon.all_necks(h)]
        _emit({"hexagon": h.to_dict(), "necks": necks}, args.format,
              [{"label": n["label"], "kind": n["kind"], "length": n["length"]} for n in necks])
    return EXIT_OK


def cmd_pants(args) -> int:
    p = pants.pants_from_boundary(*_triple(args.lengths))
    collars = []
    for ell in p.boundary_lengths:
        if ell == 0:
            collars.append({"length": 0.0, "kind": "cusp"})
            continue
        sc = pants.standard_collar(ell)
        rc = pants.reduced_collar_surface(ell, args.delta)
        collars.append({"length": ell, "radius": sc.radius, "modulus": sc.modulus,
                        "boundary_length": sc.boundary_length, "reduced_radius": rc.radius})
    seams = []
    for i in range(3):
        try:
            seams.append(p.seam(i))
        except Unsupported:
            seams.append(math.inf)
    _emit({"pants": p.to_dict(), "seams": seams, "collars": collars}, args.format, collars)
    return EXIT_OK


def cmd_graft(args) -> int:
    ec = grafting.extended_collar(args.length, args.L)
    iv = grafting.grafted_length_bounds(args.length, args.L, args.Lcal)
    payload = {
        "length": args.length,
        "L": args.L,
        "omega": ec.omega,
        "length_prime": ec.length_prime,
        "rho": ec.rho,
        "rho_prime": ec.rho_prime,
        "modulus": ec.modulus,
        "bounds": [iv.lo, iv.hi],
        "cusp": iv.cusp,
    }
    row = {k: v for k, v in payload.items() if k != "bounds"}
    row.update(lo=iv.lo, hi=iv.hi)
    _emit(payload, args.format, [row])
    return EXIT_OK


def cmd_flow(args) -> int:
    sys_len = args.length if args.sys is None else args.sys
    rows = [{"t": r["t"], "curve": args.curve, **{k: v for k, v in r.items() if k != "t"}}
            for r in flow.trace_rows(args.length, sys_len, args.steps)]
    _emit({"length": args.length, "sys": sys_len, "rows": rows}, args.format, rows)
    return EXIT_OK


def _seed(args) -> int:
    raw = args.seed if args.seed is not None else os.environ.get("HYPGRAFT_SEED") or None
    if raw is None:
        raise UsageError("a seed is required: pass --seed or set HYPGRAFT_SEED")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"seed must be an integer, got {raw!r}")


def cmd_chabauty(args) -> int:
    if args.action == "run":
        seed = _seed(args)
        if args.family not in chabauty.FAMILIES:
            raise UsageError(f"unknown family {args.family!r}; choose from {', '.join(chabauty.FAMILIES)}")
        rep = chabauty.limit_experiment(args.family, steps=args.steps, R=args.radius)
        rep["seed"] = seed
        rows = [{"n": n, "distance": d} for n, d in zip(rep["n"], rep["distances"])]
        _emit(rep, args.format, rows)
        return EXIT_OK
    try:
        m = [float(v) for v in args.matrix.split(",")]
    except ValueError:
        raise UsageError("matrix must be four comma separated numbers")
    if len(m) != 4:
        raise UsageError("matrix must be four comma separated numbers")
    det = m[0] * m[3] - m[1] * m[2]
    if not det > 0:
        raise DomainError("matrix must have positive determinant")
    g = chabauty.Isometry.from_matrix(m)
    c = chabauty.classify_isometry(g)
    payload = {"isometry": g.to_dict(), "kind": c.kind, "angle": c.angle, "center": c.center,
               "xi": c.xi, "axis": c.axis, "translation_length": c.translation_length}
    row = {k: v for k, v in payload.items() if k != "isometry"}
    _emit(payload, args.format, [row])
    return EXIT_OK


def cmd_lens(args) -> int:
    res = lens.lens_from_orders(args.orders)
    payload = {
        "orders": list(lens.parse_orders(args.orders)),
        "space": str(res.space),
        "p": res.space.p,
        "q": res.space.q,
        "pi1_order": res.space.pi1_order,
        "case": res.case,
        "note": res.note,
    }
    if args.format == "text":
        print(res.space)
        order = "infinite" if math.isinf(res.space.pi1_order) else int(res.space.pi1_order)
        print(f"pi1 order: {order}")
        print(f"note: {res.note}")
    else:
        _emit(payload, args.format)
    return EXIT_OK


def cmd_selftest(args) -> int:
    results = acceptance.run_all()
    if args.format == "json":
        _emit({"checks": [r.__dict__ for r in results], "passed": all(r.passed for r in results)}, "json")
    else:
        for r in results:
            print(f"{r.line()}  ({r.seconds:.2f} s)")
        print(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    return EXIT_OK if all(r.passed for r in results) else 1


# ---------------------------------------------------------------------------


def build_parser() -> _Parser:
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=("json", "csv"), default="json")

    p = _Parser(prog="hypgraft", description="Hyperbolic hexagons, collars, grafting and subgroup limits.")
    p.add_argument("--version", action="version", version=f"hypgraft {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    h = sub.add_parser("hexagon", help="right-angled hexagons")
    hs = h.add_subparsers(dest="action", required=True)
    for name, hlp in (("solve", "all six sides"), ("necks", "sides and common perpendiculars")):
        x = hs.add_parser(name, parents=[fmt], help=hlp)
        x.add_argument("sides", help="free sides a,b,c")
    x = hs.add_parser("map", parents=[fmt], help="distortion of the map between two hexagons")
    x.add_argument("source", help="free sides a,b,c of the source")
    x.add_argument("target", help="free sides of the target; one side differs")
    x.add_argument("--delta", type=float, default=0.1)
    x.add_argument("--L", type=float, default=2.0)
    x.add_argument("--eps", type=float, default=hexagon.DEFAULT_EPS_MAX)
    h.set_defaults(func=cmd_hexagon)

    x = sub.add_parser("pants", parents=[fmt], help="pants seams and collars")
    x.add_argument("lengths", help="boundary lengths l1,l2,l3 (0 for a cusp)")
    x.add_argument("--delta", type=float, default=0.1)
    x.set_defaults(func=cmd_pants)

    x = sub.add_parser("graft", parents=[fmt], help="grafted collar and length bounds")
    x.add_argument("length", type=float)
    x.add_argument("L", type=_length, help="grafting length, or inf")
    x.add_argument("--Lcal", type=float, default=2.0, help="length threshold of the surface")
    x.set_defaults(func=cmd_graft)

    f = sub.add_parser("flow", help="grafting flow")
    fs = f.add_subparsers(dest="action", required=True)
    x = fs.add_parser("trace", parents=[fmt], help="annulus parameters along the flow")
    x.add_argument("--length", type=float, required=True)
    x.add_argument("--sys", type=float, help="systole (defaults to the curve length)")
    x.add_argument("--steps", type=int, default=11)
    x.add_argument("--curve", default="gamma")
    f.set_defaults(func=cmd_flow)

    c = sub.add_parser("chabauty", help="subgroup limits")
    cs = c.add_subparsers(dest="action", required=True)
    x = cs.add_parser("run", parents=[fmt], help="distances along a family")
    x.add_argument("family")
    x.add_argument("--steps", type=int, default=10)
    x.add_argument("--radius", type=float, default=3.0)
    x.add_argument("--seed")
    x = cs.add_parser("classify", parents=[fmt], help="type of an isometry")
    x.add_argument("matrix", help="m11,m12,m21,m22")
    c.set_defaults(func=cmd_chabauty)

    x = sub.add_parser("lens", help="lens space of a sphere with three cone points or cusps")
    x.add_argument("--orders", required=True, help="e.g. 2,3,inf")
    x.add_argument("--format", choices=("text", "json", "csv"), default="text")
    x.set_defaults(func=cmd_lens)

    x = sub.add_parser("selftest", help="run the acceptance checks")
    x.add_argument("--format", choices=("text", "json"), default="text")
    x.set_defaults(func=cmd_selftest)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help and --version
        return int(exc.code or 0)
    except (ConvergenceError, BudgetError) as exc:
        print(f"hypgraft: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except (DomainError, GeometryError, ConfigError, Unsupported) as exc:
        print(f"hypgraft: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
