"""Command-line front end.  Exit codes: 0 success, 1 verification failure, 2 usage error."""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import chern, chow, curves, fixed_points, q202
from .fixed_points import FixedPoint, QuotParams
from .poly import dim_homogeneous

SCHEMA = "quotchow/1"
DEFAULT_CAP = 10**6
LIFT_NAMES = {"symmetric": "symmetric", "zero": "zero_side", "infty": "infinity_side"}


class UsageError(Exception):
    pass


def _emit(out, obj) -> None:
    out.write(json.dumps({"schema": SCHEMA, **obj}, indent=2, sort_keys=False))
    out.write("\n")


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def _params(args) -> QuotParams:
    try:
        params = QuotParams(args.r, args.n, args.d)
    except ValueError as exc:
        raise UsageError(str(exc))
    cap = int(os.environ.get("QUOTCHOW_CAP", DEFAULT_CAP))
    size = params.count_fixed_points()
    if size > cap and not args.force:
        raise UsageError(f"{params} has {size} fixed points, above the cap {cap}; pass --force to run anyway")
    return params


def _point(params: QuotParams, text: str) -> FixedPoint:
    try:
        p = FixedPoint.from_json(json.loads(text)) if text.lstrip().startswith("{") else FixedPoint.from_label(text)
        p.validate(params)
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        raise UsageError(f"--point: {exc}")
    return p


def _points(params, args) -> list[FixedPoint]:
    if args.point is not None:
        return [_point(params, args.point)]
    return fixed_points.enumerate_fixed_points(params)


# ---------------------------------------------------------------------------
# commands


def cmd_fixed_points(args, out) -> int:
    params = _params(args)
    pts = fixed_points.enumerate_fixed_points(params)
    if args.json:
        _emit(out, {"params": params.to_json(), "fixed_points": [p.to_json() for p in pts]})
    else:
        for p in pts:
            out.write(p.label() + "\n")
    return 0


def cmd_tangent_weights(args, out) -> int:
    params = _params(args)
    data = []
    for p in _points(params, args):
        data.append({"point": p.to_json(), "weights": [w.to_json() for w in fixed_points.tangent_weights(params, p)]})
    _emit(out, {"params": params.to_json(), "tangent_weights": data})
    return 0


def _curves_for(args_tuple):
    params, p = args_tuple
    return [{**c.to_json(), "generators": curves.curve_generators(c)} for c in curves.curves_at(params, p)]


def cmd_curves(args, out) -> int:
    params = _params(args)
    pts = _points(params, args)
    if args.parallel and len(pts) > 1:
        with ProcessPoolExecutor() as ex:
            lists = list(ex.map(_curves_for, [(params, p) for p in pts]))
    else:
        lists = [_curves_for((params, p)) for p in pts]
    data = [{"point": p.to_json(), "curves": cs} for p, cs in zip(pts, lists)]
    _emit(out, {"params": params.to_json(), "curves": data})
    return 0


def cmd_multigraph(args, out) -> int:
    params = _params(args)
    g = curves.build_multigraph(params)
    if args.format == "dot":
        out.write(g.to_dot())
    else:
        _emit(out, g.to_json())
    return 0


def cmd_relations(args, out) -> int:
    params = _params(args)
    rels = chow.generate_relations(params, args.ring, args.reading)
    if args.count:
        counts = {}
        for r in rels:
            counts[r.kind] = counts.get(r.kind, 0) + 1
        order = ("I", "IIa", "IIb", "IIc", "IIc_prime", "III", "III_prime")
        counts = {k: counts[k] for k in order if k in counts}
        if args.json:
            _emit(out, {"params": params.to_json(), "ring": args.ring, "total": len(rels), "counts": counts})
        else:
            out.write(" ".join(f"{k}={v}" for k, v in counts.items()) + f" total={len(rels)}\n")
        return 0
    _emit(out, {"params": params.to_json(), "ring": args.ring, "relations": [r.to_json() for r in rels]})
    return 0


def _load_classes(path: str) -> list:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}")
    try:
        if "classes" in doc:
            params = doc["params"]
            return [chow.LocalizedClass.from_json({"params": params, **c}) for c in doc["classes"]]
        return [chow.LocalizedClass.from_json(doc)]
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"malformed class file {path}: {exc}")


def cmd_check(args, out) -> int:
    classes = _load_classes(args.file)
    results = []
    ok = True
    for cls in classes:
        if cls.params.count_fixed_points() > int(os.environ.get("QUOTCHOW_CAP", DEFAULT_CAP)) and not args.force:
            raise UsageError("class file exceeds the size cap; pass --force")
        rep = chow.check_membership(cls, args.ring)
        ok = ok and rep.ok
        results.append(rep.to_json())
    _emit(out, {"ring": args.ring, "pass": ok, "results": results})
    return 0 if ok else 1


def cmd_basis(args, out) -> int:
    params = _params(args)
    basis = chow.triangular_basis(params)
    classes = []
    for p, cls in basis.items():
        entry = cls.to_json()
        entry.pop("params")
        classes.append({"point": p.to_json(), "degree": fixed_points.cell_dimension(params, p), **entry})
    _emit(out, {"params": params.to_json(), "classes": classes})
    return 0


def _graded(job):
    params, k, ring = job
    return chow.graded_dimension(params, k, ring)


def cmd_betti(args, out) -> int:
    params = _params(args)
    a = chow.betti_by_cells(params)
    if args.parallel:
        with ProcessPoolExecutor() as ex:
            dims = list(ex.map(_graded, [(params, k, "rational") for k in range(params.dim + 1)]))
        nv = params.n + 1
        b = []
        for k, g in enumerate(dims):
            b.append(g - sum(b[j] * dim_homogeneous(nv, k - j) for j in range(k)))
    else:
        b = chow.betti_by_graded_dimension(params)
    if a != b:
        sys.stderr.write(f"betti: cell count {a} disagrees with graded dimensions {b}\n")
        return 1
    if args.json:
        _emit(out, {"params": params.to_json(), "betti": a})
    else:
        out.write(" ".join(map(str, a)) + "\n")
    return 0


def cmd_graded_dim(args, out) -> int:
    params = _params(args)
    dim = chow.graded_dimension(params, args.degree, args.ring)
    if args.json:
        _emit(out, {"params": params.to_json(), "degree": args.degree, "ring": args.ring, "dimension": dim})
    else:
        out.write(f"{dim}\n")
    return 0


def cmd_chern(args, out) -> int:
    params = _params(args)
    try:
        loc = chern.chern_localizations(params, args.index)
    except ValueError as exc:
        raise UsageError(f"--index: {exc}")
    pair = chern.kunneth_components(params, args.index, LIFT_NAMES[args.lift])
    _emit(out, {
        "params": params.to_json(),
        "index": args.index,
        "lift": pair.lift,
        "at_zero": loc.at_zero.to_json()["values"],
        "at_infinity": loc.at_infinity.to_json()["values"],
        "t": pair.t.to_json()["values"],
        "u": pair.u.to_json()["values"],
        "t_integral": pair.t.is_integral(),
    })
    return 0


def cmd_verify_q202(args, out) -> int:
    rep = q202.q202_report()
    if args.json:
        _emit(out, rep.to_json())
    else:
        for c in rep.checks:
            line = f"{'PASS' if c.ok else 'FAIL'}  {c.name}"
            if c.detail:
                line += f"  ({c.detail})"
            out.write(line + "\n")
        out.write(f"{sum(c.ok for c in rep.checks)}/{len(rep.checks)} checks passed\n")
    return 0 if rep.ok else 1


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="JSON output where text is the default")
    common.add_argument("--force", action="store_true", help="ignore the fixed-point count cap")
    common.add_argument("--parallel", action="store_true", help="use worker processes where supported")

    rnd = argparse.ArgumentParser(add_help=False)
    rnd.add_argument("r", type=_nonneg)
    rnd.add_argument("n", type=_nonneg)
    rnd.add_argument("d", type=_nonneg)

    parser = _Parser(prog="quotchow", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("fixed-points", parents=[rnd, common], help="list the torus-fixed points")
    p.set_defaults(func=cmd_fixed_points)

    p = sub.add_parser("tangent-weights", parents=[rnd, common], help="tangent weights at fixed points")
    p.add_argument("--point", help="a fixed point as JSON or label like 11.20.00")
    p.set_defaults(func=cmd_tangent_weights)

    p = sub.add_parser("curves", parents=[rnd, common], help="invariant curves and their generators")
    p.add_argument("--point", help="a fixed point as JSON or label like 11.20.00")
    p.set_defaults(func=cmd_curves)

    p = sub.add_parser("multigraph", parents=[rnd, common], help="moment multigraph export")
    p.add_argument("--format", choices=("dot", "json"), default="json")
    p.set_defaults(func=cmd_multigraph)

    p = sub.add_parser("relations", parents=[rnd, common], help="list relation instances")
    p.add_argument("--ring", choices=chow.RINGS, default="rational")
    p.add_argument("--reading", choices=("boxes", "anchored"), default="boxes",
                   help="which boxes the rational vertical relations use")
    p.add_argument("--count", action="store_true", help="only count relations by kind")
    p.set_defaults(func=cmd_relations)

    p = sub.add_parser("check", parents=[common], help="check membership of localized classes")
    p.add_argument("file")
    p.add_argument("--ring", choices=chow.RINGS, default="integral")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("basis", parents=[rnd, common], help="triangular module basis")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("betti", parents=[rnd, common], help="Betti numbers by two methods")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("graded-dim", parents=[rnd, common], help="dimension of a graded piece")
    p.add_argument("--degree", type=_nonneg, required=True)
    p.add_argument("--ring", choices=chow.RINGS, default="rational")
    p.set_defaults(func=cmd_graded_dim)

    p = sub.add_parser("chern", parents=[rnd, common], help="Chern classes and Kunneth components")
    p.add_argument("--index", type=_nonneg, required=True)
    p.add_argument("--lift", choices=tuple(LIFT_NAMES), default="symmetric")
    p.set_defaults(func=cmd_chern)

    p = sub.add_parser("verify-q202", parents=[common], help="regression on the ten-point example")
    p.set_defaults(func=cmd_verify_q202)
    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"quotchow {args.command}: {exc}\n")
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
