"""Command line front end: ``gjcells {check,cell,complex,plot} ...``.

Exit codes: 0 success, 1 check verdict false, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .bfs import SliceSpec, bfs_complex, coverage, region_union_description
from .cells import build_cell
from .families import FAMILIES, get_family
from .gomory import Verdict, classify_params
from .oracle import UnsupportedFunction, grid_oracle_extremality
from .plot import PlotConfig, plot_slice
from .polys import rational
from .pwl import NotConstructible

STAGES = {"construct": "construct", "minimal": "minimal", "minimality": "minimal", "extreme": "extreme"}
SUCCESS = {
    "construct": Verdict.EXTREME,
    "minimal": Verdict.EXTREME,
    "extreme": Verdict.EXTREME,
}


class UsageError(Exception):
    pass


def _rat(text):
    try:
        return rational(text.strip())
    except (TypeError, ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


def _params(args, fam):
    vals = list(args.values or [])
    if args.params:
        vals += [v for v in args.params.split(",") if v.strip()]
    if not vals:
        vals = list(fam.default)
    if len(vals) != len(fam.params):
        raise UsageError(f"{fam.name} takes {len(fam.params)} parameters {', '.join(fam.params)}")
    return [_rat(v) for v in vals]


def _family(name):
    try:
        return get_family(name)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None


def _stage_label(stage, verdict):
    if verdict == Verdict.EXTREME and stage == "minimal":
        return "minimal"
    if verdict == Verdict.EXTREME and stage == "construct":
        return "constructible"
    return verdict.value


def _slice(args, fam):
    fixed = {}
    for item in args.fix or []:
        if "=" not in item:
            raise UsageError(f"--fix expects name=value, got {item!r}")
        k, v = item.split("=", 1)
        fixed[k.strip()] = _rat(v)
    free, box = [], {}
    for item in args.free or []:
        name, _, rng = item.partition("=")
        name = name.strip()
        free.append(name)
        if rng:
            lo, sep, hi = rng.partition("..")
            if not sep:
                raise UsageError(f"--free expects name=lo..hi, got {item!r}")
            box[name] = (_rat(lo), _rat(hi))
    if not free:
        free = [p for p in fam.params if p not in fixed]
    if len(free) + len(fixed) != len(fam.params):
        # parameters that are neither fixed nor free take their defaults
        for p, d in zip(fam.params, fam.default):
            if p not in fixed and p not in free:
                fixed[p] = rational(d)
    try:
        return SliceSpec(fam.name, fixed, tuple(free), box)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _seed(args, spec):
    if args.seed:
        vals = [_rat(v) for v in args.seed.split(",")]
    else:
        fam = get_family(spec.family)
        d = dict(zip(fam.params, fam.default))
        vals = [rational(d[n]) for n in spec.free]
    if len(vals) != len(spec.free):
        raise UsageError(f"seed needs {len(spec.free)} coordinates")
    if not spec.in_box(vals, strict=False):
        raise UsageError("seed outside the bounding box")
    return vals


def cmd_check(args, out):
    fam = _family(args.family)
    params = _params(args, fam)
    stage = STAGES[args.stage]
    verdict = classify_params(fam.constructor, params, stage)
    report = {"family": fam.name, "params": [str(p) for p in params], "verdict": _stage_label(stage, verdict)}
    if fam.hypotheses is not None and verdict != Verdict.NOT_CONSTRUCTIBLE:
        report["hypotheses"] = bool(fam.hypotheses(*params))
    if args.oracle and stage == "extreme" and verdict != Verdict.NOT_CONSTRUCTIBLE:
        try:
            ext = grid_oracle_extremality(fam.constructor(*params))
            report["oracle"] = "extreme" if ext else "not_extreme"
            report["oracle_agrees"] = ext == (verdict == Verdict.EXTREME)
        except (UnsupportedFunction, NotConstructible) as exc:
            report["oracle"] = f"unsupported: {exc}"
    if args.json:
        print(json.dumps(report), file=out)
    else:
        print(report["verdict"], file=out)
        for k in ("hypotheses", "oracle", "oracle_agrees"):
            if k in report:
                print(f"{k}: {report[k]}", file=out)
    return 0 if verdict == SUCCESS[stage] else 1


def cmd_cell(args, out):
    fam = _family(args.family)
    params = _params(args, fam)
    cell = build_cell(fam.constructor, fam.params, params, stage=STAGES[args.stage])
    if args.json or args.out:
        text = json.dumps(cell.to_dict(), indent=2)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        if args.json:
            print(text, file=out)
            return 0
    print(f"# verdict: {_stage_label(STAGES[args.stage], cell.verdict)}", file=out)
    print(f"# {len(cell.raw_atoms)} recorded atoms, {len(cell.atoms)} after reduction", file=out)
    if cell.equalities:
        print("# equalities", file=out)
        for a in cell.equalities:
            print(a, file=out)
    print("# inequalities", file=out)
    for a in cell.walls:
        print(a, file=out)
    if args.nonlinear:
        nl = [a for a in cell.walls if a.poly.total_degree() > 1]
        print(f"# nonlinear survivors: {len(nl)}", file=out)
        for a in nl:
            print(f"#   {a}", file=out)
    return 0


def cmd_complex(args, out):
    fam = _family(args.family)
    spec = _slice(args, fam)
    seed = _seed(args, spec)
    cx = bfs_complex(spec, seed, max_cells=args.max_cells, stage=STAGES[args.stage])
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(cx.to_json(indent=1) + "\n")
    if args.json:
        print(cx.to_json(), file=out)
        return 0
    print(f"cells: {len(cx.cells)}  edges: {len(cx.edges)}  frontier failures: {len(cx.failures)}", file=out)
    for verdict, n in sorted(cx.counts().items()):
        print(f"  {verdict:<22}{n}", file=out)
    if len(spec.free) == 2:
        print(f"coverage: {coverage(cx):.4f}", file=out)
    atoms, nonlinear = region_union_description(cx, Verdict.EXTREME)
    if atoms:
        print("extreme region, outer walls:", file=out)
        for a in atoms:
            flag = "  (nonlinear, inspect)" if a in nonlinear else ""
            print(f"  {a}{flag}", file=out)
    return 0


def cmd_plot(args, out):
    fam = _family(args.family)
    spec = _slice(args, fam)
    if len(spec.free) != 2:
        raise UsageError("plot needs exactly two free parameters")
    cx = None
    if args.overlay:
        from .bfs import CellComplex

        with open(args.overlay, encoding="utf-8") as fh:
            cx = CellComplex.from_dict(json.load(fh))
    try:
        config = PlotConfig(spec, args.resolution, out=args.out, stage=STAGES[args.stage])
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    svg = plot_slice(config, cx)
    if not args.out:
        out.write(svg)
    else:
        print(f"wrote {args.out}", file=out)
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="gjcells", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, positional=True):
        sp.add_argument("family", help="one of: " + ", ".join(FAMILIES))
        if positional:
            sp.add_argument("values", nargs="*", help="parameter values (rationals)")
            sp.add_argument("--params", help="comma separated parameter values")
        sp.add_argument("--stage", choices=sorted(STAGES), default="extreme")
        sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("check", help="verdict for one parameter tuple")
    common(sp)
    sp.add_argument("--oracle", action="store_true", help="cross-check with the grid oracle")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("cell", help="reduced cell description around a parameter tuple")
    common(sp)
    sp.add_argument("--out")
    sp.add_argument("--nonlinear", action="store_true", help="list nonlinear survivors")
    sp.set_defaults(func=cmd_cell)

    for name, func, helptext in (("complex", cmd_complex, "cell complex by BFS"),
                                 ("plot", cmd_plot, "SVG raster of a 2-parameter slice")):
        sp = sub.add_parser(name, help=helptext)
        common(sp, positional=False)
        sp.add_argument("--fix", action="append", metavar="NAME=RAT")
        sp.add_argument("--free", action="append", metavar="NAME=LO..HI")
        sp.add_argument("--out")
        if name == "complex":
            sp.add_argument("--seed", help="comma separated seed point")
            sp.add_argument("--max-cells", type=int)
        else:
            sp.add_argument("--resolution", type=int, default=200)
            sp.add_argument("--overlay", help="complex JSON to draw on top")
        sp.set_defaults(func=func)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"gjcells: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"gjcells: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
