"""Command-line front end: ``dehnkit <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from pathlib import Path

from . import torus as tc
from .filling import FillingError, cap_surface, fill
from .layered import LayeringError, build_lst, classify_planar, pad_lst
from .normal import (
    CoordinateError,
    admissible_pattern,
    as_coords,
    boundary_restriction,
    euler_characteristic,
    format_coords,
    is_matched,
    parse_coords,
    summarize,
    weight,
)
from .reports import GOALS, candidates, emit
from .triangulation import BoundaryTorus, TriangulationError, read_triangulation
from .vertex import EnumerationLimitError, boundary_slope_set, enumerate_vertices, slope_bound


class UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser):
    p.add_argument("--tri", help="triangulation file")
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.add_argument("--cap", type=int, default=None, help="enumeration bound")
    p.add_argument("--seed", type=int, default=None, help="seed for random sampling")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dehnkit", description="Normal surfaces and Dehn fillings.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-torus", help="describe the boundary of a triangulation")
    _common(p)

    p = sub.add_parser("vertices", help="list vertex solutions")
    _common(p)
    p.add_argument("--mode", choices=("normal", "almost-normal"), default="normal")
    p.add_argument("--embedded-only", action="store_true")

    p = sub.add_parser("slopes", help="boundary slopes of embedded vertex solutions")
    _common(p)
    p.add_argument("--mode", choices=("normal", "almost-normal"), default="normal")

    p = sub.add_parser("layered", help="build a layered solid torus with a given meridian")
    _common(p)
    p.add_argument("--slope", required=True, help="p/q or x1,x2,x3")
    p.add_argument("--min-tets", type=int, default=1)

    p = sub.add_parser("fill", help="Dehn fill along a slope")
    _common(p)
    p.add_argument("--slope", required=True, help="p/q or x1,x2,x3")
    p.add_argument("--min-lst-tets", type=int, default=1)

    p = sub.add_parser("cap", help="cap a surface inside a filling")
    _common(p)
    p.add_argument("--filled", required=True, help="filled triangulation written by 'fill'")
    p.add_argument("--coords", required=True, help="coordinate file for a surface in the base")

    p = sub.add_parser("classify-planar", help="audit the planar surfaces of a layered solid torus")
    _common(p)
    p.add_argument("--slope", help="build the layered torus for this slope instead of reading --tri")
    p.add_argument("--min-tets", type=int, default=1)

    p = sub.add_parser("candidates", help="candidate slopes for a filling question")
    _common(p)
    p.add_argument("--goal", choices=GOALS, required=True)
    p.add_argument("--source", choices=("vertex", "fundamental"), default="vertex")

    p = sub.add_parser("sum", help="add two coordinate lists and describe the result")
    _common(p)
    p.add_argument("--coords", action="append", default=[], help="coordinate file (give twice)")
    return parser


def _tri(args):
    if not args.tri:
        raise UsageError("--tri is required")
    return read_triangulation(args.tri)


def _table(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, delimiter="\t", lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _render(args, header, rows, extra=None) -> str:
    if args.format == "json":
        data = [dict(zip(header, r)) for r in rows]
        if extra is not None:
            data = {**extra, "rows": data}
        return json.dumps(data, indent=2, sort_keys=True) + "\n"
    return _table(header, [[_cell(v) for v in r] for r in rows])


def _cell(v):
    if isinstance(v, (list, tuple)):
        return ",".join(map(str, v))
    if v is None:
        return "-"
    return v


def cmd_verify_torus(args):
    tri = _tri(args)
    rows = []
    for k, comp in enumerate(tri.boundary_components()):
        edges = list(comp.edges) if isinstance(comp, BoundaryTorus) else None
        rows.append([k, len(comp.faces), comp.vertex_count, comp.edge_count, comp.euler, comp.orientable,
                     isinstance(comp, BoundaryTorus), edges])
    header = ["component", "faces", "vertices", "edges", "euler", "orientable", "one_vertex_torus", "edge_classes"]
    extra = {
        "tetrahedra": tri.size,
        "edge_classes": len(tri.edge_classes),
        "vertex_classes": len(tri.vertex_classes),
        "knot_manifold": tri.is_knot_manifold(),
    }
    if args.format == "json":
        return _render(args, header, rows, extra)
    head = "".join(f"# {k}\t{v}\n" for k, v in extra.items())
    return head + _render(args, header, rows)


def cmd_vertices(args):
    tri = _tri(args)
    sols = enumerate_vertices(tri, args.mode, args.embedded_only)
    tori = tri.boundary_tori()
    rows = []
    for v in sols:
        b = boundary_restriction(tri, v.coords, tori[0]) if len(tori) == 1 else None
        s = tc.slope_of(b) if b is not None else None
        rows.append([v.index, list(v.coords), v.embedded, euler_characteristic(tri, v.coords),
                     weight(tri, v.coords), list(b) if b else None, list(s) if s else None])
    return _render(args, ["index", "coords", "embedded", "euler", "weight", "boundary", "slope"], rows)


def cmd_slopes(args):
    tri = _tri(args)
    sols = enumerate_vertices(tri, args.mode, embedded_only=True)
    rows = [[list(s.slope), tc.format_pq(tc.pq_of(s.slope)), list(s.witnesses)] for s in boundary_slope_set(tri, sols)]
    extra = {"bound": slope_bound(tri.size, args.mode), "mode": args.mode}
    return _render(args, ["triple", "pq", "witnesses"], rows, extra)


def _write_side(path, text):
    Path(path).write_text(text, encoding="utf-8")


def cmd_layered(args):
    lst = build_lst(args.slope)
    if args.min_tets > 1:
        lst = pad_lst(lst, args.min_tets - 1)
    text = lst.tri.to_text(comment=f"layered solid torus, meridian {tc.format_pq(lst.pq)}")
    side = json.dumps(lst.sidecar(), indent=2, sort_keys=True) + "\n"
    if args.out:
        _write_side(args.out + ".json", side)
        return text
    return text + "% " + json.dumps(lst.sidecar(), sort_keys=True) + "\n"


def cmd_fill(args):
    base = _tri(args)
    f = fill(base, args.slope, args.min_lst_tets)
    side = {
        "base": str(args.tri),
        "slope": list(f.alpha),
        "slope_pq": tc.format_pq(tc.pq_of(f.alpha)),
        "min_lst_tets": args.min_lst_tets,
        "base_tetrahedra": f.base.size,
        "lst": f.lst.sidecar(),
        "label_map": list(f.label_map),
    }
    text = f.tri.to_text(comment=f"Dehn filling along {side['slope_pq']}")
    if args.out:
        _write_side(args.out + ".json", json.dumps(side, indent=2, sort_keys=True) + "\n")
    return text


def cmd_cap(args):
    base = _tri(args)
    side_path = Path(args.filled + ".json")
    if not side_path.exists():
        raise UsageError(f"{side_path} not found; write the filling with 'fill --out'")
    side = json.loads(side_path.read_text(encoding="utf-8"))
    f = fill(base, tc.TorusCurve(*side["slope"]), side["min_lst_tets"])
    if f.tri != read_triangulation(args.filled):
        raise UsageError(f"{args.filled} does not match the filling rebuilt from {args.tri}")
    s = parse_coords(Path(args.coords).read_text(encoding="utf-8"))
    capped = cap_surface(f, s)
    summary = summarize(f.tri, capped)
    return format_coords(capped) + f"% matched {is_matched(f.tri, capped)}; {summary.describe()}\n"


def cmd_classify_planar(args):
    if args.slope:
        lst = build_lst(args.slope)
        if args.min_tets > 1:
            lst = pad_lst(lst, args.min_tets - 1)
        tri = lst.tri
    else:
        tri = _tri(args)
    audit = classify_planar(tri, args.cap)
    rows = [[pc.kind, list(pc.witness.coords), pc.witness.euler, pc.witness.orientable,
             list(pc.witness.boundary[0]), pc.witness.weight] for pc in audit.classes]
    extra = {
        "tetrahedra": audit.t,
        "cap": audit.cap,
        "closed_surfaces": len(audit.closed),
        "meridian_disk_unique": audit.meridian_disk_unique,
        "weight_violations": len(audit.weight_violations),
        "ok": audit.ok,
        "truncated": audit.truncated,
    }
    header = ["kind", "coords", "euler", "orientable", "boundary", "weight"]
    if args.format == "json":
        return _render(args, header, rows, extra)
    return "".join(f"# {k}\t{v}\n" for k, v in extra.items()) + _render(args, header, rows)


def cmd_candidates(args):
    tri = _tri(args)
    return emit(candidates(tri, args.goal, args.source, args.cap), args.format)


def cmd_sum(args):
    tri = _tri(args)
    if len(args.coords) == 2:
        a, b = (as_coords(parse_coords(Path(p).read_text(encoding="utf-8")), tri) for p in args.coords)
    elif not args.coords:
        rng = random.Random(args.seed)
        sols = [v.coords for v in enumerate_vertices(tri, "normal", embedded_only=True)]
        if not sols:
            raise UsageError("no embedded vertex solutions to sample from")
        a, b = rng.choice(sols), rng.choice(sols)
    else:
        raise UsageError("give --coords twice, or not at all to sample with --seed")
    total = a + b
    lines = [format_coords(total).rstrip("\n")]
    lines.append(f"% matched {is_matched(tri, total)}")
    if admissible_pattern(total) and is_matched(tri, total):
        s = summarize(tri, total)
        lines.append(f"% compatible True; {s.describe()}; weight {s.weight}")
    else:
        lines.append("% compatible False")
    return "\n".join(lines) + "\n"


COMMANDS = {
    "verify-torus": cmd_verify_torus,
    "vertices": cmd_vertices,
    "slopes": cmd_slopes,
    "layered": cmd_layered,
    "fill": cmd_fill,
    "cap": cmd_cap,
    "classify-planar": cmd_classify_planar,
    "candidates": cmd_candidates,
    "sum": cmd_sum,
}

_EXPECTED = (
    UsageError, TriangulationError, CoordinateError, LayeringError, FillingError,
    EnumerationLimitError, tc.CurveError, OSError, ValueError,
)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = COMMANDS[args.command](args)
    except _EXPECTED as exc:
        print(f"dehnkit {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
