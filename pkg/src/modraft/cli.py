"""Command-line interface.

One subcommand per kernel operation; drawings are edited by loading,
mutating and rewriting the file (pass --out to write elsewhere). Exit code
0 on success, 1 on a domain error (reported on stderr), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import ast
import sys
from pathlib import Path

from . import __version__
from .core import mirror_module, move_module, rotate_module
from .errors import KernelError, NoProtectionAtHeight
from .geometry import Point, Rect, ZoneGrid
from .integrity import sign_drawing, verify_signatures
from .lightning import params_from_props, single_rod_radius
from .persistence import (DEFAULT_GRID_NX, DEFAULT_GRID_NY, FORMAT_VERSION,
                          Drawing, load_drawing_file, load_prototypes,
                          save_drawing_file, save_prototypes)
from .properties import ModuleType, PropKind, schema_for
from .render import render_svg
from .speccing import (SPEC_ROW_FIELDS, apply_catalog_entry, collect_spec_rows,
                       fill_table_module, find_duplicate_positions,
                       load_catalog_file)

__all__ = ["main"]


def _parse_floats(text: str, count: int, what: str) -> list[float]:
    parts = text.split(",")
    if len(parts) != count:
        raise argparse.ArgumentTypeError(
            f"{what} needs {count} comma-separated numbers")
    try:
        return [float(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad {what}: {text!r}") from None


def _rect_arg(text: str) -> Rect:
    x0, y0, x1, y1 = _parse_floats(text, 4, "rectangle")
    return Rect.from_bounds(x0, y0, x1, y1)


def _point_arg(text: str) -> Point:
    x, y = _parse_floats(text, 2, "point")
    return Point(x, y)


def _grid_arg(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise argparse.ArgumentTypeError("grid needs NX,NY positive integers")
    return int(parts[0]), int(parts[1])


def _types_arg(text: str) -> frozenset:
    try:
        return frozenset(ModuleType(name) for name in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad module type list: {text!r}") from None


def _type_arg(text: str) -> ModuleType:
    try:
        return ModuleType(text)
    except ValueError:
        names = ", ".join(t.value for t in ModuleType)
        raise argparse.ArgumentTypeError(
            f"unknown module type {text!r} (choose from {names})") from None


def _column_map_arg(text: str) -> dict:
    out = {}
    for part in text.split(","):
        name, eq, index = part.partition("=")
        if not eq or not index.isdigit():
            raise argparse.ArgumentTypeError(
                f"bad column mapping {part!r}; use field=index")
        out[name] = int(index)
    return out


def _prop_value(text: str):
    """Parse a property value: Python literal syntax, else raw text."""
    try:
        return ast.literal_eval(text)
    except (ValueError, SyntaxError):
        if text == "true":
            return True
        if text == "false":
            return False
        return text


def _props_arg(tokens: "list[str]", mtype: ModuleType) -> dict:
    """Parse key=value property tokens with the module schema in hand:
    text-kind keys take the value verbatim, everything else is a literal."""
    schema = schema_for(mtype)
    props = {}
    for token in tokens:
        key, eq, value = token.partition("=")
        if not eq or not key:
            raise KernelError(f"bad property assignment {token!r}; use key=value")
        spec = schema.get(key)
        if spec is not None and spec.kind is PropKind.TEXT:
            props[key] = value
        else:
            props[key] = _prop_value(value)
    return props


def _out_path(args) -> Path:
    return Path(args.out if args.out else args.drawing)


def _format_real(value: float) -> str:
    return format(value, "g")


def cmd_new(args) -> int:
    grid = None
    if args.grid:
        nx, ny = args.grid
        extent = args.extent
        grid = ZoneGrid(extent.min, max(extent.width, 1e-6) / nx,
                        max(extent.height, 1e-6) / ny, nx, ny)
    d = Drawing.new(args.extent, grid)
    save_drawing_file(d, args.drawing)
    return 0


def cmd_add(args) -> int:
    d = load_drawing_file(args.drawing)
    m = d.add_module(args.type, _props_arg(args.props, args.type))
    save_drawing_file(d, _out_path(args))
    print(f"module {m.id} {m.type.value}")
    return 0


def cmd_set(args) -> int:
    d = load_drawing_file(args.drawing)
    mtype = d.module(args.id).type
    d.set_module_properties(args.id, _props_arg(args.props, mtype))
    save_drawing_file(d, _out_path(args))
    return 0


def cmd_edit(args) -> int:
    chosen = [name for name in ("move", "rotate", "mirror")
              if getattr(args, name) is not None]
    if len(chosen) != 1:
        raise KernelError("pass exactly one of --move, --rotate, --mirror")
    d = load_drawing_file(args.drawing)
    m = d.module(args.id)
    if args.move is not None:
        dx, dy = args.move
        m = move_module(m, dx, dy, grid=d.zone_grid)
    elif args.rotate is not None:
        cx, cy, angle = args.rotate
        m = rotate_module(m, angle, Point(cx, cy), grid=d.zone_grid)
    else:
        x0, y0, axis_angle = args.mirror
        m = mirror_module(m, Point(x0, y0), axis_angle, grid=d.zone_grid)
    d.replace_module(m)
    save_drawing_file(d, _out_path(args))
    return 0


def cmd_list(args) -> int:
    d = load_drawing_file(args.drawing)
    for item in d.items:
        if hasattr(item, "props"):
            p = item.props
            origin = p["origin"]
            print(f"module {item.id} {item.type.value} layer={p['layer']} "
                  f"origin=({_format_real(origin.x)},{_format_real(origin.y)}) "
                  f"angle={_format_real(p['angle_deg'])} "
                  f"mirrored={'true' if p['mirrored'] else 'false'} "
                  f"elements={len(item.geometry)}")
        else:
            print(f"element {type(item).__name__.lower()}")
    return 0


def cmd_render(args) -> int:
    d = load_drawing_file(args.drawing)
    svg = render_svg(d, args.viewport, cull=args.cull)
    Path(args.out).write_text(svg, encoding="utf-8")
    return 0


def _print_spec_errors(errors) -> None:
    for label, message in errors:
        print(f"error: {label}: {message}", file=sys.stderr)


def cmd_spec(args) -> int:
    rows, errors = collect_spec_rows(args.drawings, args.types)
    print("\t".join(SPEC_ROW_FIELDS[:5] + ("qty",) + SPEC_ROW_FIELDS[5:]))
    for row in rows:
        print("\t".join([row.position, row.designation, row.name,
                         row.type_mark, row.unit, str(row.qty),
                         _format_real(row.mass), _format_real(row.price),
                         row.note]))
    _print_spec_errors(errors)
    return 1 if errors else 0


def cmd_fill_table(args) -> int:
    d = load_drawing_file(args.drawing)
    sources = args.sources if args.sources else [args.drawing]
    rows, errors = collect_spec_rows(sources, args.types)
    _print_spec_errors(errors)
    if errors:
        return 1
    fill_table_module(d, args.id, rows, args.columns)
    save_drawing_file(d, _out_path(args))
    print(f"filled {len(rows)} rows")
    return 0


def cmd_check_dup(args) -> int:
    groups, errors = find_duplicate_positions(args.drawings)
    for group in groups:
        places = ", ".join(f"{label or '<memory>'}#{module_id}"
                           for label, module_id in group.occurrences)
        print(f"position {group.position!r} used {len(group.occurrences)} "
              f"times: {places}")
    if not groups:
        print("no duplicate positions")
    _print_spec_errors(errors)
    return 1 if errors else 0


def cmd_proto_save(args) -> int:
    d = load_drawing_file(args.drawing)
    modules, names = [], []
    for token in args.entry:
        module_id, eq, name = token.partition("=")
        if not eq or not module_id.isdigit() or not name:
            raise KernelError(f"bad prototype entry {token!r}; use ID=NAME")
        modules.append(d.module(int(module_id)))
        names.append(name)
    Path(args.out).write_bytes(save_prototypes(modules, names))
    print(f"saved {len(names)} prototypes")
    return 0


def cmd_proto_load(args) -> int:
    entries, errors = load_prototypes(Path(args.library).read_bytes())
    for name, message in errors:
        print(f"error: {name}: {message}", file=sys.stderr)
    matches = [m for name, m in entries if name == args.name]
    if not matches:
        raise KernelError(f"no prototype named {args.name!r}")
    proto = matches[0]
    d = load_drawing_file(args.drawing)
    props = dict(proto.props)
    if args.at is not None:
        props["origin"] = args.at
    if args.angle is not None:
        props["angle_deg"] = args.angle
    m = d.add_module(proto.type, props)
    save_drawing_file(d, _out_path(args))
    print(f"module {m.id} {m.type.value}")
    return 0


def cmd_catalog_apply(args) -> int:
    d = load_drawing_file(args.drawing)
    catalog = load_catalog_file(args.catalog)
    m = apply_catalog_entry(d.module(args.id), catalog, args.entry,
                            grid=d.zone_grid)
    d.replace_module(m)
    save_drawing_file(d, _out_path(args))
    return 0


def cmd_lightning_section(args) -> int:
    d = load_drawing_file(args.drawing)
    lightning = [m for m in d.modules() if m.type is ModuleType.LIGHTNING]
    if args.id is not None:
        chosen = d.module(args.id)
        if chosen.type is not ModuleType.LIGHTNING:
            raise KernelError(f"module {args.id} is not a lightning module")
    elif lightning:
        chosen = lightning[0]
    else:
        raise KernelError("drawing has no lightning module")
    params = params_from_props(chosen.props)
    for rod in params.rods:
        try:
            print(repr(single_rod_radius(rod.h, args.hx, params.zone_class)))
        except NoProtectionAtHeight:
            print("no protection")
    return 0


def cmd_sign(args) -> int:
    d = load_drawing_file(args.drawing)
    try:
        m = sign_drawing(d, args.person, args.position, args.date, args.time,
                         args.password)
    except ValueError as exc:
        raise KernelError(str(exc)) from exc
    save_drawing_file(d, _out_path(args))
    print(f"module {m.id} signature")
    return 0


def cmd_verify(args) -> int:
    d = load_drawing_file(args.drawing)
    statuses = verify_signatures(d, args.password)
    intact = all(s.integrity == "valid" for s in statuses)
    print(f"integrity: {'valid' if intact else 'broken'}")
    if not statuses:
        print("signatures: none")
        return 0
    for s in statuses:
        print(f"signature {s.module_id} ({s.person}, {s.position}, "
              f"{s.date} {s.time}): integrity {s.integrity}, "
              f"authenticity {s.authenticity}")
    return 0 if intact and all(s.authenticity != "broken" for s in statuses) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modraft",
        description="Parametric drawing modules: create, edit, render, "
                    "specify, sign.")
    parser.add_argument(
        "--version", action="version",
        version=f"modraft {__version__} (drawing format {FORMAT_VERSION})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("new", help="create an empty drawing file")
    p.add_argument("drawing")
    p.add_argument("--extent", type=_rect_arg, required=True,
                   metavar="X0,Y0,X1,Y1")
    p.add_argument("--grid", type=_grid_arg, metavar="NX,NY",
                   help=f"zone grid size (default "
                        f"{DEFAULT_GRID_NX},{DEFAULT_GRID_NY})")
    p.set_defaults(func=cmd_new)

    p = sub.add_parser("add", help="add a module to a drawing")
    p.add_argument("drawing")
    p.add_argument("--type", type=_type_arg, required=True)
    p.add_argument("--props", nargs="*", default=[], metavar="KEY=VALUE")
    p.add_argument("--out")
    p.set_defaults(func=cmd_add)

    p = sub.add_parser("set", help="change module properties and regenerate")
    p.add_argument("drawing")
    p.add_argument("--id", type=int, required=True)
    p.add_argument("--props", nargs="+", required=True, metavar="KEY=VALUE")
    p.add_argument("--out")
    p.set_defaults(func=cmd_set)

    p = sub.add_parser("edit", help="move, rotate or mirror a module")
    p.add_argument("drawing")
    p.add_argument("--id", type=int, required=True)
    p.add_argument("--move", type=lambda t: _parse_floats(t, 2, "--move"),
                   metavar="DX,DY")
    p.add_argument("--rotate", type=lambda t: _parse_floats(t, 3, "--rotate"),
                   metavar="CX,CY,DEG")
    p.add_argument("--mirror", type=lambda t: _parse_floats(t, 3, "--mirror"),
                   metavar="X,Y,AXIS_DEG")
    p.add_argument("--out")
    p.set_defaults(func=cmd_edit)

    p = sub.add_parser("list", help="list drawing items")
    p.add_argument("drawing")
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("render", help="render a viewport to SVG")
    p.add_argument("drawing")
    p.add_argument("--out", required=True)
    p.add_argument("--viewport", type=_rect_arg, metavar="X0,Y0,X1,Y1")
    p.add_argument("--cull", action="store_true",
                   help="prefilter modules through the zone grid")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("spec", help="aggregate specification rows")
    p.add_argument("drawings", nargs="+")
    p.add_argument("--types", type=_types_arg)
    p.set_defaults(func=cmd_spec)

    p = sub.add_parser("fill-table", help="fill a table module from spec rows")
    p.add_argument("drawing")
    p.add_argument("--id", type=int, required=True)
    p.add_argument("--columns", type=_column_map_arg, required=True,
                   metavar="FIELD=INDEX,...")
    p.add_argument("--from", dest="sources", nargs="*", default=[],
                   metavar="DRAWING")
    p.add_argument("--types", type=_types_arg)
    p.add_argument("--out")
    p.set_defaults(func=cmd_fill_table)

    p = sub.add_parser("check-dup", help="report duplicate position texts")
    p.add_argument("drawings", nargs="+")
    p.set_defaults(func=cmd_check_dup)

    p = sub.add_parser("proto-save", help="save modules as prototypes")
    p.add_argument("drawing")
    p.add_argument("out")
    p.add_argument("--entry", action="append", required=True,
                   metavar="ID=NAME")
    p.set_defaults(func=cmd_proto_save)

    p = sub.add_parser("proto-load",
                       help="instantiate a prototype into a drawing")
    p.add_argument("drawing")
    p.add_argument("library")
    p.add_argument("--name", required=True)
    p.add_argument("--at", type=_point_arg, metavar="X,Y")
    p.add_argument("--angle", type=float, metavar="DEG")
    p.add_argument("--out")
    p.set_defaults(func=cmd_proto_load)

    p = sub.add_parser("catalog-apply",
                       help="copy a catalog entry onto a module")
    p.add_argument("drawing")
    p.add_argument("--id", type=int, required=True)
    p.add_argument("--catalog", required=True)
    p.add_argument("--entry", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_catalog_apply)

    p = sub.add_parser("lightning-section",
                       help="print protection radii at a section height")
    p.add_argument("drawing")
    p.add_argument("--hx", type=float, required=True, metavar="METRES")
    p.add_argument("--id", type=int)
    p.set_defaults(func=cmd_lightning_section)

    p = sub.add_parser("sign", help="sign a drawing")
    p.add_argument("drawing")
    p.add_argument("--person", required=True)
    p.add_argument("--position", required=True)
    p.add_argument("--date", required=True, metavar="YYYY-MM-DD")
    p.add_argument("--time", required=True, metavar="HH:MM")
    p.add_argument("--password", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sign)

    p = sub.add_parser("verify", help="verify drawing signatures")
    p.add_argument("drawing")
    p.add_argument("--password")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: "list[str] | None" = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (KernelError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
