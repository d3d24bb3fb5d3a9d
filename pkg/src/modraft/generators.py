"""Geometry generators for the built-in module types.

Every generator is a pure function of a normalised property set and returns
local-coordinate elements; placement (origin, rotation, mirroring, user
scale) is applied by the module layer afterwards. Identical properties must
always produce byte-identical geometry.
"""

from __future__ import annotations

from .errors import GenerationError, SchemaViolation
from .geometry import (Element, LineStyle, LineType, Point, Polyline, Circle,
                       Segment, Text, element_from_json, offset_path)
from .lightning import gen_lightning, radius_label_indices
from .properties import ModuleType

__all__ = ["generate_local", "internal_list_indices", "SHEET_SIZES"]

# Valve bowtie (ГОСТ 2.785 style): two triangles nose to nose.
VALVE_LENGTH = 4.0
VALVE_HALF_BASE = 1.5

# Instrument symbol (ГОСТ 21.404 style): circle with optional board chord.
INSTRUMENT_RADIUS = 5.0
INSTRUMENT_TEXT_HEIGHT = 2.5

TABLE_TEXT_HEIGHT = 2.5
TABLE_TEXT_INSET = 1.0

POSDES_SHELF_LENGTH = 8.0
POSDES_TEXT_HEIGHT = 3.5
POSDES_TEXT_INSET = 1.0
POSDES_TEXT_GAP = 0.5

SIGNATURE_TEXT_HEIGHT = 3.5

# Portrait sheet sizes in mm (ГОСТ 2.301).
SHEET_SIZES = {"A4": (210.0, 297.0), "A3": (297.0, 420.0), "A2": (420.0, 594.0),
               "A1": (594.0, 841.0), "A0": (841.0, 1189.0)}
FRAME_MARGIN_LEFT = 20.0
FRAME_MARGIN = 5.0
TITLE_BLOCK_W = 185.0
TITLE_BLOCK_H = 55.0
TITLE_BLOCK_ROWS = (15.0, 15.0, 25.0)  # band heights, top to bottom

_SOLID = LineStyle()
_THIN = LineStyle(LineType.THIN_SOLID)
_CENTERLINE = LineStyle(LineType.DASH_DOT)


def gen_user(props: dict) -> tuple[Element, ...]:
    """Stored free-form elements, parsed from their record form."""
    records = props["elements"]
    if not records:
        raise SchemaViolation("elements", "user module needs at least one element")
    try:
        return tuple(element_from_json(rec) for rec in records)
    except ValueError as exc:
        raise SchemaViolation("elements", str(exc)) from exc


def gen_pipeline(props: dict) -> tuple[Element, ...]:
    """Two offset runs at +-diameter/2, plus an optional centreline."""
    diameter = props["diameter_mm"]
    if diameter <= 0.0:
        raise SchemaViolation("diameter_mm", "must be positive")
    path = props["path"]
    corner = props["corner"]
    radius = props["fillet_radius"]
    if corner == "bent" and radius <= diameter / 2.0:
        raise SchemaViolation("fillet_radius",
                              "must exceed half the diameter for bent corners")
    half = diameter / 2.0
    elements: list[Element] = []
    elements += offset_path(path, half, corner, radius, style=_SOLID)
    elements += offset_path(path, -half, corner, radius, style=_SOLID)
    if props["show_centerline"]:
        if corner == "bent":
            elements += offset_path(path, 0.0, "bent", radius, style=_CENTERLINE)
        else:
            elements.append(Polyline(tuple(path), False, _CENTERLINE))
    return tuple(elements)


def gen_valve(props: dict) -> tuple[Element, ...]:
    """Bowtie symbol: two closed triangles meeting at the origin.

    The symbol is invariant under both mirror codes, so symmetry settings
    never change its geometry.
    """
    l, hb = VALVE_LENGTH, VALVE_HALF_BASE
    left = Polyline((Point(-l, -hb), Point(0.0, 0.0), Point(-l, hb)), True, _SOLID)
    right = Polyline((Point(l, -hb), Point(0.0, 0.0), Point(l, hb)), True, _SOLID)
    return (left, right)


def gen_instrument(props: dict) -> tuple[Element, ...]:
    """Instrument circle with function and position texts, chord if on-board."""
    code = props["function_code"]
    if not code:
        raise SchemaViolation("function_code", "must not be empty")
    line_type = props["kip_line_type"]
    style = LineStyle(LineType(line_type)) if line_type else _SOLID
    r = INSTRUMENT_RADIUS
    th = INSTRUMENT_TEXT_HEIGHT
    elements: list[Element] = [Circle(Point(0.0, 0.0), r, style)]
    if props["on_board"]:
        elements.append(Segment(Point(-r, 0.0), Point(r, 0.0), style))
    # Function letters centred in the upper half, position text in the lower.
    elements.append(Text(Point(-0.3 * th * len(code), r / 2.0 - th / 2.0),
                         th, 0.0, code, style))
    position = props["upper_index"] + props["lower_index"]
    elements.append(Text(Point(-0.3 * th * len(position), -r / 2.0 - th / 2.0),
                         th, 0.0, position, style))
    return tuple(elements)


def _table_layout(props: dict) -> tuple[Point, list[float], float, float, list[list[str]]]:
    columns = props["columns"]
    if not columns:
        raise SchemaViolation("columns", "table needs at least one column")
    widths = []
    headers = []
    for rec in columns:
        try:
            w = float(rec["width_mm"])
            header = rec.get("header", "")
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaViolation("columns", f"bad column record: {exc}") from exc
        if not (w > 0.0):
            raise SchemaViolation("columns", "column widths must be positive")
        if not isinstance(header, str):
            raise SchemaViolation("columns", "column headers must be text")
        widths.append(w)
        headers.append(header)
    row_h = props["row_height_mm"]
    header_h = props["header_height_mm"]
    if row_h <= 0.0:
        raise SchemaViolation("row_height_mm", "must be positive")
    if header_h <= 0.0:
        raise SchemaViolation("header_height_mm", "must be positive")
    rows = []
    for rec in props["rows"]:
        cells = rec.get("cells")
        if not isinstance(cells, list) or len(cells) != len(columns):
            raise SchemaViolation("rows", "each row needs one cell per column")
        if not all(isinstance(c, str) for c in cells):
            raise SchemaViolation("rows", "cells must be text")
        rows.append(cells)
    return props["position"], widths, row_h, header_h, [headers] + rows


def gen_table(props: dict) -> tuple[Element, ...]:
    """Ruled table growing downward from its top-left position.

    Emits (columns+1) vertical and (rows+2) horizontal segments, then one
    text per cell, header row first, each inset 1 mm from its column line.
    """
    position, widths, row_h, header_h, text_rows = _table_layout(props)
    x0, y0 = position.x, position.y
    total_w = sum(widths)
    total_h = header_h + row_h * (len(text_rows) - 1)
    band_tops = [y0, y0 - header_h]
    for _ in range(len(text_rows) - 1):
        band_tops.append(band_tops[-1] - row_h)

    elements: list[Element] = []
    x = x0
    xs = [x0]
    for w in widths:
        x += w
        xs.append(x)
    for x in xs:
        elements.append(Segment(Point(x, y0 - total_h), Point(x, y0), _SOLID))
    for y in band_tops:
        elements.append(Segment(Point(x0, y), Point(x0 + total_w, y), _SOLID))
    for r, cells in enumerate(text_rows):
        band_h = header_h if r == 0 else row_h
        y_center = band_tops[r] - band_h / 2.0
        for col, content in enumerate(cells):
            anchor = Point(xs[col] + TABLE_TEXT_INSET,
                           y_center - TABLE_TEXT_HEIGHT / 2.0)
            elements.append(Text(anchor, TABLE_TEXT_HEIGHT, 0.0, content, _SOLID))
    return tuple(elements)


def _table_row_indices(props: dict) -> tuple[tuple[int, ...], ...]:
    _, widths, _, _, text_rows = _table_layout(props)
    n_cols = len(widths)
    n_rows = len(text_rows) - 1
    base = (n_cols + 1) + (n_rows + 2) + n_cols  # rules plus header texts
    return tuple(tuple(range(base + r * n_cols, base + (r + 1) * n_cols))
                 for r in range(n_rows))


def frame_size(props: dict) -> tuple[float, float]:
    """Sheet width and height in mm after orientation and multiplicity."""
    fmt = props["format"]
    landscape = props["landscape"]
    k = props["multiplicity"]
    if k < 1:
        raise SchemaViolation("multiplicity", "must be at least 1")
    if fmt == "A4" and landscape:
        raise SchemaViolation("landscape", "A4 sheets are portrait-only")
    w, h = SHEET_SIZES[fmt]
    if landscape:
        w, h = h, w
        return w * k, h  # long side horizontal
    return w, h * k


def gen_frame(props: dict) -> tuple[Element, ...]:
    """Sheet boundary, inner frame (20 mm binding margin, 5 mm elsewhere)
    and a 185x55 title block at the inner frame's bottom-right."""
    w, h = frame_size(props)
    outer = Polyline((Point(0.0, 0.0), Point(w, 0.0), Point(w, h), Point(0.0, h)),
                     True, _THIN)
    ix0, iy0 = FRAME_MARGIN_LEFT, FRAME_MARGIN
    ix1, iy1 = w - FRAME_MARGIN, h - FRAME_MARGIN
    inner = Polyline((Point(ix0, iy0), Point(ix1, iy0), Point(ix1, iy1), Point(ix0, iy1)),
                     True, _SOLID)
    tx0 = ix1 - TITLE_BLOCK_W
    ty1 = iy0 + TITLE_BLOCK_H
    title = Polyline((Point(tx0, iy0), Point(ix1, iy0), Point(ix1, ty1), Point(tx0, ty1)),
                     True, _SOLID)
    elements: list[Element] = [outer, inner, title]
    y = ty1
    for band in TITLE_BLOCK_ROWS[:-1]:
        y -= band
        elements.append(Segment(Point(tx0, y), Point(ix1, y), _SOLID))
    return tuple(elements)


def gen_posdes(props: dict) -> tuple[Element, ...]:
    """Leader line to a horizontal 8 mm shelf with the position text above it."""
    text = props["position_text"]
    if not text:
        raise SchemaViolation("position_text", "must not be empty")
    leader_from = props["leader_from"]
    shelf_at = props["shelf_at"]
    leader = Segment(leader_from, shelf_at, _SOLID)
    shelf = Segment(shelf_at, Point(shelf_at.x + POSDES_SHELF_LENGTH, shelf_at.y), _SOLID)
    label = Text(Point(shelf_at.x + POSDES_TEXT_INSET, shelf_at.y + POSDES_TEXT_GAP),
                 POSDES_TEXT_HEIGHT, 0.0, text, _SOLID)
    return (leader, shelf, label)


def gen_signature(props: dict) -> tuple[Element, ...]:
    """Visible stamp of an electronic signature."""
    content = (f"{props['person']} / {props['position']} / "
               f"{props['date']} {props['time']}")
    return (Text(Point(0.0, 0.0), SIGNATURE_TEXT_HEIGHT, 0.0, content, _SOLID),)


_GENERATORS = {
    ModuleType.USER: gen_user,
    ModuleType.PIPELINE: gen_pipeline,
    ModuleType.VALVE: gen_valve,
    ModuleType.INSTRUMENT: gen_instrument,
    ModuleType.TABLE: gen_table,
    ModuleType.FRAME: gen_frame,
    ModuleType.POSDES: gen_posdes,
    ModuleType.LIGHTNING: gen_lightning,
    ModuleType.SIGNATURE: gen_signature,
}


def generate_local(mtype: ModuleType, props: dict) -> tuple[Element, ...]:
    """Local-coordinate geometry for a normalised property set."""
    geometry = _GENERATORS[ModuleType(mtype)](props)
    if not geometry:
        raise GenerationError(f"type {ModuleType(mtype).value!r} generated no geometry")
    return geometry


def internal_list_indices(mtype: ModuleType, props: dict) -> dict[str, tuple[tuple[int, ...], ...]]:
    """Named internal lists of a module: list name -> per-entry geometry indices."""
    mtype = ModuleType(mtype)
    if mtype is ModuleType.TABLE:
        return {"rows": _table_row_indices(props)}
    if mtype is ModuleType.LIGHTNING:
        return {"radius_dimensions": radius_label_indices(props)}
    return {}
