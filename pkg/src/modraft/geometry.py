"""2D drafting primitives.

Points, conformal transforms, drawable elements (segments, polylines, arcs,
circles, texts), axis-aligned extents, the drawing zone grid with its bit
masks, snap points and polyline offsetting.

Conventions: coordinates are millimetres in paper space with y up, angles are
degrees counter-clockwise normalised to [0, 360), and every type here is an
immutable value. Rectangle overlap is closed everywhere: touching boundaries
count as intersecting, so conservative tests never drop a visible element.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Union

from .errors import GenerationError

__all__ = [
    "Point", "Transform", "LineType", "LineStyle",
    "Segment", "Polyline", "Arc", "Circle", "Text", "Element",
    "Rect", "ZoneGrid", "ZoneMask",
    "norm_deg", "element_bbox", "apply_transform", "compute_zone_mask",
    "snap_points", "offset_path", "element_to_json", "element_from_json",
]

# Turns flatter than this are treated as straight when joining offset paths.
MIN_JOIN_TURN_DEG = 0.5

_EPS = 1e-9


def norm_deg(angle: float) -> float:
    """Normalise an angle in degrees to [0, 360)."""
    a = float(angle) % 360.0
    if a >= 360.0 or a < 0.0:
        a = 0.0
    return a


def _cos_sin_deg(angle: float) -> tuple[float, float]:
    """Cosine and sine of an angle in degrees, exact at quadrant angles."""
    a = norm_deg(angle)
    if a == 0.0:
        return 1.0, 0.0
    if a == 90.0:
        return 0.0, 1.0
    if a == 180.0:
        return -1.0, 0.0
    if a == 270.0:
        return 0.0, -1.0
    r = math.radians(a)
    return math.cos(r), math.sin(r)


@dataclass(frozen=True)
class Point:
    """2D point in mm."""

    x: float
    y: float

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError("point coordinates must be finite")

    def translated(self, dx: float, dy: float) -> "Point":
        return Point(self.x + dx, self.y + dy)

    def distance_to(self, other: "Point") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


def _as_point(value: object) -> Point:
    """Coerce a Point or an (x, y) pair to a Point."""
    if isinstance(value, Point):
        return value
    if isinstance(value, (tuple, list)) and len(value) == 2:
        return Point(value[0], value[1])
    raise ValueError(f"not a point: {value!r}")


@dataclass(frozen=True)
class Transform:
    """Conformal affine map: x' = a*x + b*y + tx, y' = c*x + d*y + ty.

    The linear part must be a uniform scale times a rotation, optionally
    times a mirror; anything else is rejected at construction.
    """

    a: float
    b: float
    c: float
    d: float
    tx: float = 0.0
    ty: float = 0.0

    def __post_init__(self):
        for name in ("a", "b", "c", "d", "tx", "ty"):
            v = float(getattr(self, name))
            object.__setattr__(self, name, v)
            if not math.isfinite(v):
                raise ValueError("transform coefficients must be finite")
        n1 = self.a * self.a + self.c * self.c
        n2 = self.b * self.b + self.d * self.d
        if n1 <= 0.0 or n2 <= 0.0:
            raise ValueError("transform is singular")
        tol = 1e-9 * max(n1, n2)
        if abs(n1 - n2) > tol or abs(self.a * self.b + self.c * self.d) > tol:
            raise ValueError("transform is not conformal")

    @staticmethod
    def identity() -> "Transform":
        return Transform(1.0, 0.0, 0.0, 1.0, 0.0, 0.0)

    @staticmethod
    def translation(dx: float, dy: float) -> "Transform":
        return Transform(1.0, 0.0, 0.0, 1.0, dx, dy)

    @staticmethod
    def rotation(angle_deg: float, about: "Point | None" = None) -> "Transform":
        cos_a, sin_a = _cos_sin_deg(angle_deg)
        if about is None:
            return Transform(cos_a, -sin_a, sin_a, cos_a, 0.0, 0.0)
        tx = about.x - (cos_a * about.x - sin_a * about.y)
        ty = about.y - (sin_a * about.x + cos_a * about.y)
        return Transform(cos_a, -sin_a, sin_a, cos_a, tx, ty)

    @staticmethod
    def scaling(factor: float, about: "Point | None" = None) -> "Transform":
        s = float(factor)
        if not (math.isfinite(s) and s > 0.0):
            raise ValueError("scale factor must be positive")
        if about is None:
            return Transform(s, 0.0, 0.0, s, 0.0, 0.0)
        return Transform(s, 0.0, 0.0, s, about.x * (1.0 - s), about.y * (1.0 - s))

    @staticmethod
    def mirror(origin: "Point", axis_angle_deg: float) -> "Transform":
        """Reflection across the line through ``origin`` at ``axis_angle_deg``."""
        cos2, sin2 = _cos_sin_deg(2.0 * axis_angle_deg)
        a, b, c, d = cos2, sin2, sin2, -cos2
        tx = origin.x - (a * origin.x + b * origin.y)
        ty = origin.y - (c * origin.x + d * origin.y)
        return Transform(a, b, c, d, tx, ty)

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    @property
    def scale(self) -> float:
        """Uniform scale factor of the linear part (always positive)."""
        return math.hypot(self.a, self.c)

    @property
    def mirrored(self) -> bool:
        return self.det < 0.0

    @property
    def rotation_deg(self) -> float:
        """Rotation angle of the decomposition scale*R(phi)*(mirror-y or 1)."""
        if self.det >= 0.0:
            return norm_deg(math.degrees(math.atan2(self.c, self.a)))
        return norm_deg(math.degrees(math.atan2(-self.c, -self.a)))

    def is_identity(self) -> bool:
        return (self.a == 1.0 and self.b == 0.0 and self.c == 0.0
                and self.d == 1.0 and self.tx == 0.0 and self.ty == 0.0)

    def apply(self, p: Point) -> Point:
        return Point(self.a * p.x + self.b * p.y + self.tx,
                     self.c * p.x + self.d * p.y + self.ty)

    def map_direction_deg(self, angle_deg: float) -> float:
        """Image of a direction angle under the linear part."""
        rot = self.rotation_deg
        if not self.mirrored:
            return norm_deg(angle_deg + rot)
        return norm_deg(rot + 180.0 - angle_deg)

    def compose(self, inner: "Transform") -> "Transform":
        """Transform equal to applying ``inner`` first, then this one."""
        return Transform(
            self.a * inner.a + self.b * inner.c,
            self.a * inner.b + self.b * inner.d,
            self.c * inner.a + self.d * inner.c,
            self.c * inner.b + self.d * inner.d,
            self.a * inner.tx + self.b * inner.ty + self.tx,
            self.c * inner.tx + self.d * inner.ty + self.ty,
        )

    def inverse(self) -> "Transform":
        det = self.det
        ia = self.d / det
        ib = -self.b / det
        ic = -self.c / det
        id_ = self.a / det
        return Transform(ia, ib, ic, id_,
                         -(ia * self.tx + ib * self.ty),
                         -(ic * self.tx + id_ * self.ty))


class LineType(str, Enum):
    SOLID = "solid"
    DASHED = "dashed"
    DASH_DOT = "dash_dot"
    THIN_SOLID = "thin_solid"


@dataclass(frozen=True)
class LineStyle:
    """Line type plus palette colour index (0..255)."""

    line_type: LineType = LineType.SOLID
    color: int = 0

    def __post_init__(self):
        object.__setattr__(self, "line_type", LineType(self.line_type))
        if isinstance(self.color, bool) or not isinstance(self.color, int):
            raise ValueError("colour index must be an integer")
        if not 0 <= self.color <= 255:
            raise ValueError("colour index out of range 0..255")


_DEFAULT_STYLE = LineStyle()


def _as_style(value: object) -> LineStyle:
    if isinstance(value, LineStyle):
        return value
    raise ValueError(f"not a line style: {value!r}")


@dataclass(frozen=True)
class Segment:
    """Straight segment between two points."""

    p1: Point
    p2: Point
    style: LineStyle = _DEFAULT_STYLE

    def __post_init__(self):
        object.__setattr__(self, "p1", _as_point(self.p1))
        object.__setattr__(self, "p2", _as_point(self.p2))
        object.__setattr__(self, "style", _as_style(self.style))


@dataclass(frozen=True)
class Polyline:
    """Chain of vertices, optionally closed."""

    points: tuple[Point, ...]
    closed: bool = False
    style: LineStyle = _DEFAULT_STYLE

    def __post_init__(self):
        pts = tuple(_as_point(p) for p in self.points)
        if len(pts) < 2:
            raise ValueError("polyline needs at least 2 points")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "closed", bool(self.closed))
        object.__setattr__(self, "style", _as_style(self.style))


@dataclass(frozen=True)
class Arc:
    """Circular arc, counter-clockwise from start_angle to end_angle."""

    center: Point
    radius: float
    start_angle: float
    end_angle: float
    style: LineStyle = _DEFAULT_STYLE

    def __post_init__(self):
        object.__setattr__(self, "center", _as_point(self.center))
        r = float(self.radius)
        if not (math.isfinite(r) and r > 0.0):
            raise ValueError("arc radius must be positive")
        object.__setattr__(self, "radius", r)
        start = norm_deg(self.start_angle)
        end = norm_deg(self.end_angle)
        if start == end:
            raise ValueError("arc sweep must lie strictly between 0 and 360 degrees")
        object.__setattr__(self, "start_angle", start)
        object.__setattr__(self, "end_angle", end)
        object.__setattr__(self, "style", _as_style(self.style))

    @property
    def sweep_deg(self) -> float:
        return (self.end_angle - self.start_angle) % 360.0

    def point_at(self, angle_deg: float) -> Point:
        cos_a, sin_a = _cos_sin_deg(angle_deg)
        return Point(self.center.x + self.radius * cos_a,
                     self.center.y + self.radius * sin_a)


@dataclass(frozen=True)
class Circle:
    """Full circle."""

    center: Point
    radius: float
    style: LineStyle = _DEFAULT_STYLE

    def __post_init__(self):
        object.__setattr__(self, "center", _as_point(self.center))
        r = float(self.radius)
        if not (math.isfinite(r) and r > 0.0):
            raise ValueError("circle radius must be positive")
        object.__setattr__(self, "radius", r)
        object.__setattr__(self, "style", _as_style(self.style))


@dataclass(frozen=True)
class Text:
    """Single-line text anchored at its box's bottom-left corner.

    The box is height_mm tall and 0.6 * height_mm per character wide,
    rotated by angle_deg about the anchor.
    """

    anchor: Point
    height_mm: float
    angle_deg: float
    content: str
    style: LineStyle = _DEFAULT_STYLE

    def __post_init__(self):
        object.__setattr__(self, "anchor", _as_point(self.anchor))
        h = float(self.height_mm)
        if not (math.isfinite(h) and h > 0.0):
            raise ValueError("text height must be positive")
        object.__setattr__(self, "height_mm", h)
        object.__setattr__(self, "angle_deg", norm_deg(self.angle_deg))
        if not isinstance(self.content, str):
            raise ValueError("text content must be a string")
        object.__setattr__(self, "style", _as_style(self.style))

    @property
    def box_width(self) -> float:
        return 0.6 * self.height_mm * len(self.content)


Element = Union[Segment, Polyline, Arc, Circle, Text]


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle given by its min and max corners."""

    min: Point
    max: Point

    def __post_init__(self):
        object.__setattr__(self, "min", _as_point(self.min))
        object.__setattr__(self, "max", _as_point(self.max))
        if self.min.x > self.max.x or self.min.y > self.max.y:
            raise ValueError("rectangle corners are not ordered")

    @staticmethod
    def from_bounds(x0: float, y0: float, x1: float, y1: float) -> "Rect":
        return Rect(Point(min(x0, x1), min(y0, y1)), Point(max(x0, x1), max(y0, y1)))

    @staticmethod
    def from_points(points: Iterable[Point]) -> "Rect":
        pts = list(points)
        if not pts:
            raise ValueError("cannot bound an empty point set")
        xs = [p.x for p in pts]
        ys = [p.y for p in pts]
        return Rect(Point(min(xs), min(ys)), Point(max(xs), max(ys)))

    @property
    def width(self) -> float:
        return self.max.x - self.min.x

    @property
    def height(self) -> float:
        return self.max.y - self.min.y

    def union(self, other: "Rect") -> "Rect":
        return Rect(Point(min(self.min.x, other.min.x), min(self.min.y, other.min.y)),
                    Point(max(self.max.x, other.max.x), max(self.max.y, other.max.y)))

    def intersects(self, other: "Rect") -> bool:
        """Closed-rectangle overlap test; touching boundaries count."""
        return (self.min.x <= other.max.x and other.min.x <= self.max.x
                and self.min.y <= other.max.y and other.min.y <= self.max.y)

    def translated(self, dx: float, dy: float) -> "Rect":
        return Rect(self.min.translated(dx, dy), self.max.translated(dx, dy))


@dataclass(frozen=True)
class ZoneGrid:
    """Uniform grid of rectangular zones laid over a drawing."""

    origin: Point
    cell_w: float
    cell_h: float
    nx: int
    ny: int

    def __post_init__(self):
        object.__setattr__(self, "origin", _as_point(self.origin))
        object.__setattr__(self, "cell_w", float(self.cell_w))
        object.__setattr__(self, "cell_h", float(self.cell_h))
        if self.cell_w <= 0.0 or self.cell_h <= 0.0:
            raise ValueError("zone cells must have positive size")
        if self.nx < 1 or self.ny < 1:
            raise ValueError("zone grid needs at least one cell per axis")
        if self.nx * self.ny > 4096:
            raise ValueError("zone grid exceeds 4096 cells")

    @property
    def cell_count(self) -> int:
        return self.nx * self.ny

    def cell_rect(self, i: int, j: int) -> Rect:
        x0 = self.origin.x + i * self.cell_w
        y0 = self.origin.y + j * self.cell_h
        return Rect(Point(x0, y0), Point(x0 + self.cell_w, y0 + self.cell_h))


@dataclass(frozen=True)
class ZoneMask:
    """Row-major bit set over a zone grid's cells (bit j*nx + i)."""

    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("mask length must be non-negative")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("mask bits out of range for its length")

    def is_empty(self) -> bool:
        return self.bits == 0

    def test(self, index: int) -> bool:
        if not 0 <= index < self.length:
            raise IndexError("mask index out of range")
        return bool(self.bits >> index & 1)

    def intersects(self, other: "ZoneMask") -> bool:
        if self.length != other.length:
            raise ValueError("mask lengths differ")
        return (self.bits & other.bits) != 0

    def indices(self) -> list[int]:
        return [i for i in range(self.length) if self.bits >> i & 1]


def _angle_in_sweep(angle: float, start: float, sweep: float) -> bool:
    return (angle - start) % 360.0 <= sweep


def element_bbox(element: Element) -> Rect:
    """Tight axis-aligned bounds of an element.

    Text bounds are those of its rotated anchor box.
    """
    if isinstance(element, Segment):
        return Rect.from_points([element.p1, element.p2])
    if isinstance(element, Polyline):
        return Rect.from_points(element.points)
    if isinstance(element, Circle):
        c, r = element.center, element.radius
        return Rect(Point(c.x - r, c.y - r), Point(c.x + r, c.y + r))
    if isinstance(element, Arc):
        sweep = element.sweep_deg
        pts = [element.point_at(element.start_angle), element.point_at(element.end_angle)]
        for quad in (0.0, 90.0, 180.0, 270.0):
            if _angle_in_sweep(quad, element.start_angle, sweep):
                pts.append(element.point_at(quad))
        return Rect.from_points(pts)
    if isinstance(element, Text):
        w, h = element.box_width, element.height_mm
        cos_a, sin_a = _cos_sin_deg(element.angle_deg)
        ax, ay = element.anchor.x, element.anchor.y
        corners = [Point(ax + cos_a * cx - sin_a * cy, ay + sin_a * cx + cos_a * cy)
                   for cx, cy in ((0.0, 0.0), (w, 0.0), (w, h), (0.0, h))]
        return Rect.from_points(corners)
    raise TypeError(f"not an element: {element!r}")


def apply_transform(element: Element, t: Transform) -> Element:
    """Image of an element under a conformal transform."""
    if t.is_identity():
        return element
    if isinstance(element, Segment):
        return Segment(t.apply(element.p1), t.apply(element.p2), element.style)
    if isinstance(element, Polyline):
        return Polyline(tuple(t.apply(p) for p in element.points),
                        element.closed, element.style)
    if isinstance(element, Circle):
        return Circle(t.apply(element.center), element.radius * t.scale, element.style)
    if isinstance(element, Arc):
        start = t.map_direction_deg(element.start_angle)
        end = t.map_direction_deg(element.end_angle)
        if t.mirrored:
            start, end = end, start
        return Arc(t.apply(element.center), element.radius * t.scale,
                   start, end, element.style)
    if isinstance(element, Text):
        return Text(t.apply(element.anchor), element.height_mm * t.scale,
                    t.map_direction_deg(element.angle_deg), element.content,
                    element.style)
    raise TypeError(f"not an element: {element!r}")


def compute_zone_mask(bbox: Rect, grid: ZoneGrid) -> ZoneMask:
    """Bit set of every grid cell whose closed rectangle touches ``bbox``."""
    ox, oy = grid.origin.x, grid.origin.y
    cw, ch = grid.cell_w, grid.cell_h
    i0 = max(0, int(math.floor((bbox.min.x - ox) / cw)) - 1)
    i1 = min(grid.nx - 1, int(math.ceil((bbox.max.x - ox) / cw)) + 1)
    j0 = max(0, int(math.floor((bbox.min.y - oy) / ch)) - 1)
    j1 = min(grid.ny - 1, int(math.ceil((bbox.max.y - oy) / ch)) + 1)
    bits = 0
    for j in range(j0, j1 + 1):
        y_lo = oy + j * ch
        y_hi = oy + (j + 1) * ch
        if not (y_lo <= bbox.max.y and bbox.min.y <= y_hi):
            continue
        row_base = j * grid.nx
        for i in range(i0, i1 + 1):
            x_lo = ox + i * cw
            x_hi = ox + (i + 1) * cw
            if x_lo <= bbox.max.x and bbox.min.x <= x_hi:
                bits |= 1 << (row_base + i)
    return ZoneMask(grid.cell_count, bits)


def snap_points(element: Element) -> list[Point]:
    """Characteristic points used for cursor snapping."""
    if isinstance(element, Segment):
        mid = Point((element.p1.x + element.p2.x) / 2.0,
                    (element.p1.y + element.p2.y) / 2.0)
        return [element.p1, element.p2, mid]
    if isinstance(element, Polyline):
        return list(element.points)
    if isinstance(element, Arc):
        return [element.point_at(element.start_angle),
                element.point_at(element.end_angle), element.center]
    if isinstance(element, Circle):
        c, r = element.center, element.radius
        return [c, Point(c.x + r, c.y), Point(c.x, c.y + r),
                Point(c.x - r, c.y), Point(c.x, c.y - r)]
    if isinstance(element, Text):
        return [element.anchor]
    raise TypeError(f"not an element: {element!r}")


def _line_intersection(p1: Point, u1: tuple[float, float],
                       p2: Point, u2: tuple[float, float]) -> Point:
    denom = u1[0] * u2[1] - u1[1] * u2[0]
    t = ((p2.x - p1.x) * u2[1] - (p2.y - p1.y) * u2[0]) / denom
    return Point(p1.x + t * u1[0], p1.y + t * u1[1])


def _path_directions(pts: list[Point]) -> tuple[list[tuple[float, float]], list[float]]:
    dirs: list[tuple[float, float]] = []
    lengths: list[float] = []
    for p, q in zip(pts, pts[1:]):
        length = p.distance_to(q)
        if length <= _EPS:
            raise GenerationError("degenerate path: repeated point")
        dirs.append(((q.x - p.x) / length, (q.y - p.y) / length))
        lengths.append(length)
    return dirs, lengths


def _turn_angles(dirs: list[tuple[float, float]]) -> list[float]:
    """Signed turn at each interior vertex, radians in (-pi, pi)."""
    limit = math.sin(math.radians(MIN_JOIN_TURN_DEG))
    turns = []
    for u, v in zip(dirs, dirs[1:]):
        cross = u[0] * v[1] - u[1] * v[0]
        dot = u[0] * v[0] + u[1] * v[1]
        if dot < 0.0 and abs(cross) < limit:
            raise GenerationError("degenerate path: direction reversal")
        turns.append(math.atan2(cross, dot))
    return turns


def offset_path(points: Iterable[object], side_offset: float,
                corner: str = "welded", fillet_radius: float = 0.0,
                *, style: LineStyle = _DEFAULT_STYLE) -> list[Element]:
    """Offset an open polyline by a signed distance (positive = left of travel).

    ``corner="welded"`` joins the offset segments at miter intersections;
    ``corner="bent"`` replaces each corner with a tangent arc of
    ``fillet_radius`` (the offset side gets radius ``fillet_radius`` minus the
    offset on left turns, plus it on right turns). Joins flatter than
    MIN_JOIN_TURN_DEG are left unjoined.
    """
    pts = [_as_point(p) for p in points]
    if len(pts) < 2:
        raise GenerationError("path needs at least 2 points")
    dirs, lengths = _path_directions(pts)
    turns = _turn_angles(dirs)
    d = float(side_offset)
    normals = [(-u[1], u[0]) for u in dirs]
    min_turn = math.radians(MIN_JOIN_TURN_DEG)

    if corner == "welded":
        starts = [Point(p.x + d * n[0], p.y + d * n[1])
                  for p, n in zip(pts[:-1], normals)]
        ends = [Point(q.x + d * n[0], q.y + d * n[1])
                for q, n in zip(pts[1:], normals)]
        for k, turn in enumerate(turns):
            if abs(turn) < min_turn:
                continue
            miter = _line_intersection(starts[k], dirs[k], starts[k + 1], dirs[k + 1])
            ends[k] = miter
            starts[k + 1] = miter
        return [Segment(a, b, style) for a, b in zip(starts, ends)]

    if corner != "bent":
        raise ValueError(f"unknown corner mode {corner!r}")

    radius = float(fillet_radius)
    if radius <= abs(d):
        raise GenerationError("fillet radius must exceed the offset magnitude")

    def _tangent_length(turn: float) -> float:
        if abs(turn) < min_turn:
            return 0.0
        half = abs(turn) / 2.0
        # right-angle corners are ubiquitous; keep them exact
        return radius if half == math.pi / 4.0 else radius * math.tan(half)

    tangents = [_tangent_length(turn) for turn in turns]
    for i, length in enumerate(lengths):
        t_in = tangents[i - 1] if i > 0 else 0.0
        t_out = tangents[i] if i < len(tangents) else 0.0
        if t_in + t_out > length + _EPS:
            raise GenerationError("fillet does not fit on a path segment")

    elements: list[Element] = []
    cursor = Point(pts[0].x + d * normals[0][0], pts[0].y + d * normals[0][1])
    for j, turn in enumerate(turns):
        vertex = pts[j + 1]
        u_in, u_out = dirs[j], dirs[j + 1]
        n_in, n_out = normals[j], normals[j + 1]
        t = tangents[j]
        if t == 0.0:
            # Near-straight join: close off the incoming run, restart on the
            # outgoing offset line.
            end = Point(vertex.x + d * n_in[0], vertex.y + d * n_in[1])
            if cursor.distance_to(end) > _EPS:
                elements.append(Segment(cursor, end, style))
            cursor = Point(vertex.x + d * n_out[0], vertex.y + d * n_out[1])
            continue
        tan_in = Point(vertex.x - t * u_in[0], vertex.y - t * u_in[1])
        tan_out = Point(vertex.x + t * u_out[0], vertex.y + t * u_out[1])
        entry = Point(tan_in.x + d * n_in[0], tan_in.y + d * n_in[1])
        exit_ = Point(tan_out.x + d * n_out[0], tan_out.y + d * n_out[1])
        if cursor.distance_to(entry) > _EPS:
            elements.append(Segment(cursor, entry, style))
        left = turn > 0.0
        if left:
            center = Point(tan_in.x + radius * n_in[0], tan_in.y + radius * n_in[1])
            arc_radius = radius - d
        else:
            center = Point(tan_in.x - radius * n_in[0], tan_in.y - radius * n_in[1])
            arc_radius = radius + d
        a_entry = math.degrees(math.atan2(entry.y - center.y, entry.x - center.x))
        a_exit = math.degrees(math.atan2(exit_.y - center.y, exit_.x - center.x))
        if left:
            elements.append(Arc(center, arc_radius, a_entry, a_exit, style))
        else:
            elements.append(Arc(center, arc_radius, a_exit, a_entry, style))
        cursor = exit_
    tail = Point(pts[-1].x + d * normals[-1][0], pts[-1].y + d * normals[-1][1])
    if cursor.distance_to(tail) > _EPS:
        elements.append(Segment(cursor, tail, style))
    if not elements:
        raise GenerationError("offset produced no geometry")
    return elements


def _point_json(p: Point) -> list[float]:
    return [p.x, p.y]


def _style_json(style: LineStyle) -> dict:
    return {"color": style.color, "line_type": style.line_type.value}


def _style_from_json(doc: object) -> LineStyle:
    if not isinstance(doc, dict):
        raise ValueError("line style must be an object")
    try:
        return LineStyle(LineType(doc["line_type"]), doc["color"])
    except (KeyError, ValueError) as exc:
        raise ValueError(f"bad line style: {exc}") from exc


def element_to_json(element: Element) -> dict:
    """Plain-JSON form of an element (used in files and byte comparisons)."""
    style = _style_json(element.style)
    if isinstance(element, Segment):
        return {"kind": "segment", "p1": _point_json(element.p1),
                "p2": _point_json(element.p2), "style": style}
    if isinstance(element, Polyline):
        return {"kind": "polyline", "points": [_point_json(p) for p in element.points],
                "closed": element.closed, "style": style}
    if isinstance(element, Arc):
        return {"kind": "arc", "center": _point_json(element.center),
                "radius": element.radius, "start_angle": element.start_angle,
                "end_angle": element.end_angle, "style": style}
    if isinstance(element, Circle):
        return {"kind": "circle", "center": _point_json(element.center),
                "radius": element.radius, "style": style}
    if isinstance(element, Text):
        return {"kind": "text", "anchor": _point_json(element.anchor),
                "height_mm": element.height_mm, "angle_deg": element.angle_deg,
                "content": element.content, "style": style}
    raise TypeError(f"not an element: {element!r}")


def element_from_json(doc: object) -> Element:
    """Parse the plain-JSON form produced by :func:`element_to_json`."""
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ValueError("element record must be an object with a 'kind'")
    kind = doc["kind"]
    try:
        style = _style_from_json(doc["style"]) if "style" in doc else _DEFAULT_STYLE
        if kind == "segment":
            return Segment(_as_point(doc["p1"]), _as_point(doc["p2"]), style)
        if kind == "polyline":
            return Polyline(tuple(_as_point(p) for p in doc["points"]),
                            bool(doc.get("closed", False)), style)
        if kind == "arc":
            return Arc(_as_point(doc["center"]), doc["radius"],
                       doc["start_angle"], doc["end_angle"], style)
        if kind == "circle":
            return Circle(_as_point(doc["center"]), doc["radius"], style)
        if kind == "text":
            return Text(_as_point(doc["anchor"]), doc["height_mm"],
                        doc.get("angle_deg", 0.0), doc["content"], style)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"bad {kind} element: {exc}") from exc
    raise ValueError(f"unknown element kind {kind!r}")
