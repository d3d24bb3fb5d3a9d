"""Lightning-protection zones for single vertical rods, and the plan-view
geometry generated from them.

Zone maths follows РД 34.21.122-87 for a single rod of height h <= 150 m.
Class B (95 % interception): apex h0 = 0.92*h, ground radius r0 = 1.5*h,
section radius rx = 1.5*(h - hx/0.92). Class A (99.5 %): h0 = 0.85*h,
r0 = (1.1 - 0.002*h)*h, rx = (1.1 - 0.002*h)*(h - hx/0.85). Both reduce to
the linear form rx = r0*(1 - hx/h0). Plan positions and heights are metres;
generated geometry is paper millimetres via an explicit scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import NoProtectionAtHeight, OutOfMethodRange, SchemaViolation
from .geometry import Circle, Element, LineStyle, Point, Segment, Text

__all__ = [
    "Rod", "ZoneClass", "LightningParams", "MAX_ROD_HEIGHT",
    "apex_height", "ground_radius", "single_rod_radius",
    "zone_sections", "is_protected", "gen_lightning",
]

MAX_ROD_HEIGHT = 150.0

CROSS_HALF_MM = 1.5       # rod marker is a 3 mm x-cross in paper space
LABEL_HEIGHT_MM = 2.5
LABEL_GAP_MM = 1.0


class ZoneClass(str, Enum):
    A = "A"
    B = "B"


@dataclass(frozen=True)
class Rod:
    """Vertical air-terminal rod: plan position and height, metres."""

    x: float
    y: float
    h: float

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        object.__setattr__(self, "h", float(self.h))
        if not all(math.isfinite(v) for v in (self.x, self.y, self.h)):
            raise ValueError("rod parameters must be finite")
        if self.h <= 0.0:
            raise ValueError("rod height must be positive")
        if self.h > MAX_ROD_HEIGHT:
            raise OutOfMethodRange(f"rod height {self.h} m exceeds {MAX_ROD_HEIGHT} m")


@dataclass(frozen=True)
class LightningParams:
    """Everything needed to evaluate and draw protection zone sections."""

    rods: tuple[Rod, ...]
    section_heights: tuple[float, ...]
    zone_class: ZoneClass
    scale_mm_per_m: float
    plan_origin: Point = Point(0.0, 0.0)

    def __post_init__(self):
        rods = tuple(self.rods)
        if not rods:
            raise ValueError("at least one rod is required")
        object.__setattr__(self, "rods", rods)
        heights = tuple(float(h) for h in self.section_heights)
        for h in heights:
            if not (math.isfinite(h) and h >= 0.0):
                raise ValueError("section heights must be finite and non-negative")
        if list(heights) != sorted(set(heights)):
            raise ValueError("section heights must be distinct and ascending")
        object.__setattr__(self, "section_heights", heights)
        object.__setattr__(self, "zone_class", ZoneClass(self.zone_class))
        s = float(self.scale_mm_per_m)
        if not (math.isfinite(s) and s > 0.0):
            raise ValueError("plan scale must be positive")
        object.__setattr__(self, "scale_mm_per_m", s)


def apex_height(h: float, zone_class: ZoneClass) -> float:
    """Zone apex h0 for a rod of height h."""
    if ZoneClass(zone_class) is ZoneClass.B:
        return 0.92 * h
    return 0.85 * h


def ground_radius(h: float, zone_class: ZoneClass) -> float:
    """Zone radius r0 at ground level."""
    if ZoneClass(zone_class) is ZoneClass.B:
        return 1.5 * h
    return (1.1 - 0.002 * h) * h


def single_rod_radius(h: float, hx: float, zone_class: ZoneClass) -> float:
    """Protection radius rx at section height hx for a single rod."""
    h = float(h)
    hx = float(hx)
    if not (math.isfinite(h) and h > 0.0):
        raise ValueError("rod height must be positive")
    if h > MAX_ROD_HEIGHT:
        raise OutOfMethodRange(f"rod height {h} m exceeds {MAX_ROD_HEIGHT} m")
    if not (math.isfinite(hx) and hx >= 0.0):
        raise ValueError("section height must be non-negative")
    if hx >= apex_height(h, zone_class):
        raise NoProtectionAtHeight(
            f"section height {hx} m is not below the zone apex of a {h} m rod")
    if ZoneClass(zone_class) is ZoneClass.B:
        return 1.5 * (h - hx / 0.92)
    return (1.1 - 0.002 * h) * (h - hx / 0.85)


def zone_sections(params: LightningParams, hx: float) -> list[Circle]:
    """Section circles at height hx, world metres, one per qualifying rod.

    Rods whose apex does not clear hx contribute nothing.
    """
    circles = []
    for rod in params.rods:
        if apex_height(rod.h, params.zone_class) > hx:
            circles.append(Circle(Point(rod.x, rod.y),
                                  single_rod_radius(rod.h, hx, params.zone_class)))
    return circles


def is_protected(x: float, y: float, z: float, params: LightningParams) -> bool:
    """True if the point (x, y, z) lies inside the union of rod zones."""
    if z < 0.0:
        raise ValueError("height must be non-negative")
    for rod in params.rods:
        if apex_height(rod.h, params.zone_class) > z:
            rx = single_rod_radius(rod.h, z, params.zone_class)
            if math.hypot(x - rod.x, y - rod.y) <= rx:
                return True
    return False


def params_from_props(props: dict) -> LightningParams:
    """Build LightningParams from a normalised lightning property set."""
    rods = []
    for rec in props["rods"]:
        try:
            rods.append(Rod(rec["x"], rec["y"], rec["h"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaViolation("rods", f"bad rod record: {exc}") from exc
    heights = []
    for rec in props["section_heights"]:
        try:
            heights.append(float(rec["height"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaViolation("section_heights", f"bad height record: {exc}") from exc
    scale = props["scale_mm_per_m"]
    if not (math.isfinite(scale) and scale > 0.0):
        raise SchemaViolation("scale_mm_per_m", "must be positive")
    if not rods:
        raise SchemaViolation("rods", "at least one rod is required")
    try:
        return LightningParams(tuple(rods), tuple(heights),
                               ZoneClass(props["zone_class"]),
                               scale, props["plan_origin"])
    except ValueError as exc:
        raise SchemaViolation("section_heights", str(exc)) from exc


def _paper_point(params: LightningParams, x_m: float, y_m: float) -> Point:
    s = params.scale_mm_per_m
    return Point(params.plan_origin.x + x_m * s, params.plan_origin.y + y_m * s)


def _qualifying(params: LightningParams) -> list[tuple[float, int, Rod, float]]:
    """(section height, rod index, rod, world radius) ordered by height then rod."""
    out = []
    for hx in params.section_heights:
        for idx, rod in enumerate(params.rods):
            if apex_height(rod.h, params.zone_class) > hx:
                out.append((hx, idx, rod, single_rod_radius(rod.h, hx, params.zone_class)))
    return out


def gen_lightning(props: dict) -> tuple[Element, ...]:
    """Plan-view zone geometry: rod crosses, section circles, radius labels.

    Circles are ordered by section height ascending, then rod index; the
    matching radius labels follow in the same order and form the module's
    "radius_dimensions" internal list.
    """
    params = params_from_props(props)
    style = LineStyle()
    elements: list[Element] = []
    for rod in params.rods:
        c = _paper_point(params, rod.x, rod.y)
        elements.append(Segment(Point(c.x - CROSS_HALF_MM, c.y - CROSS_HALF_MM),
                                Point(c.x + CROSS_HALF_MM, c.y + CROSS_HALF_MM), style))
        elements.append(Segment(Point(c.x - CROSS_HALF_MM, c.y + CROSS_HALF_MM),
                                Point(c.x + CROSS_HALF_MM, c.y - CROSS_HALF_MM), style))
    entries = _qualifying(params)
    for _hx, _idx, rod, radius in entries:
        c = _paper_point(params, rod.x, rod.y)
        elements.append(Circle(c, radius * params.scale_mm_per_m, style))
    for _hx, _idx, rod, radius in entries:
        c = _paper_point(params, rod.x, rod.y)
        r_mm = radius * params.scale_mm_per_m
        anchor = Point(c.x, c.y + r_mm + LABEL_GAP_MM)
        elements.append(Text(anchor, LABEL_HEIGHT_MM, 0.0, f"R{radius:.2f}", style))
    return tuple(elements)


def radius_label_indices(props: dict) -> tuple[tuple[int, ...], ...]:
    """Geometry indices of each radius label, in circle order."""
    params = params_from_props(props)
    n = len(_qualifying(params))
    base = 2 * len(params.rods) + n
    return tuple((base + i,) for i in range(n))
