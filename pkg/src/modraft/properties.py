"""Property model for drawing modules.

Each module type declares an ordered property schema. Property values are
typed, validated and normalised so that identical parameter sets always
serialise to identical bytes; serialised values are tagged with their kind
and need no schema to be read back.

Canonical property keys are ASCII identifiers. Their fixed Russian display
names ship in ``data/property_names_ru.json`` (see
:func:`russian_property_names`).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from typing import Mapping

from .errors import SchemaViolation
from .geometry import Point, norm_deg, element_to_json
from . import geometry

__all__ = [
    "ModuleType", "PropKind", "Axis", "PropSpec",
    "schema_for", "validate_props", "props_to_json", "props_from_json",
    "russian_property_names", "SYMMETRY_CODES",
]


class ModuleType(str, Enum):
    USER = "user"
    PIPELINE = "pipeline"
    VALVE = "valve"
    INSTRUMENT = "instrument"
    TABLE = "table"
    FRAME = "frame"
    POSDES = "posdes"
    LIGHTNING = "lightning"
    SIGNATURE = "signature"


class PropKind(str, Enum):
    TEXT = "text"
    REAL = "real"
    INTEGER = "integer"
    BOOLEAN = "boolean"
    POINT = "point"
    POINT_LIST = "point_list"
    AXIS_LIST = "axis_list"
    RECORD = "record"
    RECORD_LIST = "record_list"


@dataclass(frozen=True)
class Axis:
    """Directed attachment axis: an origin point plus a direction angle."""

    origin: Point
    angle_deg: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "origin", geometry._as_point(self.origin))
        object.__setattr__(self, "angle_deg", norm_deg(self.angle_deg))


@dataclass(frozen=True)
class PropSpec:
    """Declared kind plus default for one property key."""

    kind: PropKind
    required: bool = False
    default: object = None
    choices: tuple[str, ...] = ()


SYMMETRY_CODES = ("none", "mirror_x", "mirror_y", "both")

_LINE_TYPE_CHOICES = ("", "solid", "dashed", "dash_dot", "thin_solid")

# Reserved placement keys present in every schema. Edits to placed geometry
# rewrite these and regenerate.
PLACEMENT_SCHEMA: dict[str, PropSpec] = {
    "layer": PropSpec(PropKind.INTEGER, default=0),
    "origin": PropSpec(PropKind.POINT, default=Point(0.0, 0.0)),
    "angle_deg": PropSpec(PropKind.REAL, default=0.0),
    "mirrored": PropSpec(PropKind.BOOLEAN, default=False),
}

PLACEMENT_KEYS = tuple(PLACEMENT_SCHEMA)

# Bowtie half-length of the valve symbol; mirrored in generators.VALVE_LENGTH.
_VALVE_ATTACH_DEFAULT = (Axis(Point(-4.0, 0.0), 0.0), Axis(Point(4.0, 0.0), 0.0))

_SCHEMAS: dict[ModuleType, dict[str, PropSpec]] = {
    ModuleType.USER: {
        "attach": PropSpec(PropKind.AXIS_LIST, default=()),
        "symmetry": PropSpec(PropKind.TEXT, default="none", choices=SYMMETRY_CODES),
        "comment": PropSpec(PropKind.TEXT, default=""),
        "elements": PropSpec(PropKind.RECORD_LIST, required=True),
        "scale": PropSpec(PropKind.REAL, default=1.0),
    },
    ModuleType.PIPELINE: {
        "path": PropSpec(PropKind.POINT_LIST, required=True),
        "diameter_mm": PropSpec(PropKind.REAL, required=True),
        "corner": PropSpec(PropKind.TEXT, default="welded", choices=("welded", "bent")),
        "fillet_radius": PropSpec(PropKind.REAL, default=0.0),
        "show_centerline": PropSpec(PropKind.BOOLEAN, default=True),
        "comment": PropSpec(PropKind.TEXT, default=""),
    },
    ModuleType.VALVE: {
        "attach": PropSpec(PropKind.AXIS_LIST, default=_VALVE_ATTACH_DEFAULT),
        "symmetry": PropSpec(PropKind.TEXT, default="none", choices=SYMMETRY_CODES),
        "comment": PropSpec(PropKind.TEXT, default=""),
        "face_to_face": PropSpec(PropKind.REAL, default=0.0),
        "designation": PropSpec(PropKind.TEXT, default=""),
        "name": PropSpec(PropKind.TEXT, default=""),
        "mass": PropSpec(PropKind.REAL, default=0.0),
        "note": PropSpec(PropKind.TEXT, default=""),
        "dy": PropSpec(PropKind.REAL, default=0.0),
        "py": PropSpec(PropKind.REAL, default=0.0),
    },
    ModuleType.INSTRUMENT: {
        "attach": PropSpec(PropKind.AXIS_LIST, default=()),
        "carrier_geometry": PropSpec(PropKind.POINT_LIST, default=()),
        "pos_designation": PropSpec(PropKind.TEXT, default=""),
        "designation": PropSpec(PropKind.TEXT, default=""),
        "name": PropSpec(PropKind.TEXT, default=""),
        "mass": PropSpec(PropKind.REAL, default=0.0),
        "note": PropSpec(PropKind.TEXT, default=""),
        "type_mark": PropSpec(PropKind.TEXT, default=""),
        "unit": PropSpec(PropKind.TEXT, default=""),
        "unit_code": PropSpec(PropKind.TEXT, default=""),
        "manufacturer_code": PropSpec(PropKind.TEXT, default=""),
        "item_code": PropSpec(PropKind.TEXT, default=""),
        "price": PropSpec(PropKind.REAL, default=0.0),
        "name_tech": PropSpec(PropKind.TEXT, default=""),
        "on_board": PropSpec(PropKind.BOOLEAN, default=False),
        "function_code": PropSpec(PropKind.TEXT, required=True),
        "upper_index": PropSpec(PropKind.TEXT, default=""),
        "lower_index": PropSpec(PropKind.TEXT, default=""),
        "comment": PropSpec(PropKind.TEXT, default=""),
        "kip_line_type": PropSpec(PropKind.TEXT, default="", choices=_LINE_TYPE_CHOICES),
    },
    ModuleType.TABLE: {
        "position": PropSpec(PropKind.POINT, default=Point(0.0, 0.0)),
        "columns": PropSpec(PropKind.RECORD_LIST, required=True),
        "row_height_mm": PropSpec(PropKind.REAL, required=True),
        "header_height_mm": PropSpec(PropKind.REAL, required=True),
        "rows": PropSpec(PropKind.RECORD_LIST, default=()),
        "comment": PropSpec(PropKind.TEXT, default=""),
    },
    ModuleType.FRAME: {
        "format": PropSpec(PropKind.TEXT, required=True,
                           choices=("A4", "A3", "A2", "A1", "A0")),
        "landscape": PropSpec(PropKind.BOOLEAN, default=False),
        "multiplicity": PropSpec(PropKind.INTEGER, default=1),
        "comment": PropSpec(PropKind.TEXT, default=""),
    },
    ModuleType.POSDES: {
        "leader_from": PropSpec(PropKind.POINT, required=True),
        "shelf_at": PropSpec(PropKind.POINT, required=True),
        "position_text": PropSpec(PropKind.TEXT, required=True),
        "object_kind": PropSpec(PropKind.TEXT, default=""),
        "spec_props": PropSpec(PropKind.RECORD, default=None),
        "comment": PropSpec(PropKind.TEXT, default=""),
    },
    ModuleType.LIGHTNING: {
        "rods": PropSpec(PropKind.RECORD_LIST, required=True),
        "section_heights": PropSpec(PropKind.RECORD_LIST, required=True),
        "zone_class": PropSpec(PropKind.TEXT, required=True, choices=("A", "B")),
        "scale_mm_per_m": PropSpec(PropKind.REAL, required=True),
        "plan_origin": PropSpec(PropKind.POINT, default=Point(0.0, 0.0)),
        "comment": PropSpec(PropKind.TEXT, default=""),
    },
    ModuleType.SIGNATURE: {
        "person": PropSpec(PropKind.TEXT, required=True),
        "position": PropSpec(PropKind.TEXT, required=True),
        "password": PropSpec(PropKind.TEXT, default=""),
        "date": PropSpec(PropKind.TEXT, required=True),
        "time": PropSpec(PropKind.TEXT, required=True),
        "digest": PropSpec(PropKind.TEXT, default=""),
        "mac": PropSpec(PropKind.TEXT, default=""),
    },
}


def schema_for(mtype: ModuleType) -> dict[str, PropSpec]:
    """Full ordered schema for a module type: placement keys first."""
    return {**PLACEMENT_SCHEMA, **_SCHEMAS[ModuleType(mtype)]}


def russian_property_names() -> dict[str, str]:
    """Fixed mapping from canonical ASCII property keys to Russian names."""
    data = resources.files("modraft.data").joinpath("property_names_ru.json")
    return json.loads(data.read_text("utf-8"))


def _normalize_json(key: str, value: object) -> object:
    """Deep-normalise free-form record content to plain JSON values."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            raise SchemaViolation(key, "numbers must be finite")
        return value
    if isinstance(value, Point):
        return [value.x, value.y]
    if isinstance(value, geometry.Segment | geometry.Polyline | geometry.Arc
                  | geometry.Circle | geometry.Text):
        return element_to_json(value)
    if isinstance(value, Mapping):
        out = {}
        for k, v in value.items():
            if not isinstance(k, str):
                raise SchemaViolation(key, "record keys must be strings")
            out[k] = _normalize_json(key, v)
        return out
    if isinstance(value, (list, tuple)):
        return [_normalize_json(key, v) for v in value]
    raise SchemaViolation(key, f"value {value!r} is not serialisable")


def _as_axis(key: str, value: object) -> Axis:
    if isinstance(value, Axis):
        return value
    if isinstance(value, Mapping):
        try:
            return Axis(geometry._as_point(value["origin"]),
                        float(value.get("angle_deg", 0.0)))
        except (KeyError, ValueError) as exc:
            raise SchemaViolation(key, f"bad axis: {exc}") from exc
    if isinstance(value, (tuple, list)) and len(value) == 2:
        try:
            return Axis(geometry._as_point(value[0]), float(value[1]))
        except (TypeError, ValueError) as exc:
            raise SchemaViolation(key, f"bad axis: {exc}") from exc
    raise SchemaViolation(key, f"expected an axis, got {value!r}")


def _normalize_value(key: str, spec: PropSpec, value: object) -> object:
    kind = spec.kind
    if kind is PropKind.TEXT:
        if not isinstance(value, str):
            raise SchemaViolation(key, f"expected text, got {type(value).__name__}")
        if spec.choices and value not in spec.choices:
            raise SchemaViolation(key, f"value {value!r} not one of {spec.choices}")
        return value
    if kind is PropKind.REAL:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise SchemaViolation(key, f"expected a real number, got {type(value).__name__}")
        v = float(value)
        if not math.isfinite(v):
            raise SchemaViolation(key, "value must be finite")
        return v
    if kind is PropKind.INTEGER:
        if isinstance(value, bool) or not isinstance(value, int):
            raise SchemaViolation(key, f"expected an integer, got {type(value).__name__}")
        return value
    if kind is PropKind.BOOLEAN:
        if not isinstance(value, bool):
            raise SchemaViolation(key, f"expected a boolean, got {type(value).__name__}")
        return value
    if kind is PropKind.POINT:
        try:
            return geometry._as_point(value)
        except ValueError as exc:
            raise SchemaViolation(key, str(exc)) from exc
    if kind is PropKind.POINT_LIST:
        if isinstance(value, (Point, str)) or not hasattr(value, "__iter__"):
            raise SchemaViolation(key, "expected a list of points")
        try:
            return tuple(geometry._as_point(p) for p in value)
        except ValueError as exc:
            raise SchemaViolation(key, str(exc)) from exc
    if kind is PropKind.AXIS_LIST:
        if isinstance(value, (Axis, str)) or not hasattr(value, "__iter__"):
            raise SchemaViolation(key, "expected a list of axes")
        return tuple(_as_axis(key, a) for a in value)
    if kind is PropKind.RECORD:
        if value is None:
            return {}
        if not isinstance(value, Mapping):
            raise SchemaViolation(key, f"expected a record, got {type(value).__name__}")
        return _normalize_json(key, value)
    if kind is PropKind.RECORD_LIST:
        if isinstance(value, (str, Mapping)) or not hasattr(value, "__iter__"):
            raise SchemaViolation(key, "expected a list of records")
        out = []
        for item in value:
            norm = _normalize_json(key, item)
            if not isinstance(norm, dict):
                raise SchemaViolation(key, "list items must be records")
            out.append(norm)
        return tuple(out)
    raise SchemaViolation(key, f"unhandled kind {kind}")


def _default_for(spec: PropSpec) -> object:
    if spec.kind is PropKind.RECORD:
        return dict(spec.default) if spec.default else {}
    return spec.default


def validate_props(mtype: ModuleType, props: Mapping[str, object]) -> dict[str, object]:
    """Validate ``props`` against the type's schema.

    Returns the normalised property set with every default filled in.
    Unknown keys, kind mismatches and missing required values all raise
    :class:`SchemaViolation`.
    """
    schema = schema_for(mtype)
    for key in props:
        if key not in schema:
            raise SchemaViolation(key, f"unknown property for type {ModuleType(mtype).value!r}")
    out: dict[str, object] = {}
    for key, spec in schema.items():
        if key in props:
            out[key] = _normalize_value(key, spec, props[key])
        elif spec.required:
            raise SchemaViolation(key, "required property missing")
        else:
            out[key] = _default_for(spec)
    out["angle_deg"] = norm_deg(out["angle_deg"])
    if ModuleType(mtype) is ModuleType.SIGNATURE:
        out["password"] = ""  # consumed at signing time, never stored
    return out


def _value_to_json(spec: PropSpec, value: object) -> dict:
    kind = spec.kind
    if kind in (PropKind.TEXT, PropKind.INTEGER, PropKind.BOOLEAN):
        return {"kind": kind.value, "value": value}
    if kind is PropKind.REAL:
        return {"kind": kind.value, "value": float(value)}
    if kind is PropKind.POINT:
        return {"kind": kind.value, "value": [value.x, value.y]}
    if kind is PropKind.POINT_LIST:
        return {"kind": kind.value, "value": [[p.x, p.y] for p in value]}
    if kind is PropKind.AXIS_LIST:
        return {"kind": kind.value,
                "value": [{"angle_deg": a.angle_deg, "origin": [a.origin.x, a.origin.y]}
                          for a in value]}
    if kind is PropKind.RECORD:
        return {"kind": kind.value, "value": value}
    if kind is PropKind.RECORD_LIST:
        return {"kind": kind.value, "value": list(value)}
    raise SchemaViolation("?", f"unhandled kind {kind}")


def props_to_json(mtype: ModuleType, props: Mapping[str, object]) -> dict:
    """Kind-tagged JSON form of a normalised property set."""
    schema = schema_for(mtype)
    return {key: _value_to_json(schema[key], value) for key, value in props.items()}


def _value_from_json(key: str, doc: object) -> object:
    if not isinstance(doc, Mapping) or "kind" not in doc or "value" not in doc:
        raise SchemaViolation(key, "serialised value must carry 'kind' and 'value'")
    kind = PropKind(doc["kind"])
    value = doc["value"]
    if kind is PropKind.POINT:
        return geometry._as_point(value)
    if kind is PropKind.POINT_LIST:
        return tuple(geometry._as_point(p) for p in value)
    if kind is PropKind.AXIS_LIST:
        return tuple(_as_axis(key, a) for a in value)
    if kind is PropKind.RECORD_LIST:
        return tuple(value)
    return value


def props_from_json(doc: Mapping[str, object]) -> dict[str, object]:
    """Parse a kind-tagged property set back to runtime values."""
    if not isinstance(doc, Mapping):
        raise SchemaViolation("?", "property set must be an object")
    return {key: _value_from_json(key, value) for key, value in doc.items()}
