"""Typed parametric drawing modules.

A module stores a parametric representation (its properties) and the
geometry derived from it. The properties are primary: any property change
regenerates the geometry, and edits to placed geometry are expressed as
rewrites of the reserved placement properties (origin, angle_deg, mirrored)
followed by regeneration. All of a module's elements share the module's
layer.
"""

from __future__ import annotations

from dataclasses import dataclass

from .canon import canonical_encode
from .errors import GenerationError
from .geometry import (Element, Point, Rect, Transform, ZoneGrid, ZoneMask,
                       apply_transform, compute_zone_mask, element_bbox,
                       element_to_json)
from .properties import Axis, ModuleType, validate_props

__all__ = [
    "Module", "WorkingModule", "create_module", "set_properties",
    "move_module", "rotate_module", "mirror_module", "align_by_attach",
    "spawn_working_modules", "placement_transform", "geometry_bytes",
]


@dataclass(frozen=True)
class Module:
    """A placed parametric module and the geometry its properties generate."""

    id: int
    type: ModuleType
    props: dict
    geometry: tuple[Element, ...]
    layer: int
    bbox: Rect
    zone_mask: "ZoneMask | None" = None


@dataclass(frozen=True)
class WorkingModule:
    """Transient view of one entry of a host module's internal list.

    Working modules exist only in memory; they are never persisted.
    """

    host_id: int
    list_name: str
    index: int
    geometry: tuple[Element, ...]


_SYMMETRY_AXIS_ANGLE = {"mirror_x": 0.0, "mirror_y": 90.0}
_ORIGIN = Point(0.0, 0.0)


def _placement_part(props: dict) -> Transform:
    """Placement transform excluding symbol-level scale and symmetry."""
    t = Transform.rotation(props["angle_deg"])
    if props["mirrored"]:
        t = t.compose(Transform.mirror(_ORIGIN, 90.0))
    return Transform.translation(props["origin"].x, props["origin"].y).compose(t)


def placement_transform(mtype: ModuleType, props: dict) -> Transform:
    """Local-to-paper transform for a module's normalised properties."""
    t = _placement_part(props)
    if ModuleType(mtype) is ModuleType.USER:
        code = props["symmetry"]
        inner = Transform.identity()
        if code == "both":
            inner = Transform.rotation(180.0)
        elif code in _SYMMETRY_AXIS_ANGLE:
            inner = Transform.mirror(_ORIGIN, _SYMMETRY_AXIS_ANGLE[code])
        scale = props["scale"]
        if scale <= 0.0:
            raise GenerationError("user module scale must be positive")
        if scale != 1.0:
            inner = inner.compose(Transform.scaling(scale))
        if not inner.is_identity():
            t = t.compose(inner)
    return t


def create_module(mtype: ModuleType, props: dict, *, module_id: int = 1,
                  grid: "ZoneGrid | None" = None) -> Module:
    """Validate properties, generate geometry, place it, derive extents.

    Deterministic: the same type and properties always yield byte-identical
    geometry.
    """
    from .generators import generate_local

    mtype = ModuleType(mtype)
    norm = validate_props(mtype, props)
    placement = placement_transform(mtype, norm)
    local = generate_local(mtype, norm)
    geometry = tuple(apply_transform(e, placement) for e in local)
    bbox = element_bbox(geometry[0])
    for e in geometry[1:]:
        bbox = bbox.union(element_bbox(e))
    mask = compute_zone_mask(bbox, grid) if grid is not None else None
    return Module(int(module_id), mtype, norm, geometry, norm["layer"], bbox, mask)


def set_properties(m: Module, updates: dict, *, grid: "ZoneGrid | None" = None) -> Module:
    """Merge property updates and regenerate; equivalent to a fresh create."""
    merged = {**m.props, **updates}
    return create_module(m.type, merged, module_id=m.id, grid=grid)


def _apply_rigid(m: Module, edit: Transform, grid: "ZoneGrid | None") -> Module:
    if edit.is_identity():
        return m
    q = edit.compose(_placement_part(m.props))
    return set_properties(m, {
        "origin": Point(q.tx, q.ty),
        "angle_deg": q.rotation_deg,
        "mirrored": q.mirrored,
    }, grid=grid)


def move_module(m: Module, dx: float, dy: float, *,
                grid: "ZoneGrid | None" = None) -> Module:
    """Translate a module by rewriting its placement origin."""
    if dx == 0.0 and dy == 0.0:
        return m
    origin = m.props["origin"]
    return set_properties(m, {"origin": Point(origin.x + dx, origin.y + dy)}, grid=grid)


def rotate_module(m: Module, angle_deg: float, about: Point, *,
                  grid: "ZoneGrid | None" = None) -> Module:
    """Rotate a module's placement about a paper-space point."""
    return _apply_rigid(m, Transform.rotation(angle_deg, about), grid)


def mirror_module(m: Module, axis_origin: Point, axis_angle_deg: float, *,
                  grid: "ZoneGrid | None" = None) -> Module:
    """Mirror a module's placement across a paper-space axis."""
    return _apply_rigid(m, Transform.mirror(axis_origin, axis_angle_deg), grid)


def align_by_attach(m: Module, own_axis_index: int, target: Axis, *,
                    grid: "ZoneGrid | None" = None) -> Module:
    """Rigidly move the module so one of its attach axes coincides with
    ``target`` (same origin, same direction)."""
    axes = m.props.get("attach")
    if not axes or not 0 <= own_axis_index < len(axes):
        raise ValueError(f"module {m.id} has no attach axis {own_axis_index}")
    placement = placement_transform(m.type, m.props)
    own = axes[own_axis_index]
    world_origin = placement.apply(own.origin)
    world_angle = placement.map_direction_deg(own.angle_deg)
    spin = Transform.rotation(target.angle_deg - world_angle, world_origin)
    shift = Transform.translation(target.origin.x - world_origin.x,
                                  target.origin.y - world_origin.y)
    return _apply_rigid(m, shift.compose(spin), grid)


def spawn_working_modules(m: Module, list_name: str) -> list[WorkingModule]:
    """Working modules over the entries of one of the host's internal lists."""
    from .generators import internal_list_indices

    lists = internal_list_indices(m.type, m.props)
    if list_name not in lists:
        raise ValueError(
            f"module type {m.type.value!r} has no internal list {list_name!r}")
    return [WorkingModule(m.id, list_name, i,
                          tuple(m.geometry[j] for j in indices))
            for i, indices in enumerate(lists[list_name])]


def geometry_bytes(elements: tuple[Element, ...]) -> bytes:
    """Canonical byte form of an element sequence, for exact comparisons."""
    return canonical_encode([element_to_json(e) for e in elements])
