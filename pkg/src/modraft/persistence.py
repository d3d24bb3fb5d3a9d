"""Drawing files, prototype libraries and canonical serialisation.

All files are UTF-8 JSON in canonical form (sorted keys, no insignificant
whitespace, shortest round-tripping reals) with a top-level format_version.
Conventional extensions: ``.draw.json`` for drawings, ``.proto.json`` for
prototype libraries, ``.cat.json`` for catalogs.

A drawing stores each module's properties AND generated geometry; loading
regenerates every module from its properties and rejects the file with
:class:`IntegrityMismatch` when the stored geometry disagrees. Prototype
libraries store (name, type, properties) only — no geometry records — with
placement reset to identity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Union

from .canon import canonical_encode
from .core import Module, create_module, geometry_bytes, set_properties
from .errors import FileFormatError, IntegrityMismatch, KernelError
from .geometry import (Element, Point, Rect, ZoneGrid, element_from_json,
                       element_to_json)
from .properties import ModuleType, props_from_json, props_to_json, validate_props

__all__ = [
    "FORMAT_VERSION", "Drawing", "DrawingItem",
    "canonical_bytes", "save_drawing", "load_drawing",
    "save_drawing_file", "load_drawing_file",
    "save_prototypes", "load_prototypes",
    "DEFAULT_GRID_NX", "DEFAULT_GRID_NY",
]

FORMAT_VERSION = 1

DEFAULT_GRID_NX = 16
DEFAULT_GRID_NY = 16

DrawingItem = Union[Module, Element]


def _default_grid(extent: Rect) -> ZoneGrid:
    return ZoneGrid(extent.min,
                    max(extent.width, 1e-6) / DEFAULT_GRID_NX,
                    max(extent.height, 1e-6) / DEFAULT_GRID_NY,
                    DEFAULT_GRID_NX, DEFAULT_GRID_NY)


@dataclass
class Drawing:
    """Ordered container of modules and free elements over a fixed extent.

    Single-writer: one mutator at a time; readers see a consistent snapshot
    between mutations. Item order is drawing (z) order.
    """

    extent: Rect
    zone_grid: ZoneGrid
    next_id: int = 1
    items: list = field(default_factory=list)

    @classmethod
    def new(cls, extent: Rect, grid: "ZoneGrid | None" = None) -> "Drawing":
        return cls(extent, grid if grid is not None else _default_grid(extent))

    def modules(self) -> list[Module]:
        return [item for item in self.items if isinstance(item, Module)]

    def free_elements(self) -> list[Element]:
        return [item for item in self.items if not isinstance(item, Module)]

    def module(self, module_id: int) -> Module:
        for item in self.items:
            if isinstance(item, Module) and item.id == module_id:
                return item
        raise KernelError(f"no module with id {module_id}")

    def add_module(self, mtype: ModuleType, props: dict) -> Module:
        m = create_module(mtype, props, module_id=self.next_id, grid=self.zone_grid)
        self.next_id += 1
        self.items.append(m)
        return m

    def add_element(self, element: Element) -> None:
        self.items.append(element)

    def replace_module(self, replacement: Module) -> Module:
        """Swap in a module with the same id, recomputing its zone mask."""
        for i, item in enumerate(self.items):
            if isinstance(item, Module) and item.id == replacement.id:
                if replacement.zone_mask is None or \
                        replacement.zone_mask.length != self.zone_grid.cell_count:
                    replacement = create_module(replacement.type, replacement.props,
                                                module_id=replacement.id,
                                                grid=self.zone_grid)
                self.items[i] = replacement
                return replacement
        raise KernelError(f"no module with id {replacement.id}")

    def set_module_properties(self, module_id: int, updates: dict) -> Module:
        m = set_properties(self.module(module_id), updates, grid=self.zone_grid)
        return self.replace_module(m)

    def remove_module(self, module_id: int) -> None:
        self.items.remove(self.module(module_id))

    def remove_free_element(self, index: int) -> None:
        free = self.free_elements()
        self.items.remove(free[index])


def _grid_json(grid: ZoneGrid) -> dict:
    return {"cell_h": grid.cell_h, "cell_w": grid.cell_w, "nx": grid.nx,
            "ny": grid.ny, "origin": [grid.origin.x, grid.origin.y]}


def _rect_json(rect: Rect) -> dict:
    return {"max": [rect.max.x, rect.max.y], "min": [rect.min.x, rect.min.y]}


def _drawing_jsonable(d: Drawing, exclude_signatures: bool) -> dict:
    items = []
    for item in d.items:
        if isinstance(item, Module):
            if exclude_signatures and item.type is ModuleType.SIGNATURE:
                continue
            items.append({
                "geometry": [element_to_json(e) for e in item.geometry],
                "id": item.id,
                "kind": "module",
                "props": props_to_json(item.type, item.props),
                "type": item.type.value,
            })
        else:
            items.append({"element": element_to_json(item), "kind": "element"})
    doc = {
        "extent": _rect_json(d.extent),
        "format_version": FORMAT_VERSION,
        "items": items,
        "zone_grid": _grid_json(d.zone_grid),
    }
    if not exclude_signatures:
        doc["next_id"] = d.next_id
    return doc


def canonical_bytes(d: Drawing, exclude_signatures: bool = False) -> bytes:
    """Canonical byte form of a drawing; the basis for files and digests.

    With exclude_signatures the view drops every signature module and the
    id counter, so signing — which adds a module and allocates an id —
    never changes the bytes it signed: a drawing supports any number of
    signatures without later ones invalidating earlier ones.
    """
    return canonical_encode(_drawing_jsonable(d, exclude_signatures))


def save_drawing(d: Drawing) -> bytes:
    """Serialise a drawing; the file content IS its canonical form."""
    return canonical_bytes(d)


def _parse_json(data: "bytes | str") -> object:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(
            f"not valid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc


def _parse_point(doc: object, what: str) -> Point:
    if not (isinstance(doc, list) and len(doc) == 2):
        raise FileFormatError(f"bad {what}: expected [x, y]")
    return Point(doc[0], doc[1])


def _check_version(doc: dict) -> None:
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise FileFormatError(f"unsupported format_version {version!r}")


def load_drawing(data: "bytes | str") -> Drawing:
    """Parse and verify a drawing file.

    Every module is regenerated from its stored properties; stored geometry
    that disagrees raises :class:`IntegrityMismatch`.
    """
    doc = _parse_json(data)
    if not isinstance(doc, dict):
        raise FileFormatError("drawing file must contain a JSON object")
    _check_version(doc)
    try:
        extent = Rect(_parse_point(doc["extent"]["min"], "extent.min"),
                      _parse_point(doc["extent"]["max"], "extent.max"))
        grid_doc = doc["zone_grid"]
        grid = ZoneGrid(_parse_point(grid_doc["origin"], "zone_grid.origin"),
                        grid_doc["cell_w"], grid_doc["cell_h"],
                        grid_doc["nx"], grid_doc["ny"])
        next_id = doc["next_id"]
        items_doc = doc["items"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FileFormatError(f"bad drawing structure: {exc}") from exc
    if not (isinstance(next_id, int) and next_id >= 1):
        raise FileFormatError("next_id must be a positive integer")
    if not isinstance(items_doc, list):
        raise FileFormatError("items must be a list")

    d = Drawing(extent, grid, next_id)
    seen_ids: set[int] = set()
    for item_doc in items_doc:
        if not isinstance(item_doc, dict):
            raise FileFormatError("items must be objects")
        kind = item_doc.get("kind")
        if kind == "element":
            try:
                d.items.append(element_from_json(item_doc["element"]))
            except (KeyError, ValueError) as exc:
                raise FileFormatError(f"bad free element: {exc}") from exc
        elif kind == "module":
            try:
                module_id = item_doc["id"]
                mtype = ModuleType(item_doc["type"])
                props = props_from_json(item_doc["props"])
                stored = tuple(element_from_json(e) for e in item_doc["geometry"])
            except (KeyError, TypeError, ValueError) as exc:
                raise FileFormatError(f"bad module record: {exc}") from exc
            if not (isinstance(module_id, int) and 1 <= module_id < next_id):
                raise FileFormatError(f"module id {module_id!r} out of range")
            if module_id in seen_ids:
                raise FileFormatError(f"duplicate module id {module_id}")
            seen_ids.add(module_id)
            m = create_module(mtype, props, module_id=module_id, grid=grid)
            if geometry_bytes(stored) != geometry_bytes(m.geometry):
                raise IntegrityMismatch(
                    f"module {module_id} geometry does not match its properties")
            d.items.append(m)
        else:
            raise FileFormatError(f"unknown item kind {kind!r}")
    return d


def save_drawing_file(d: Drawing, path: "str | Path") -> None:
    Path(path).write_bytes(save_drawing(d))


def load_drawing_file(path: "str | Path") -> Drawing:
    return load_drawing(Path(path).read_bytes())


_PLACEMENT_RESET = {"layer": 0, "origin": Point(0.0, 0.0),
                    "angle_deg": 0.0, "mirrored": False}


def save_prototypes(modules: Iterable[Module], names: Iterable[str]) -> bytes:
    """Serialise modules as a prototype library: names, types and properties
    only (placement reset to identity); geometry is never written."""
    modules = list(modules)
    names = list(names)
    if len(modules) != len(names):
        raise KernelError("one name is required per prototype")
    if len(set(names)) != len(names):
        raise KernelError("prototype names must be unique")
    entries = []
    for m, name in zip(modules, names):
        if not name:
            raise KernelError("prototype names must not be empty")
        props = validate_props(m.type, {**m.props, **_PLACEMENT_RESET})
        entries.append({"name": name, "props": props_to_json(m.type, props),
                        "type": m.type.value})
    return canonical_encode({"entries": entries, "format_version": FORMAT_VERSION})


def load_prototypes(
    data: "bytes | str",
) -> tuple[list[tuple[str, Module]], list[tuple[str, str]]]:
    """Regenerate prototype modules from a library file.

    Returns ((name, module) pairs, errors); a bad entry is reported in
    ``errors`` as (entry name, message) and the remaining entries still
    load.
    """
    doc = _parse_json(data)
    if not isinstance(doc, dict):
        raise FileFormatError("prototype file must contain a JSON object")
    _check_version(doc)
    entries = doc.get("entries")
    if not isinstance(entries, list):
        raise FileFormatError("prototype file needs an 'entries' list")
    loaded: list[tuple[str, Module]] = []
    errors: list[tuple[str, str]] = []
    for i, entry in enumerate(entries):
        name = f"entry {i}"
        try:
            if not isinstance(entry, dict):
                raise FileFormatError("prototype entries must be objects")
            name = str(entry.get("name", name))
            mtype = ModuleType(entry["type"])
            props = props_from_json(entry["props"])
            loaded.append((name, create_module(mtype, props,
                                               module_id=len(loaded) + 1)))
        except (KernelError, KeyError, TypeError, ValueError) as exc:
            errors.append((name, str(exc)))
    return loaded, errors
