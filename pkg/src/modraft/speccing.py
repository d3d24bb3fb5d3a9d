"""Specification aggregation, duplicate position control and catalogs.

Valve, instrument and position-designation modules carry specifying
properties; :func:`collect_spec_rows` scans any number of drawings (on disk
or in memory) and folds them into specification rows. Rows whose spec
fields are all equal merge into one row with the quantity summed, so the
sum of quantities always equals the number of source modules.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Union

from .core import Module
from .errors import CatalogError, KernelError
from .persistence import Drawing, load_drawing_file
from .properties import ModuleType

__all__ = [
    "SpecRow", "DuplicateGroup", "Catalog", "SPEC_MODULE_TYPES",
    "collect_spec_rows", "find_duplicate_positions", "fill_table_module",
    "load_catalog", "load_catalog_file", "apply_catalog_entry",
    "SPEC_ROW_FIELDS",
]

SPEC_MODULE_TYPES = frozenset(
    {ModuleType.VALVE, ModuleType.INSTRUMENT, ModuleType.POSDES})

# Row fields in specification column order; also the merge key order.
SPEC_ROW_FIELDS = ("position", "designation", "name", "type_mark",
                   "unit", "mass", "price", "note")

CATALOG_FIELDS = ("name", "type_mark", "manufacturer_code", "item_code",
                  "unit", "unit_code", "price")

DrawingSource = Union[str, Path, Drawing, "tuple[str, Drawing]"]


@dataclass(frozen=True)
class SpecRow:
    """One specification row; qty always equals the source count."""

    position: str
    designation: str
    name: str
    type_mark: str
    unit: str
    qty: int
    mass: float
    price: float
    note: str
    sources: tuple = ()  # ((drawing label, module id), ...)

    def merge_key(self) -> tuple:
        return tuple(getattr(self, name) for name in SPEC_ROW_FIELDS)


@dataclass(frozen=True)
class DuplicateGroup:
    """A position text used by two or more modules."""

    position: str
    occurrences: tuple = ()  # ((drawing label, module id), ...)


@dataclass(frozen=True)
class Catalog:
    """Electronic product catalog: unique entry ids mapping to the seven
    catalog fields."""

    entries: Mapping[str, Mapping[str, object]] = field(default_factory=dict)

    def entry(self, entry_id: str) -> Mapping[str, object]:
        try:
            return self.entries[entry_id]
        except KeyError:
            raise CatalogError(f"no catalog entry {entry_id!r}") from None


def _record_text(record: "Mapping | None", key: str) -> str:
    if record is None:
        return ""
    value = record.get(key, "")
    return value if isinstance(value, str) else str(value)


def _record_real(record: "Mapping | None", key: str) -> float:
    if record is None:
        return 0.0
    value = record.get(key, 0.0)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        return 0.0
    return float(value)


def _spec_fields(m: Module) -> "dict | None":
    p = m.props
    if m.type is ModuleType.VALVE:
        return {"position": "", "designation": p["designation"],
                "name": p["name"], "type_mark": "", "unit": "",
                "mass": p["mass"], "price": 0.0, "note": p["note"]}
    if m.type is ModuleType.INSTRUMENT:
        return {"position": p["pos_designation"], "designation": p["designation"],
                "name": p["name"], "type_mark": p["type_mark"], "unit": p["unit"],
                "mass": p["mass"], "price": p["price"], "note": p["note"]}
    if m.type is ModuleType.POSDES:
        rec = p["spec_props"]
        return {"position": p["position_text"],
                "designation": _record_text(rec, "designation"),
                "name": _record_text(rec, "name"),
                "type_mark": _record_text(rec, "type_mark"),
                "unit": _record_text(rec, "unit"),
                "mass": _record_real(rec, "mass"),
                "price": _record_real(rec, "price"),
                "note": _record_text(rec, "note")}
    return None


def _resolve_sources(sources: Iterable[DrawingSource]):
    """Yield (label, drawing-or-None, error-or-None) per source."""
    for src in sources:
        if isinstance(src, Drawing):
            yield "", src, None
        elif isinstance(src, tuple):
            label, d = src
            yield str(label), d, None
        else:
            label = str(src)
            try:
                yield label, load_drawing_file(src), None
            except (OSError, KernelError) as exc:
                yield label, None, str(exc)


def collect_spec_rows(
    sources: Iterable[DrawingSource],
    type_filter: "frozenset | set | None" = None,
) -> "tuple[list[SpecRow], list[tuple[str, str]]]":
    """Aggregate specification rows across drawings.

    Sources may be file paths, in-memory drawings, or (label, drawing)
    pairs. Returns (rows, errors): rows merged on the full field tuple and
    sorted by it ascending (code-point text order); errors as (label,
    message) pairs for sources that failed to load, which never abort the
    scan.
    """
    wanted = SPEC_MODULE_TYPES if type_filter is None else \
        frozenset(ModuleType(t) for t in type_filter)
    merged: dict[tuple, list] = {}
    errors: list[tuple[str, str]] = []
    for label, d, err in _resolve_sources(sources):
        if err is not None:
            errors.append((label, err))
            continue
        for m in d.modules():
            if m.type not in wanted:
                continue
            fields = _spec_fields(m)
            if fields is None:
                continue
            key = tuple(fields[name] for name in SPEC_ROW_FIELDS)
            merged.setdefault(key, []).append((label, m.id))
    rows = []
    for key in sorted(merged):
        sources_for_row = tuple(sorted(merged[key]))
        fields = dict(zip(SPEC_ROW_FIELDS, key))
        rows.append(SpecRow(qty=len(sources_for_row), sources=sources_for_row,
                            **fields))
    return rows, errors


def find_duplicate_positions(
    sources: Iterable[DrawingSource],
) -> "tuple[list[DuplicateGroup], list[tuple[str, str]]]":
    """Report position texts used by two or more modules.

    Position designations come from posdes position_text and instrument
    pos_designation properties; blank texts are not positions and are
    skipped. Returns (groups, errors) with groups sorted by position text.
    """
    occurrences: dict[str, list] = {}
    errors: list[tuple[str, str]] = []
    for label, d, err in _resolve_sources(sources):
        if err is not None:
            errors.append((label, err))
            continue
        for m in d.modules():
            if m.type is ModuleType.POSDES:
                text = m.props["position_text"]
            elif m.type is ModuleType.INSTRUMENT:
                text = m.props["pos_designation"]
            else:
                continue
            if text:
                occurrences.setdefault(text, []).append((label, m.id))
    groups = [DuplicateGroup(text, tuple(sorted(occ)))
              for text, occ in sorted(occurrences.items()) if len(occ) >= 2]
    return groups, errors


def _cell_text(value: object) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "+" if value else ""
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, "g")
    return str(value)


def fill_table_module(d: Drawing, table_id: int, rows: Iterable[SpecRow],
                      column_map: Mapping[str, int]) -> Module:
    """Fill a table module's rows from specification rows.

    column_map maps row field names ("position", "qty", …) to zero-based
    column indices of the table; unmapped columns stay blank. The table
    module is regenerated in place and returned.
    """
    table = d.module(table_id)
    if table.type is not ModuleType.TABLE:
        raise KernelError(f"module {table_id} is not a table")
    n_columns = len(table.props["columns"])
    valid_fields = SPEC_ROW_FIELDS + ("qty",)
    for name, index in column_map.items():
        if name not in valid_fields:
            raise KernelError(f"unknown spec row field {name!r}")
        if not (isinstance(index, int) and 0 <= index < n_columns):
            raise KernelError(
                f"column index {index!r} out of range for {n_columns} columns")
    table_rows = []
    for row in rows:
        cells = [""] * n_columns
        for name, index in column_map.items():
            cells[index] = _cell_text(getattr(row, name))
        table_rows.append({"cells": cells})
    return d.set_module_properties(table_id, {"rows": table_rows})


def load_catalog(data: "bytes | str") -> Catalog:
    """Parse a catalog file: {"entries": {id: {the seven fields}}}."""
    text = data.decode("utf-8") if isinstance(data, bytes) else data

    def reject_duplicates(pairs):
        keys = [k for k, _ in pairs]
        if len(set(keys)) != len(keys):
            dup = next(k for k in keys if keys.count(k) > 1)
            raise CatalogError(f"duplicate key {dup!r} in catalog")
        return dict(pairs)

    try:
        doc = json.loads(text, object_pairs_hook=reject_duplicates)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"not valid JSON: {exc.msg} at line {exc.lineno}") from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("entries"), dict):
        raise CatalogError("catalog must be an object with an 'entries' map")
    entries: dict[str, dict] = {}
    for entry_id, entry in doc["entries"].items():
        if not isinstance(entry, dict):
            raise CatalogError(f"entry {entry_id!r} must be an object")
        if set(entry) != set(CATALOG_FIELDS):
            raise CatalogError(
                f"entry {entry_id!r} must have exactly the fields "
                f"{', '.join(CATALOG_FIELDS)}")
        clean = {}
        for name in CATALOG_FIELDS:
            value = entry[name]
            if name == "price":
                if isinstance(value, bool) or not isinstance(value, (int, float)) \
                        or value < 0:
                    raise CatalogError(f"entry {entry_id!r}: price must be a "
                                       "non-negative number")
                clean[name] = float(value)
            else:
                if not isinstance(value, str):
                    raise CatalogError(f"entry {entry_id!r}: {name} must be text")
                clean[name] = value
        entries[entry_id] = clean
    return Catalog(entries)


def load_catalog_file(path: "str | Path") -> Catalog:
    return load_catalog(Path(path).read_bytes())


def apply_catalog_entry(m: Module, catalog: Catalog, entry_id: str,
                        grid=None) -> Module:
    """Copy a catalog entry's fields onto a module and regenerate it.

    Valve and instrument modules receive the fields on their same-named
    schema keys; posdes modules receive them inside the spec_props record.
    Idempotent: applying the same entry twice changes nothing.
    """
    from .core import set_properties
    from .properties import schema_for

    entry = catalog.entry(entry_id)
    if m.type is ModuleType.POSDES:
        rec = dict(m.props["spec_props"] or {})
        rec.update(entry)
        return set_properties(m, {"spec_props": rec}, grid=grid)
    schema = schema_for(m.type)
    updates = {name: value for name, value in entry.items() if name in schema}
    if not updates:
        raise CatalogError(f"module type {m.type.value} has no catalog fields")
    return set_properties(m, updates, grid=grid)
