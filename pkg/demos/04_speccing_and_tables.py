"""
Building a specification: aggregation, duplicates, tables, catalogs
===================================================================

"""

# The speccing pass walks drawings, pulls the bill-of-materials fields
# out of every module that carries them, merges identical items, and
# sums quantities.  Sources can be Drawing objects, file paths, or
# (label, drawing) pairs — mix freely.
import json

from modraft import (
    Drawing,
    ModuleType,
    Point,
    Rect,
    apply_catalog_entry,
    collect_spec_rows,
    create_module,
    fill_table_module,
    find_duplicate_positions,
    load_catalog,
)

scheme = Drawing.new(Rect(Point(0.0, 0.0), Point(800.0, 600.0)))

valve = {"designation": "15кч18п", "name": "Вентиль", "mass": 1.5}
scheme.add_module(ModuleType.VALVE, {**valve, "origin": (100.0, 100.0)})
scheme.add_module(ModuleType.VALVE, {**valve, "origin": (200.0, 100.0)})
scheme.add_module(
    ModuleType.INSTRUMENT,
    {
        "function_code": "PI",
        "pos_designation": "1а",
        "name": "Манометр",
        "type_mark": "МП-100",
        "origin": (300.0, 100.0),
    },
)

rows, errors = collect_spec_rows([("scheme", scheme)])
print("rows:", len(rows), "| load errors:", len(errors))
for r in rows:
    print(f"  {r.designation or r.type_mark:10s} {r.name:10s} qty={r.qty}")

# Position designations must be unique across a project.  The checker
# reports every clash with the modules (and files) involved.
other = Drawing.new(Rect(Point(0.0, 0.0), Point(800.0, 600.0)))
other.add_module(
    ModuleType.INSTRUMENT,
    {"function_code": "TE", "pos_designation": "1а", "origin": (50.0, 50.0)},
)
groups, _ = find_duplicate_positions([("scheme", scheme), ("other", other)])
for g in groups:
    uses = ", ".join(f"{label}#{mid}" for label, mid in g.occurrences)
    print(f"duplicate position {g.position!r}: {uses}")

# Aggregated rows can be poured into a drawn table.  The column map
# says which spec field lands in which column.
table = scheme.add_module(
    ModuleType.TABLE,
    {
        "origin": (500.0, 500.0),
        "columns": [
            {"header": "Обозначение", "width_mm": 40.0},
            {"header": "Наименование", "width_mm": 60.0},
            {"header": "Кол.", "width_mm": 15.0},
        ],
        "row_height_mm": 8.0,
        "header_height_mm": 15.0,
        "rows": [],
    },
)
filled = fill_table_module(
    scheme, table.id, rows, {"designation": 0, "name": 1, "qty": 2}
)
print("table now holds", len(filled.props["rows"]), "rows")

# Catalogs carry purchasing data (type marks, codes, prices) keyed by
# entry id; applying an entry overwrites the module's matching fields.
catalog = load_catalog(
    json.dumps(
        {
            "entries": {
                "V-100": {
                    "name": "Вентиль 15кч18п",
                    "type_mark": "15кч18п",
                    "manufacturer_code": "АРМ-01",
                    "item_code": "100500",
                    "unit": "шт",
                    "unit_code": "796",
                    "price": 250.0,
                }
            }
        }
    )
)
inst = create_module(
    ModuleType.INSTRUMENT, {"function_code": "FE", "pos_designation": "2б"}
)
inst = apply_catalog_entry(inst, catalog, "V-100")
print("instrument price after catalog:", inst.props["price"])
