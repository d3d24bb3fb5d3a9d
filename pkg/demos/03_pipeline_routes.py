"""
Pipeline routes: welded corners, bent corners, and offsetting
=============================================================

"""

# A pipeline module is a centreline path plus a nominal diameter; the
# generator draws both walls (offset half the diameter to each side)
# and, optionally, a dash-dot centreline.
from modraft import ModuleType, create_module, offset_path

route = [(0.0, 0.0), (100.0, 0.0), (100.0, 80.0), (180.0, 80.0)]

# "welded" corners meet in a sharp miter — the classic shop drawing.
welded = create_module(
    ModuleType.PIPELINE,
    {"path": route, "diameter_mm": 10.0, "corner": "welded"},
)
print("welded pipe elements:", [type(e).__name__ for e in welded.geometry])

# "bent" corners replace each interior vertex with a tangent arc.  The
# two walls get the bend radius minus / plus half the diameter, so the
# walls stay parallel through the turn.
bent = create_module(
    ModuleType.PIPELINE,
    {
        "path": route,
        "diameter_mm": 10.0,
        "corner": "bent",
        "fillet_radius": 20.0,
    },
)
print("bent pipe elements:  ", [type(e).__name__ for e in bent.geometry])

arcs = [e for e in bent.geometry if type(e).__name__ == "Arc"]
print("bend radii:", sorted({a.radius for a in arcs}))

# The wall builder is usable on its own: offset any polyline sideways.
left_wall = offset_path(route, +5.0, corner="bent", fillet_radius=20.0)
right_wall = offset_path(route, -5.0, corner="bent", fillet_radius=20.0)
print("left wall pieces: ", len(left_wall))
print("right wall pieces:", len(right_wall))

# Too tight a bend cannot fit the pipe body; the module refuses instead
# of producing self-intersecting walls.
from modraft import SchemaViolation

try:
    create_module(
        ModuleType.PIPELINE,
        {"path": route, "diameter_mm": 10.0, "corner": "bent", "fillet_radius": 4.0},
    )
except SchemaViolation as err:
    print("rejected:", err)
