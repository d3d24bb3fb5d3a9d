"""
Placement edits and attachment axes
===================================

"""

# Modules are placed by origin / angle / mirror flag.  Editing a
# placement never mutates in place: each edit returns a new Module with
# freshly generated geometry, so geometry and properties can never
# drift apart.
from modraft import (
    Axis,
    ModuleType,
    Point,
    align_by_attach,
    create_module,
    mirror_module,
    move_module,
    rotate_module,
)

valve = create_module(ModuleType.VALVE, {"origin": (0.0, 0.0)})
print("at origin:", valve.bbox)

moved = move_module(valve, 50.0, 20.0)
print("moved:    ", moved.bbox)

turned = rotate_module(moved, 90.0, Point(50.0, 20.0))
print("turned:   ", turned.props["angle_deg"], "degrees")

# Mirror about the vertical line through the valve centre.
flipped = mirror_module(turned, Point(50.0, 20.0), 90.0)
print("mirrored: ", flipped.props["mirrored"])

# Symbols that sit on a line expose attachment axes: a point plus a
# direction, in local coordinates.  A valve has one on each flange so
# it can be dropped onto a pipe run.
print("valve attach axes:", valve.props["attach"])

# align_by_attach solves for origin/angle/mirror so that a chosen local
# axis lands exactly on a target axis.  Here: put the left flange at
# (200, 80), flowing at 45 degrees.
target = Axis(Point(200.0, 80.0), 45.0)
placed = align_by_attach(valve, 0, target)
print("solved placement: origin=%r angle=%r" % (placed.props["origin"], placed.props["angle_deg"]))

# The flange really is on the target point now — mapping the local
# attach origin through the placement transform gives (200, 80) exactly.
from modraft import placement_transform

world_flange = placement_transform(placed.type, placed.props).apply(Point(-4.0, 0.0))
print("left flange in world coordinates:", world_flange)
