"""
Lightning-rod protection zones: the math and the plan view
==========================================================

"""

# A single rod of height h protects a cone-like volume.  Zone class B
# (the common 95 % zone) has apex 0.92·h and ground radius 1.5·h; at an
# intermediate height hx the protected radius shrinks linearly.
from modraft import ZoneClass, apex_height, ground_radius, single_rod_radius

h = 12.0
print("rod height          :", h, "m")
print("zone apex           :", apex_height(h, ZoneClass.B), "m")
print("radius at ground    :", ground_radius(h, ZoneClass.B), "m")
print("radius at hx = 5 m  :", single_rod_radius(h, 5.0, ZoneClass.B), "m")

# Class A is the stricter 99.5 % zone: lower apex, tighter radii.
print("class A at hx = 5 m :", single_rod_radius(h, 5.0, ZoneClass.A), "m")

# Asking above the apex is an error the caller must handle: there is no
# protection there at all.
from modraft import NoProtectionAtHeight

try:
    single_rod_radius(h, 11.5, ZoneClass.B)
except NoProtectionAtHeight as err:
    print("above the apex:", err)

# For a whole installation, LightningParams bundles the rods and the
# object heights being checked, and is_protected answers the point
# query "is (x, y, z) inside any rod's zone?".
from modraft import LightningParams, Point, Rod, is_protected, zone_sections

params = LightningParams(
    rods=(Rod(0.0, 0.0, 12.0), Rod(25.0, 0.0, 10.0)),
    section_heights=(4.0,),
    zone_class=ZoneClass.B,
    scale_mm_per_m=2.0,
    plan_origin=Point(100.0, 100.0),
)
for probe in [(3.0, 0.0, 4.0), (12.5, 0.0, 4.0), (25.0, 8.0, 4.0)]:
    print(f"point {probe} protected:", is_protected(*probe, params))

# zone_sections gives the plan circles at one cut height, in world
# metres; rods whose zone tops out below the cut contribute nothing.
for c in zone_sections(params, 4.0):
    print(f"section circle at ({c.center.x}, {c.center.y}) r={c.radius} m")

# The same parameters drive the drawing module, which adds rod crosses
# and radius labels on top of the circles.
from modraft import ModuleType, create_module

plan = create_module(
    ModuleType.LIGHTNING,
    {
        "rods": [{"x": 0.0, "y": 0.0, "h": 12.0}, {"x": 25.0, "y": 0.0, "h": 10.0}],
        "section_heights": [{"height": 4.0}],
        "zone_class": "B",
        "scale_mm_per_m": 2.0,
        "plan_origin": (100.0, 100.0),
    },
)
kinds = [type(e).__name__ for e in plan.geometry]
print("plan view elements:", {k: kinds.count(k) for k in sorted(set(kinds))})
