"""
Prototype libraries and working-module expansion
================================================

"""

# A prototype is a module stripped to its properties: no geometry, no
# placement.  Because generation is deterministic, properties are a
# complete description — loading a prototype regenerates exactly the
# bytes the original had.
from modraft import (
    ModuleType,
    create_module,
    geometry_bytes,
    load_prototypes,
    save_prototypes,
)

valve = create_module(
    ModuleType.VALVE,
    {"origin": (120.0, 80.0), "designation": "15кч18п", "name": "Вентиль"},
)
blob = save_prototypes([valve], ["вентиль-15кч18п"])
print("prototype file has geometry records:", b'"geometry"' in blob)

loaded, errors = load_prototypes(blob)
(name, proto), = loaded
print("loaded prototype:", name, "->", proto.type.value)

# Placement was reset to the identity; everything else regenerated.
print("prototype origin:", proto.props["origin"])
identity = create_module(
    ModuleType.VALVE, {**valve.props, "origin": (0.0, 0.0)}
)
print(
    "geometry identical to a fresh identity-placed valve:",
    geometry_bytes(proto.geometry) == geometry_bytes(identity.geometry),
)

# Some modules can spawn working modules — derived annotations that are
# ordinary modules in their own right.  A lightning plan, for example,
# hands out one dimension label per requested section circle.
from modraft import spawn_working_modules

plan = create_module(
    ModuleType.LIGHTNING,
    {
        "rods": [{"x": 0.0, "y": 0.0, "h": 12.0}],
        "section_heights": [{"height": 4.0}, {"height": 7.0}],
        "zone_class": "B",
        "scale_mm_per_m": 2.0,
    },
)
for w in spawn_working_modules(plan, "radius_dimensions"):
    (label,) = w.geometry
    print(f"working module {w.list_name}[{w.index}] ->", label.content)
