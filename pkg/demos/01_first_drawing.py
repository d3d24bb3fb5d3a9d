"""
A first drawing: sheet frame, a valve, and a lossless round trip
================================================================

"""

# A Drawing is a flat container of items (modules and free elements)
# plus a sheet extent.  Everything here is plain Python — no global
# state, no registries.
from modraft import Drawing, ModuleType, Point, Rect, save_drawing, load_drawing

d = Drawing.new(Rect(Point(0.0, 0.0), Point(420.0, 297.0)))

# Add an A3 frame.  The generator draws the border, the inner frame and
# the title block; all we supply are the typed properties.
frame = d.add_module(ModuleType.FRAME, {"format": "A3", "landscape": True})
print(f"frame has {len(frame.geometry)} elements")

# Add a valve symbol at a specific origin.  Every module owns its
# geometry: the generator ran at creation time and the result is stored
# with the module.
valve = d.add_module(
    ModuleType.VALVE,
    {"origin": (120.0, 150.0), "designation": "15кч888р", "name": "Вентиль"},
)
print(f"valve bbox: {valve.bbox}")

# Serialization is canonical: the same drawing always produces the same
# bytes, so equality of files means equality of content.
blob = save_drawing(d)
again = save_drawing(load_drawing(blob))
print("round trip byte-identical:", blob == again)

# The JSON is ordinary UTF-8 text — open it in any editor.
print("file starts with:", blob[:60].decode("utf-8"), "...")
