"""
Signing a drawing and verifying what changed
============================================

"""

# A drawing can carry electronic signatures.  Each signature stores the
# content digest at signing time plus an HMAC keyed by the signer's
# password, and draws a small stamp on the sheet.  Verification checks
# two independent things:
#
#   integrity     — has the content changed since signing?
#   authenticity  — does the stored MAC match the claimed signer?
from modraft import (
    Drawing,
    ModuleType,
    Point,
    Rect,
    compute_digest,
    move_module,
    sign_drawing,
    verify_signatures,
)

d = Drawing.new(Rect(Point(0.0, 0.0), Point(400.0, 300.0)))
d.add_module(ModuleType.VALVE, {"origin": (100.0, 100.0), "name": "Вентиль"})

print("digest before signing:", compute_digest(d)[:16], "...")

sign_drawing(d, "Иванов И.И.", "инженер", "2024-05-01", "14:05", password="s3cret")

# Fresh file: both checks pass.
(status,) = verify_signatures(d, {"Иванов И.И.": "s3cret"})
print("after signing         :", status.integrity, "/", status.authenticity)

# Without the password the MAC cannot be recomputed — the integrity
# verdict still works, the authenticity verdict is simply unchecked.
(status,) = verify_signatures(d)
print("no password           :", status.integrity, "/", status.authenticity)

# A wrong password flips authenticity but not integrity.
(status,) = verify_signatures(d, {"Иванов И.И.": "guess"})
print("wrong password        :", status.integrity, "/", status.authenticity)

# Nudge the valve by a hundredth of a millimetre: integrity breaks,
# while the MAC (computed over the *stored* digest) still matches.
valve = d.module(1)
d.replace_module(move_module(valve, 0.01, 0.0))
(status,) = verify_signatures(d, {"Иванов И.И.": "s3cret"})
print("after a 0.01 mm nudge :", status.integrity, "/", status.authenticity)

# Moving it back restores the exact bytes, so integrity recovers —
# the digest is content-addressed, not history-addressed.
d.replace_module(move_module(d.module(1), -0.01, 0.0))
(status,) = verify_signatures(d, {"Иванов И.И.": "s3cret"})
print("after moving it back  :", status.integrity, "/", status.authenticity)

# A second signature (the checker) does not disturb the first: the
# digest basis excludes signature modules.
sign_drawing(d, "Петров П.П.", "нач. отдела", "2024-05-02", "09:30", password="0000")
for s in verify_signatures(d, {"Иванов И.И.": "s3cret", "Петров П.П.": "0000"}):
    print(f"signature of {s.person:12s}:", s.integrity, "/", s.authenticity)
