"""
Witness graphs for one box
==========================

For a Rothe-diagram box with dots A above-left and C below-right, build the
#A * #C RC-graphs that carry a new label, and check that each one tells us
which box it came from.
"""

from pipedream import bottom, label
from pipedream.render import to_ascii
from pipedream.witness import build_context, build_staged, build_witnesses, recover_box

w = "3,9,2,10,1,8,5,7,4,6"
box = (4, 4)

ctx = build_context(w, box)
print("A =", ctx.A, " C =", ctx.C, " I =", ctx.I, " J =", ctx.J)

D0, Dij = build_staged(w, ctx)
print("bottom graph")
print(to_ascii(bottom(w)))
print("after clearing the rows above the box")
print(to_ascii(Dij))

for key, D in sorted(build_witnesses(w, ctx).items()):
    print()
    print("witness", key, "label", label(D), "recovered box", recover_box(w, D))
    print(to_ascii(D))
