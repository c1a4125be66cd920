"""
RC-graphs of a small permutation
================================

Enumerate the RC-graphs of 1432, look at their labels, and follow the
simple moves from the bottom graph up to the top graph.
"""

from pipedream import bottom, top, enumerate_all, count_pattern, label
from pipedream.rcgraph import applicable_moves, apply_move
from pipedream.render import to_ascii

w = "1432"

# every RC-graph, reached from B_w by ladder moves
graphs = enumerate_all(w)
print(f"{w} has {len(graphs)} RC-graphs")
for D in graphs:
    print(to_ascii(D))
    print("label", label(D))
    print()

# simple moves keep the label, so the chain from B_w stays in one label class
D = bottom(w)
chain = [D]
while True:
    moves = [m for m in applicable_moves(D) if m.simple]
    if not moves:
        break
    D = apply_move(D, moves[0])
    chain.append(D)
print("chain length", len(chain), "= 1 + p_132 =", 1 + count_pattern("132", w))
print("ends at the top graph:", chain[-1] == top(w))

# the one graph outside the chain needs a move of order 1
outside = [G for G in graphs if G.label != bottom(w).label]
print("graphs with a new label:", [G.sorted_cells() for G in outside])
