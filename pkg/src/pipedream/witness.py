"""
Explicit RC-graphs with a label different from the bottom graph's.

For a box ``(i, j)`` of the Rothe diagram with ``A`` the dots to its upper
left and ``C`` the dots in the rectangle below-right of it, the construction
below produces ``#A * #C`` RC-graphs, each differing from ``B_w`` in the
diagonal of at least one crossing type.  Everything is done by applying
ladder moves to :class:`~pipedream.rcgraph.RCGraph` values, so every step is
checked by the move engine; a failed step raises :class:`WitnessError`.

Stages for a box:

1. ``D0``: from ``B_w``, raise the crossings of each row ``I[k]`` (those at or
   right of column ``j`` in the Rothe diagram, rightmost first) by simple
   moves until they sit in row ``i + k``.
2. ``Dij``: raise each row ``i' < i`` (again only columns ``>= j``) by
   ``#{a < i' : w(a) < j}`` simple moves, which empties the rows just above
   row ``i``.
3. witness ``(a', c')``: order-``r`` moves on the bottom row of the
   rectangle, ``c'`` simple moves on the end of the run in row ``i``, then
   ``a'`` more simple moves of all the raised crossings together.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .perm import Cell, Permutation, PermLike, a_set, c_set, rothe_diagram
from .rcgraph import (LadderMove, MoveError, RCGraph, RCGraphError, apply_move,
                      bottom, diag, simple_component, validate)

__all__ = [
    "WitnessError", "BoxContext", "beta", "check_diag_gap", "build_context",
    "build_staged", "build_witnesses", "recover_box", "witness_boxes",
    "total_witness_count", "witness_report",
]


class WitnessError(RuntimeError):
    """The construction could not be carried out, or a graph is not a witness."""


def beta(w: PermLike) -> dict[Cell, Cell]:
    """Left-justification ``RD(w) -> B_w``, ``(i, j) -> (i, j - #A(i, j))``."""
    w = Permutation.coerce(w)
    return {(i, j): (i, j - len(a_set(w, (i, j)))) for i, j in rothe_diagram(w)}


def check_diag_gap(w: PermLike) -> bool:
    """Boxes strictly south-east of each other land at least two diagonals apart."""
    b = beta(w)
    boxes = sorted(b)
    for p in boxes:
        for q in boxes:
            if p[0] < q[0] and p[1] < q[1] and diag(b[q]) - diag(b[p]) < 2:
                return False
    return True


@dataclass(frozen=True)
class BoxContext:
    box: Cell
    A: tuple[int, ...]
    C: tuple[int, ...]  # ordered by increasing w(c)
    I: tuple[int, ...]
    J: tuple[int, ...]
    l: int  # column of beta(box)

    @property
    def r(self) -> int:
        return len(self.I) - 1

    @property
    def m(self) -> int:
        return len(self.J) - 1

    @property
    def c1(self) -> int:
        return self.C[0]


def build_context(w: PermLike, box: Cell) -> BoxContext:
    w = Permutation.coerce(w)
    rd = rothe_diagram(w)
    if box not in rd:
        raise WitnessError(f"{box} is not in RD({w})")
    i, j = box
    A = a_set(w, box)
    C = c_set(w, box)
    if not C:
        raise WitnessError(f"C{box} is empty for {w}")
    c1 = C[0]
    I = tuple(x for x in range(i, c1 + 1) if (x, j) in rd)
    J = tuple(y for y in range(j, w(c1) + 1) if (i, y) in rd)
    inside = {(x, y) for x, y in rd if i <= x <= c1 and j <= y <= w(c1)}
    expected = {(x, y) for x in I for y in J} - {(c1, w(c1))}
    if inside != expected or I[-1] != c1 or J[-1] != w(c1):
        raise WitnessError(f"rectangle below {box} in RD({w}) is not I x J minus a corner")
    return BoxContext(box, A, C, I, J, j - len(A))


def _raise(D: RCGraph, pos: Cell, times: int) -> tuple[RCGraph, Cell]:
    for _ in range(times):
        try:
            D = apply_move(D, LadderMove(pos, 0))
        except MoveError as exc:
            raise WitnessError(f"simple move at {pos} blocked in {D}") from exc
        pos = (pos[0] - 1, pos[1] + 1)
    return D, pos


def _check_valid(D: RCGraph, w: Permutation) -> None:
    try:
        validate(D.cells, w)
    except RCGraphError as exc:
        raise WitnessError(str(exc)) from exc


def build_staged(w: PermLike, ctx: BoxContext) -> tuple[RCGraph, RCGraph]:
    """``(D0, Dij)`` for the box of ``ctx``; both are reached by simple moves only."""
    w = Permutation.coerce(w)
    rd = rothe_diagram(w)
    b = beta(w)
    i, j = ctx.box
    D = bottom(w)

    def row_cols(row: int) -> list[int]:
        return sorted((y for x, y in rd if x == row and y >= j), reverse=True)

    for k, ik in enumerate(ctx.I):
        for y in row_cols(ik):
            D, _ = _raise(D, b[(ik, y)], ik - i - k)
    D0 = D
    for i2 in range(1, i):
        times = sum(1 for a in range(1, i2) if w(a) < j)
        for y in row_cols(i2):
            D, _ = _raise(D, b[(i2, y)], times)
    Dij = D

    _check_valid(D0, w)
    _check_valid(Dij, w)
    r, m, l = ctx.r, ctx.m, ctx.l
    for x in range(i, i + r + 1):
        for y in range(l, l + m + 1):
            want = (x, y) != (i + r, l + m)
            if ((x, y) in Dij) != want:
                raise WitnessError(f"{(x, y)} {'missing from' if want else 'present in'} Dij")
    # rows just above row i are clear from the rectangle's diagonal onwards
    for x in range(i - len(ctx.A), i):
        for y in range(max(1, i + l - x), Dij.n + 1):
            if (x, y) in Dij:
                raise WitnessError(f"{(x, y)} blocks the cleared region of Dij")
    return D0, Dij


def _run_length(D: RCGraph, row: int, start: int) -> int:
    q = 0
    while (row, start + q) in D:
        q += 1
    return q


def build_witnesses(w: PermLike, ctx: BoxContext,
                    staged: Optional[tuple[RCGraph, RCGraph]] = None
                    ) -> dict[tuple[int, int], RCGraph]:
    """The graphs ``D^(a', c')`` for ``0 <= a' < #A``, ``0 <= c' < #C``."""
    w = Permutation.coerce(w)
    _, Dij = staged if staged is not None else build_staged(w, ctx)
    i, _ = ctx.box
    r, m, l = ctx.r, ctx.m, ctx.l
    q0 = _run_length(Dij, i, l + m + 1)
    if q0 < len(ctx.C) - 1:
        raise WitnessError(f"run after the rectangle has length {q0} < {len(ctx.C) - 1}")
    base_label = bottom(w).label
    out = {}
    for a2 in range(len(ctx.A)):
        for c2 in range(len(ctx.C)):
            D = Dij
            moved = []
            try:
                for y in range(l + m - 1, l - 1, -1):
                    D = apply_move(D, LadderMove((i + r, y), r))
                    moved.append((i - 1, y + 1))
                for y in range(l + m + q0, l + m + q0 - c2, -1):
                    D = apply_move(D, LadderMove((i, y), 0))
                    moved.append((i - 1, y + 1))
            except MoveError as exc:
                raise WitnessError(f"witness {(a2, c2)} of {ctx.box} blocked") from exc
            for _ in range(a2):
                moved.sort(key=lambda c: -c[1])
                nxt = []
                for pos in moved:
                    D, pos = _raise(D, pos, 1)
                    nxt.append(pos)
                moved = nxt
            _check_valid(D, w)
            if D.label == base_label:
                raise WitnessError(f"witness {(a2, c2)} of {ctx.box} has the bottom label")
            out[(a2, c2)] = D
    return out


def recover_box(w: PermLike, D: RCGraph) -> Cell:
    """Rothe-diagram box whose witness family contains ``D``.

    Compare crossing types with ``B_w`` and keep the crossings whose type sits
    on a different diagonal.  The topmost row of those is a consecutive run
    (the crossings raised by the non-simple moves); the first crossing below
    its left end on the same diagonal is ``beta`` of the box.

    Lower rows can also hold changed types: an order-k move exchanges the
    types of the two ladder columns in every rung row.
    """
    w = Permutation.coerce(w)
    B = bottom(w)
    bdiag = {t: diag(c) for c, t in B.types.items()}
    changed = sorted(c for c, t in D.types.items() if diag(c) != bdiag[t])
    if not changed:
        raise WitnessError("no crossing type changed diagonal; not a witness")
    row = changed[0][0]
    cols = [c[1] for c in changed if c[0] == row]
    if cols != list(range(cols[0], cols[0] + len(cols))):
        raise WitnessError(f"changed crossings in row {row} are not consecutive: {cols}")
    i1, j1 = row, cols[0]
    d = i1 + j1
    for x in range(i1 + 1, d):
        if (x, d - x) in D:
            inv = {v: k for k, v in beta(w).items()}
            if (x, d - x) not in inv:
                raise WitnessError(f"{(x, d - x)} is not in B_w")
            return inv[(x, d - x)]
    raise WitnessError("no crossing below the changed run on its diagonal")


def witness_boxes(w: PermLike) -> list[Cell]:
    """Boxes with nonempty A and C, row-major."""
    w = Permutation.coerce(w)
    return sorted(box for box in rothe_diagram(w) if a_set(w, box) and c_set(w, box))


def total_witness_count(w: PermLike) -> int:
    """Size of the union of all witness families (equals ``p_1432(w)``)."""
    w = Permutation.coerce(w)
    union = set()
    for box in witness_boxes(w):
        union.update(build_witnesses(w, build_context(w, box)).values())
    return len(union)


def witness_report(w: PermLike, check_component: bool = True) -> dict:
    """Per-box construction summary with the consistency checks it passed or failed."""
    w = Permutation.coerce(w)
    boxes = []
    seen: dict[RCGraph, Cell] = {}
    collisions = []
    mismatched = []
    for box in sorted(rothe_diagram(w)):
        A, C = a_set(w, box), c_set(w, box)
        entry = {"box": list(box), "A": len(A), "C": len(C), "witnesses": []}
        if A and C:
            for key, D in build_witnesses(w, build_context(w, box)).items():
                rec = recover_box(w, D)
                if rec != box:
                    mismatched.append((box, key))
                if D in seen:
                    collisions.append((seen[D], box))
                seen.setdefault(D, box)
                entry["witnesses"].append({
                    "a": key[0], "c": key[1],
                    "crossings": [list(c) for c in D.sorted_cells()],
                    "recovered": list(rec),
                })
        boxes.append(entry)
    expected = sum(e["A"] * e["C"] for e in boxes)
    report = {
        "w": w.to_json(),
        "boxes": boxes,
        "expected": expected,
        "distinct": len(seen),
        "collisions": [[list(a), list(b)] for a, b in collisions],
        "unrecovered": [[list(b), list(k)] for b, k in mismatched],
    }
    if check_component:
        comp = set(simple_component(bottom(w)))
        report["in_simple_component"] = sum(1 for D in seen if D in comp)
    return report
