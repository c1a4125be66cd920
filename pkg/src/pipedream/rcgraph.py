"""
RC-graphs (reduced pipe dreams) and the ladder-move calculus.

An RC-graph of ``w`` is stored as an integer bitmask over the ``n x n`` grid,
bit ``(i-1)*n + (j-1)`` for the crossing in row ``i``, column ``j``.  Equality
and hashing are on ``(owner, bits)``, so deduplication during enumeration is
a set of ints.

Conventions:

* ``diag((i, j)) = i + j - 1`` and the crossing contributes the letter
  ``s_{i+j-1}`` to the reading word;
* the reading word lists rows top to bottom and each row right to left;
* the word ``a_1 ... a_l`` evaluates to ``s_{a_1} ... s_{a_l}``, computed by
  starting from the identity and swapping positions ``a, a+1`` for each letter
  in turn (this is the convention under which every bottom graph validates);
* strand ``k`` enters row ``k`` from the left and leaves through the top of
  column ``w(k)``.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

from .perm import Cell, Permutation, PermLike, inverse, lehmer_code

__all__ = [
    "RCGraph", "LadderMove", "RCGraphError", "MoveError", "BudgetExceeded",
    "DEFAULT_BUDGET", "default_budget", "diag",
    "bottom", "top", "reading_word", "validate", "label", "strand_types",
    "applicable_moves", "apply_move", "inverse_moves", "unapply_move",
    "enumerate_all", "count_rc_graphs", "simple_component", "simple_sink",
    "is_simply_connected",
]

DEFAULT_BUDGET = 10**7


class RCGraphError(ValueError):
    """A crossing set that is not an RC-graph of the claimed permutation."""


class MoveError(ValueError):
    """A ladder move whose local conditions do not hold."""


class BudgetExceeded(RuntimeError):
    """An enumeration grew past its configured size cap."""


def default_budget() -> int:
    env = os.environ.get("PIPEDREAM_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def diag(cell: Cell) -> int:
    return cell[0] + cell[1] - 1


def _bits_of(cells: Iterable[Cell], n: int) -> int:
    bits = 0
    for i, j in cells:
        if i < 1 or j < 1 or i > n or j > n:
            raise RCGraphError(f"cell {(i, j)} outside the {n}x{n} grid")
        bits |= 1 << ((i - 1) * n + j - 1)
    return bits


def _cells_of(bits: int, n: int) -> list[Cell]:
    out = []
    while bits:
        low = bits & -bits
        idx = low.bit_length() - 1
        bits ^= low
        out.append((idx // n + 1, idx % n + 1))
    return out


def _word(cells: Iterable[Cell]) -> tuple[int, ...]:
    order = sorted(cells, key=lambda c: (c[0], -c[1]))
    return tuple(i + j - 1 for i, j in order)


def _evaluate(word: Iterable[int], size: int) -> Optional[list[int]]:
    """Product of the word in S_size, or None when the word is not reduced."""
    cur = list(range(1, size + 1))
    for a in word:
        if a < 1 or a >= size:
            return None
        if cur[a - 1] > cur[a]:
            return None
        cur[a - 1], cur[a] = cur[a], cur[a - 1]
    return cur


@dataclass(frozen=True)
class LadderMove:
    """Relocate the crossing at ``source`` to ``(i - order - 1, j + 1)``."""

    source: Cell
    order: int

    @property
    def target(self) -> Cell:
        i, j = self.source
        return (i - self.order - 1, j + 1)

    @property
    def simple(self) -> bool:
        return self.order == 0

    def __str__(self) -> str:
        return f"{self.source}->{self.target} (order {self.order})"


@dataclass(frozen=True, eq=True)
class RCGraph:
    """An RC-graph of ``owner``; construct with :func:`validate` or :meth:`from_cells`."""

    owner: Permutation
    bits: int

    @classmethod
    def from_cells(cls, cells: Iterable[Cell], w: PermLike) -> "RCGraph":
        return validate(cells, w)

    @classmethod
    def _trusted(cls, owner: Permutation, bits: int) -> "RCGraph":
        # used for states produced by ladder moves, which preserve validity
        return cls(owner, bits)

    @property
    def n(self) -> int:
        return self.owner.n

    @cached_property
    def cells(self) -> frozenset[Cell]:
        return frozenset(_cells_of(self.bits, self.n))

    def sorted_cells(self) -> list[Cell]:
        return _cells_of(self.bits, self.n)

    def __contains__(self, cell: Cell) -> bool:
        i, j = cell
        n = self.n
        if not (1 <= i <= n and 1 <= j <= n):
            return False
        return bool(self.bits >> ((i - 1) * n + j - 1) & 1)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __iter__(self):
        return iter(self.sorted_cells())

    @cached_property
    def word(self) -> tuple[int, ...]:
        return _word(self.cells)

    @cached_property
    def label(self) -> tuple[int, ...]:
        counts = [0] * max(self.n - 1, 0)
        for c in self.cells:
            counts[diag(c) - 1] += 1
        return tuple(counts)

    @cached_property
    def types(self) -> dict[Cell, tuple[int, int]]:
        return _trace_strands(self.bits, self.n)

    def row_counts(self) -> tuple[int, ...]:
        counts = [0] * max(self.n - 1, 0)
        for i, _ in self.cells:
            counts[i - 1] += 1
        return tuple(counts)

    def __repr__(self) -> str:
        return f"RCGraph({str(self.owner)!r}, {self.sorted_cells()})"

    def to_json(self) -> dict:
        return {
            "w": self.owner.to_json(),
            "crossings": [list(c) for c in self.sorted_cells()],
            "label": list(self.label),
        }

    @classmethod
    def from_json(cls, data: dict) -> "RCGraph":
        return validate([tuple(c) for c in data["crossings"]], Permutation(tuple(data["w"])))


def validate(crossings: Iterable[Cell], w: PermLike) -> RCGraph:
    """Check that ``crossings`` is an RC-graph of ``w`` and wrap it."""
    w = Permutation.coerce(w)
    cells = {tuple(c) for c in crossings}
    ell = sum(lehmer_code(w))
    if len(cells) != ell:
        raise RCGraphError(f"{len(cells)} crossings but length({w}) = {ell}")
    n = w.n
    for c in cells:
        if c[0] < 1 or c[1] < 1:
            raise RCGraphError(f"cell {c} is not in the positive quadrant")
    word = _word(cells)
    size = max([n] + [a + 1 for a in word])
    prod = _evaluate(word, size)
    if prod is None:
        raise RCGraphError(f"reading word {word} is not reduced")
    got = Permutation(tuple(prod))
    if got != w:
        raise RCGraphError(f"reading word {word} evaluates to {got}, not {w}")
    return RCGraph(w, _bits_of(cells, n))


def _trace_strands(bits: int, n: int) -> dict[Cell, tuple[int, int]]:
    seen: dict[Cell, list[int]] = {}
    for k in range(1, n + 1):
        r, c, right = k, 1, True
        steps = 0
        while r >= 1:
            steps += 1
            if c > n or steps > 4 * n * n:
                raise RCGraphError(f"strand {k} leaves the grid")
            crossing = bits >> ((r - 1) * n + c - 1) & 1
            if crossing:
                seen.setdefault((r, c), []).append(k)
            else:
                right = not right
            if right:
                c += 1
            else:
                r -= 1
    types = {}
    for cell, strands in seen.items():
        if len(strands) != 2:
            raise RCGraphError(f"crossing {cell} met by strands {strands}")
        types[cell] = (min(strands), max(strands))
    return types


def bottom(w: PermLike) -> RCGraph:
    """Left-justified graph: row ``i`` holds ``code(w)_i`` crossings."""
    w = Permutation.coerce(w)
    cells = [(i, j) for i, ci in enumerate(lehmer_code(w), 1) for j in range(1, ci + 1)]
    return RCGraph(w, _bits_of(cells, w.n))


def top(w: PermLike) -> RCGraph:
    """Top-justified graph: column ``j`` holds ``code(w^-1)_j`` crossings."""
    w = Permutation.coerce(w)
    cells = [(i, j) for j, cj in enumerate(lehmer_code(inverse(w)), 1) for i in range(1, cj + 1)]
    return RCGraph(w, _bits_of(cells, w.n))


def reading_word(D: RCGraph) -> tuple[int, ...]:
    return D.word


def label(D: RCGraph) -> tuple[int, ...]:
    """Number of crossings on each diagonal ``1 .. n-1``."""
    return D.label


def strand_types(D: RCGraph) -> dict[Cell, tuple[int, int]]:
    return dict(D.types)


# -- move engine ----------------------------------------------------------

def _raw_moves(bits: int, n: int, max_order: Optional[int] = None):
    """Yield ``(idx, k, target_idx)`` for every ladder move, sources row-major.

    Each source admits at most one order: the scan up columns ``j, j+1`` stops
    at the first row that is not a full pair of crossings.
    """
    b = bits
    while b:
        low = b & -b
        idx = low.bit_length() - 1
        b ^= low
        col = idx % n
        if col + 1 >= n or bits >> (idx + 1) & 1:
            continue
        up = idx - n
        k = 0
        while up >= 0:
            left = bits >> up & 1
            right = bits >> (up + 1) & 1
            if not left and not right:
                yield idx, k, up + 1
                break
            if not (left and right):
                break
            if max_order is not None and k >= max_order:
                break
            up -= n
            k += 1


def _raw_inverse_moves(bits: int, n: int, max_order: Optional[int] = None):
    """Yield ``(idx, k, target_idx)`` undoing a ladder move; ``idx`` is the moved
    crossing in the current graph and ``target_idx`` where it came from."""
    total = n * n
    b = bits
    while b:
        low = b & -b
        idx = low.bit_length() - 1
        b ^= low
        col = idx % n
        if col == 0 or bits >> (idx - 1) & 1:
            continue
        down = idx + n
        k = 0
        while down < total:
            left = bits >> (down - 1) & 1
            right = bits >> down & 1
            if not left and not right:
                yield idx, k, down - 1
                break
            if not (left and right):
                break
            if max_order is not None and k >= max_order:
                break
            down += n
            k += 1


def applicable_moves(D: RCGraph, max_order: Optional[int] = None) -> list[LadderMove]:
    """All ladder moves of ``D`` (of order at most ``max_order``), row-major by source."""
    n = D.n
    return [LadderMove((idx // n + 1, idx % n + 1), k)
            for idx, k, _ in _raw_moves(D.bits, n, max_order)]


def inverse_moves(D: RCGraph, max_order: Optional[int] = None) -> list[LadderMove]:
    """Moves ``m`` such that ``D = apply_move(D', m)`` for some RC-graph ``D'``."""
    n = D.n
    out = []
    for _, k, tgt in _raw_inverse_moves(D.bits, n, max_order):
        out.append(LadderMove((tgt // n + 1, tgt % n + 1), k))
    return out


def apply_move(D: RCGraph, m: LadderMove) -> RCGraph:
    n = D.n
    i, j = m.source
    ti, tj = m.target
    if ti < 1 or not (1 <= j < n):
        raise MoveError(f"move {m} leaves the grid")
    src = (i - 1) * n + j - 1
    for idx, k, tgt in _raw_moves(D.bits, n):
        if idx == src:
            if k != m.order:
                raise MoveError(f"crossing {m.source} admits order {k}, not {m.order}")
            return RCGraph._trusted(D.owner, D.bits ^ (1 << src) | (1 << tgt))
    raise MoveError(f"no ladder move at {m.source} in {D}")


def unapply_move(D: RCGraph, m: LadderMove) -> RCGraph:
    """Inverse of :func:`apply_move`: move the crossing at ``m.target`` back."""
    n = D.n
    ti, tj = m.target
    if not (1 <= ti <= n and 1 <= tj <= n):
        raise MoveError(f"move {m} leaves the grid")
    cur = (ti - 1) * n + tj - 1
    for idx, k, back in _raw_inverse_moves(D.bits, n):
        if idx == cur:
            if k != m.order:
                raise MoveError(f"crossing {m.target} undoes order {k}, not {m.order}")
            return RCGraph._trusted(D.owner, D.bits ^ (1 << cur) | (1 << back))
    raise MoveError(f"no inverse ladder move at {m.target} in {D}")


# -- closures -------------------------------------------------------------

def _closure(start: int, n: int, budget: int, max_order: Optional[int] = None,
             undirected: bool = False) -> list[int]:
    seen = {start}
    order = [start]
    queue = deque(order)
    while queue:
        bits = queue.popleft()
        nexts = [bits ^ (1 << idx) | (1 << tgt) for idx, _, tgt in _raw_moves(bits, n, max_order)]
        if undirected:
            nexts += [bits ^ (1 << idx) | (1 << tgt)
                      for idx, _, tgt in _raw_inverse_moves(bits, n, max_order)]
        for nb in nexts:
            if nb not in seen:
                seen.add(nb)
                order.append(nb)
                if len(order) > budget:
                    raise BudgetExceeded(f"more than {budget} RC-graphs")
                queue.append(nb)
    return order


def enumerate_all(w: PermLike, budget: Optional[int] = None,
                  max_order: Optional[int] = None) -> list[RCGraph]:
    """All RC-graphs reachable from the bottom graph, in breadth-first order.

    With ``max_order=None`` this is the whole of RC(w).
    """
    w = Permutation.coerce(w)
    budget = default_budget() if budget is None else budget
    n = w.n
    return [RCGraph._trusted(w, b)
            for b in _closure(bottom(w).bits, n, budget, max_order)]


def count_rc_graphs(w: PermLike, budget: Optional[int] = None) -> int:
    w = Permutation.coerce(w)
    budget = default_budget() if budget is None else budget
    return len(_closure(bottom(w).bits, w.n, budget))


def simple_component(D: RCGraph, budget: Optional[int] = None) -> list[RCGraph]:
    """Component of ``D`` under simple moves taken in either direction."""
    budget = default_budget() if budget is None else budget
    return [RCGraph._trusted(D.owner, b)
            for b in _closure(D.bits, D.n, budget, max_order=0, undirected=True)]


def simple_sink(start: RCGraph) -> tuple[RCGraph, int]:
    """Apply the first available simple move until none is left."""
    bits, n = start.bits, start.n
    steps = 0
    while True:
        nxt = next(_raw_moves(bits, n, max_order=0), None)
        if nxt is None:
            return RCGraph._trusted(start.owner, bits), steps
        idx, _, tgt = nxt
        bits = bits ^ (1 << idx) | (1 << tgt)
        steps += 1


def is_simply_connected(w: PermLike, budget: Optional[int] = None) -> bool:
    """True iff every RC-graph of ``w`` is reachable from ``B_w`` by simple moves."""
    w = Permutation.coerce(w)
    comp = simple_component(bottom(w), budget)
    return len(comp) == count_rc_graphs(w, budget)
