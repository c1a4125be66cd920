"""
Permutations of the positive integers with finitely many non-fixed points.

A :class:`Permutation` stores the shortest one-line window: trailing fixed
points are trimmed, so ``1432`` and ``14325`` are the same object.  The
identity has an empty window.

>>> w = parse_permutation("1432")
>>> lehmer_code(w)
(0, 2, 1, 0)
>>> sorted(rothe_diagram(w))
[(2, 2), (2, 3), (3, 2)]
>>> count_pattern("132", w)
3
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

__all__ = [
    "Permutation", "Cell", "Diagram", "PermLike",
    "parse_permutation", "inverse", "inversions", "length", "lehmer_code",
    "rothe_diagram", "count_pattern", "avoids", "count_1432_via_rothe",
    "a_set", "c_set", "is_layered", "standardize", "permutations_of",
    "catalan_permutation", "PatternError",
]

Cell = tuple[int, int]
Diagram = frozenset  # frozenset[Cell]; 1-based (row, col)


class PatternError(ValueError):
    """A pattern argument that has no meaning for elements of S_infinity."""


@dataclass(frozen=True, order=True)
class Permutation:
    """Canonical one-line window of an element of S_infinity."""

    window: tuple[int, ...]

    def __post_init__(self):
        win = tuple(int(x) for x in self.window)
        if sorted(win) != list(range(1, len(win) + 1)):
            raise ValueError(f"not a permutation of 1..{len(win)}: {win}")
        k = len(win)
        while k and win[k - 1] == k:
            k -= 1
        object.__setattr__(self, "window", win[:k])

    @classmethod
    def identity(cls) -> "Permutation":
        return cls(())

    @classmethod
    def coerce(cls, obj: "PermLike") -> "Permutation":
        if isinstance(obj, Permutation):
            return obj
        if isinstance(obj, str):
            return parse_permutation(obj)
        return cls(tuple(obj))

    @property
    def n(self) -> int:
        # the identity is treated as an element of S_1
        return max(len(self.window), 1)

    def __call__(self, i: int) -> int:
        if 1 <= i <= len(self.window):
            return self.window[i - 1]
        if i < 1:
            raise ValueError(f"position must be positive, got {i}")
        return i

    def __len__(self) -> int:
        return len(self.window)

    def __iter__(self) -> Iterator[int]:
        return iter(self.window)

    def padded(self, n: int) -> tuple[int, ...]:
        """One-line notation in S_n, n >= len(window)."""
        if n < len(self.window):
            raise ValueError(f"{self} does not fit in S_{n}")
        return self.window + tuple(range(len(self.window) + 1, n + 1))

    def is_identity(self) -> bool:
        return not self.window

    def __str__(self) -> str:
        if not self.window:
            return "1"
        if len(self.window) <= 9:
            return "".join(map(str, self.window))
        return ",".join(map(str, self.window))

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r})"

    def to_json(self) -> list[int]:
        return list(self.window)


PermLike = Union[Permutation, str, Sequence[int]]

_TOKEN = re.compile(r"\d+")


def _tokens(text: str) -> tuple[int, ...]:
    s = text.strip().strip("[]()").strip()
    if not s:
        raise ValueError("empty permutation")
    if "," in s or " " in s:
        tokens = [t for t in re.split(r"[,\s]+", s) if t]
    else:
        tokens = list(s)
    for t in tokens:
        if not _TOKEN.fullmatch(t):
            raise ValueError(f"non-numeric token {t!r} in {text!r}")
    return tuple(int(t) for t in tokens)


def parse_permutation(text: str) -> Permutation:
    """Parse ``"1432"`` or ``"3,9,2,10,1,8,5,7,4,6"`` into a canonical permutation.

    Brackets and surrounding whitespace are ignored, so JSON arrays parse too.
    """
    return Permutation(_tokens(text))


def inverse(w: PermLike) -> Permutation:
    w = Permutation.coerce(w)
    inv = [0] * len(w.window)
    for i, v in enumerate(w.window, 1):
        inv[v - 1] = i
    return Permutation(tuple(inv))


def inversions(w: PermLike) -> set[Cell]:
    """Position pairs ``(i, j)`` with ``i < j`` and ``w(i) > w(j)``."""
    win = Permutation.coerce(w).window
    n = len(win)
    return {(i + 1, j + 1) for i in range(n) for j in range(i + 1, n) if win[i] > win[j]}


def length(w: PermLike) -> int:
    return sum(lehmer_code(w))


def lehmer_code(w: PermLike) -> tuple[int, ...]:
    win = Permutation.coerce(w).window
    return tuple(sum(1 for b in win[i + 1:] if b < a) for i, a in enumerate(win))


def rothe_diagram(w: PermLike) -> Diagram:
    w = Permutation.coerce(w)
    winv = inverse(w)
    n = len(w.window)
    return frozenset(
        (i, j)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        if w(i) > j and winv(j) > i
    )


def _pattern_window(u: PermLike) -> tuple[int, ...]:
    if isinstance(u, Permutation):
        win = u.window
    else:
        win = _tokens(u) if isinstance(u, str) else tuple(u)
        if sorted(win) != list(range(1, len(win) + 1)):
            raise ValueError(f"not a permutation: {u!r}")
        if win and win[-1] == len(win):
            raise PatternError(
                f"pattern {u!r} ends in a fixed point; occurrences are not "
                "well defined on S_infinity")
    if not win:
        raise PatternError("the identity is not a countable pattern")
    return win


def _count(u: Sequence[int], w: Sequence[int], first_only: bool = False) -> int:
    """Backtracking occurrence count with value-window pruning."""
    k, n = len(u), len(w)
    if k > n:
        return 0
    # for step t: indices of the chosen values just below / above u[t]
    lower = []
    upper = []
    for t in range(k):
        below = [s for s in range(t) if u[s] < u[t]]
        above = [s for s in range(t) if u[s] > u[t]]
        lower.append(max(below, key=lambda s: u[s]) if below else -1)
        upper.append(min(above, key=lambda s: u[s]) if above else -1)
    chosen = [0] * k

    def rec(t: int, start: int) -> int:
        if t == k:
            return 1
        lo = chosen[lower[t]] if lower[t] >= 0 else 0
        hi = chosen[upper[t]] if upper[t] >= 0 else n + 1
        total = 0
        for pos in range(start, n - (k - t) + 1):
            v = w[pos]
            if lo < v < hi:
                chosen[t] = v
                total += rec(t + 1, pos + 1)
                if first_only and total:
                    return total
        return total

    return rec(0, 0)


def count_pattern(u: PermLike, w: PermLike) -> int:
    """Number of occurrences of the pattern ``u`` in ``w``.

    ``u`` may not end in a fixed point: such patterns are ambiguous once
    ``w`` is viewed in S_infinity, and a :class:`PatternError` is raised.
    """
    return _count(_pattern_window(u), Permutation.coerce(w).window)


def avoids(u: PermLike, w: PermLike) -> bool:
    return _count(_pattern_window(u), Permutation.coerce(w).window, first_only=True) == 0


def a_set(w: PermLike, box: Cell) -> tuple[int, ...]:
    """Rows ``a < i`` with ``w(a) < j`` (dots to the upper left of the box)."""
    w = Permutation.coerce(w)
    i, j = box
    return tuple(a for a in range(1, i) if w(a) < j)


def c_set(w: PermLike, box: Cell) -> tuple[int, ...]:
    """Rows ``i < c < w^-1(j)`` with ``j < w(c) < w(i)``, sorted by ``w(c)``."""
    w = Permutation.coerce(w)
    i, j = box
    wij = inverse(w)(j)
    rows = [c for c in range(i + 1, wij) if j < w(c) < w(i)]
    return tuple(sorted(rows, key=w))


def count_1432_via_rothe(w: PermLike) -> int:
    w = Permutation.coerce(w)
    return sum(len(a_set(w, box)) * len(c_set(w, box)) for box in rothe_diagram(w))


def is_layered(w: PermLike) -> bool:
    """True iff ``w`` is a concatenation of decreasing runs of consecutive values,
    each run sitting above the previous one (e.g. ``21543``)."""
    win = Permutation.coerce(w).window
    i = lo = 0
    while i < len(win):
        top = win[i]
        if top <= lo:
            return False
        if win[i:i + top - lo] != tuple(range(top, lo, -1)):
            return False
        i += top - lo
        lo = top
    return True


def standardize(values: Iterable[int]) -> tuple[int, ...]:
    """Order-isomorphic permutation of ``1..k``."""
    vals = list(values)
    rank = {v: r for r, v in enumerate(sorted(vals), 1)}
    return tuple(rank[v] for v in vals)


def permutations_of(n: int) -> Iterator[tuple[int, ...]]:
    """All of S_n in lexicographic one-line order (untrimmed windows)."""
    return itertools.permutations(range(1, n + 1))


def catalan_permutation(n: int) -> Permutation:
    """The permutation ``1, n, n-1, ..., 2``."""
    if n < 1:
        raise ValueError("n must be positive")
    return Permutation((1,) + tuple(range(n, 1, -1)))
