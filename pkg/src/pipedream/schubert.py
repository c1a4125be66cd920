"""
Principal specializations of Schubert polynomials and the pattern coefficients.

``nu(w)`` counts RC-graphs.  The coefficients ``c_u`` are defined size by size
through

    nu(w) = 1 + sum over patterns u of w (including w itself) of c_u * p_u(w),

where ``u`` runs over permutations whose last entry is not a fixed point
(patterns ending in a fixed point have ``c_u = 0``).  For ``w`` of size ``m``
the sum over proper patterns is taken over index subsets of ``w`` and
standardized, which equals ``sum_u c_u p_u(w)`` term by term.
"""

from __future__ import annotations

import itertools
import json
import logging
import math
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterator, Optional

from .perm import (Permutation, PermLike, catalan_permutation, count_pattern,
                   is_layered, length, permutations_of)
from .rcgraph import count_rc_graphs, enumerate_all

__all__ = [
    "nu", "nu_macdonald_oracle", "reduced_words", "monomials", "catalan",
    "CoefficientTable", "build_coefficients", "verify_nonnegativity",
    "max_coefficient", "max_coefficient_report", "riordan_reference",
    "riordan_check", "RIORDAN", "CHUNK",
]

log = logging.getLogger(__name__)

# ranks per work unit and per checkpoint flush
CHUNK = 10_000

# OEIS A005043 from a(0); c of 1,n,n-1,...,2 is a(n-1)
RIORDAN = (1, 0, 1, 1, 3, 6, 15, 36, 91, 232, 603, 1585, 4213)


def catalan(k: int) -> int:
    return math.comb(2 * k, k) // (k + 1)


@lru_cache(maxsize=None)
def _nu_cached(window: tuple[int, ...], budget: Optional[int]) -> int:
    return count_rc_graphs(Permutation(window), budget)


def nu(w: PermLike, budget: Optional[int] = None) -> int:
    """Number of RC-graphs of ``w``, i.e. the Schubert polynomial at all ones."""
    return _nu_cached(Permutation.coerce(w).window, budget)


@lru_cache(maxsize=None)
def _letter_product_sum(window: tuple[int, ...]) -> int:
    # sum over reduced words of w of the product of their letters, by last letter
    total = 0
    descent = False
    for i in range(len(window) - 1):
        if window[i] > window[i + 1]:
            descent = True
            v = list(window)
            v[i], v[i + 1] = v[i + 1], v[i]
            total += (i + 1) * _letter_product_sum(tuple(v))
    return total if descent else 1


def nu_macdonald_oracle(w: PermLike) -> int:
    """``nu(w)`` from Macdonald's reduced-word identity, independent of RC-graphs.

    ``sum_{a in Red(w)} a_1 a_2 ... a_l = l! * nu(w)``.  The sum is accumulated
    over the weak order (grouping words by their last letter) instead of by
    listing every reduced word.
    """
    w = Permutation.coerce(w)
    total = _letter_product_sum(w.window)
    q, r = divmod(total, math.factorial(length(w)))
    if r:
        raise ArithmeticError(f"letter-product sum for {w} not divisible by l!")
    return q


def reduced_words(w: PermLike) -> Iterator[tuple[int, ...]]:
    """All reduced words ``a`` with ``w = s_{a_1} ... s_{a_l}``."""
    win = list(Permutation.coerce(w).window)

    def rec(cur):
        desc = [i for i in range(len(cur) - 1) if cur[i] > cur[i + 1]]
        if not desc:
            yield ()
            return
        for i in desc:
            cur[i], cur[i + 1] = cur[i + 1], cur[i]
            for word in rec(cur):
                yield word + (i + 1,)
            cur[i], cur[i + 1] = cur[i + 1], cur[i]

    yield from rec(win)


def monomials(w: PermLike, budget: Optional[int] = None) -> Counter:
    """Exponent vectors (crossings per row) of the Schubert polynomial, with multiplicity."""
    return Counter(D.row_counts() for D in enumerate_all(w, budget))


# -- coefficient table ----------------------------------------------------

@dataclass
class CoefficientTable:
    """Nonzero ``c_u`` for canonical patterns of size ``<= max_size``."""

    max_size: int = 1
    values: dict[tuple[int, ...], int] = field(default_factory=dict)
    # size -> number of canonical patterns evaluated
    evaluated: dict[int, int] = field(default_factory=dict)

    def __getitem__(self, u: PermLike) -> int:
        win = Permutation.coerce(u).window
        if len(win) > self.max_size:
            raise KeyError(f"table only complete up to size {self.max_size}")
        return self.values.get(win, 0)

    def get_exact(self, window: tuple[int, ...]) -> int:
        """``c`` of a size-``len(window)`` pattern, zero when it ends in a fixed point."""
        return self.values.get(window, 0)

    def nonzero(self, size: Optional[int] = None) -> dict[tuple[int, ...], int]:
        return {u: c for u, c in self.values.items() if size is None or len(u) == size}

    def to_json(self) -> dict:
        return {
            "max_size": self.max_size,
            "coefficients": {"".join(map(str, u)) if len(u) <= 9 else ",".join(map(str, u)): c
                             for u, c in sorted(self.values.items(), key=lambda kv: (len(kv[0]), kv[0]))},
            "evaluated": {str(k): v for k, v in sorted(self.evaluated.items())},
        }

    @classmethod
    def from_json(cls, data: dict) -> "CoefficientTable":
        from .perm import _tokens
        return cls(
            max_size=int(data["max_size"]),
            values={_tokens(k): int(v) for k, v in data["coefficients"].items()},
            evaluated={int(k): int(v) for k, v in data.get("evaluated", {}).items()},
        )


def _pattern_sum(window: tuple[int, ...], table: CoefficientTable, sizes: list[int]) -> int:
    """Sum of ``c`` over standardized proper subsequences of ``window``."""
    values = table.values
    total = 0
    for k in sizes:
        for sub in itertools.combinations(window, k):
            order = sorted(sub)
            key = tuple(order.index(v) + 1 for v in sub)
            c = values.get(key)
            if c:
                total += c
    return total


_worker_table: Optional[CoefficientTable] = None


def _init_worker(table_json: dict) -> None:
    global _worker_table
    _worker_table = CoefficientTable.from_json(table_json)


def _stage_chunk(m: int, start: int, stop: int, budget: Optional[int],
                 table: Optional[CoefficientTable] = None) -> tuple[list, int]:
    table = table if table is not None else _worker_table
    sizes = sorted({len(u) for u in table.values if len(u) < m})
    found = []
    evaluated = 0
    for w in itertools.islice(permutations_of(m), start, stop):
        if w[-1] == m:
            continue
        evaluated += 1
        c = count_rc_graphs(Permutation(w), budget) - 1 - _pattern_sum(w, table, sizes)
        if c:
            found.append((w, c))
    return found, evaluated


def _write_checkpoint(directory: Path, table: CoefficientTable, m: int, rank: int) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    tmp = directory / "table.json.tmp"
    tmp.write_text(json.dumps(table.to_json()))
    os.replace(tmp, directory / "table.json")
    (directory / "progress.txt").write_text(f"coefficients, {m}, {rank}\n")


def _read_checkpoint(directory: Path) -> Optional[tuple[CoefficientTable, int, int]]:
    prog = directory / "progress.txt"
    tab = directory / "table.json"
    if not (prog.exists() and tab.exists()):
        return None
    name, m, rank = [s.strip() for s in prog.read_text().split(",")]
    if name != "coefficients":
        raise ValueError(f"{prog} is a checkpoint for {name!r}")
    return CoefficientTable.from_json(json.loads(tab.read_text())), int(m), int(rank)


def build_coefficients(n: int, *, workers: int = 1, budget: Optional[int] = None,
                       checkpoint: Optional[os.PathLike] = None,
                       resume: bool = False) -> CoefficientTable:
    """Compute every ``c_u`` with ``|u| <= n``.

    Stages run by pattern size; inside a stage permutations are processed in
    lexicographic rank chunks of ``CHUNK``, optionally on ``workers`` processes.
    With ``checkpoint`` set, ``progress.txt`` ("coefficients, size, last rank")
    and ``table.json`` are rewritten after every chunk and ``resume=True``
    continues from them.
    """
    if n < 1:
        raise ValueError("n must be positive")
    table = CoefficientTable()
    first_m, first_rank = 2, 0
    ckdir = Path(checkpoint) if checkpoint is not None else None
    if ckdir is not None and resume:
        state = _read_checkpoint(ckdir)
        if state is not None:
            table, m_done, rank_done = state
            first_m, first_rank = m_done, rank_done + 1
            if first_rank >= math.factorial(m_done):
                first_m, first_rank = m_done + 1, 0
            log.info("resuming at size %d rank %d", first_m, first_rank)

    for m in range(first_m, n + 1):
        total = math.factorial(m)
        start = first_rank if m == first_m else 0
        if start == 0:
            table.evaluated[m] = 0
        bounds = [(a, min(a + CHUNK, total)) for a in range(start, total, CHUNK)]
        pool = None
        if workers > 1:
            # one pool per stage so workers see the committed table
            pool = ProcessPoolExecutor(workers, initializer=_init_worker,
                                       initargs=(table.to_json(),))
            results = pool.map(_stage_chunk, [m] * len(bounds), [a for a, _ in bounds],
                               [b for _, b in bounds], [budget] * len(bounds))
        else:
            results = (_stage_chunk(m, a, b, budget, table) for a, b in bounds)
        staged = {}
        try:
            for (a, b), (found, evaluated) in zip(bounds, results):
                staged.update(found)
                table.evaluated[m] = table.evaluated.get(m, 0) + evaluated
                if ckdir is not None:
                    # partial stage entries are saved but only read once the stage resumes
                    snap = CoefficientTable(m - 1, {**table.values, **staged}, dict(table.evaluated))
                    _write_checkpoint(ckdir, snap, m, b - 1)
        finally:
            if pool is not None:
                pool.shutdown()
        table.values.update(staged)
        table.max_size = m
        log.info("size %d: %d nonzero of %d", m, len(table.nonzero(m)), table.evaluated[m])
    table.max_size = max(table.max_size, n)
    return table


def verify_nonnegativity(n: int, table: Optional[CoefficientTable] = None,
                         **build_kw) -> list[tuple[Permutation, int]]:
    """Patterns of size ``<= n`` with a negative coefficient (expected: none)."""
    table = table if table is not None and table.max_size >= n else build_coefficients(n, **build_kw)
    return sorted((Permutation(u), c) for u, c in table.values.items() if len(u) <= n and c < 0)


def max_coefficient(n: int, table: Optional[CoefficientTable] = None,
                    **build_kw) -> tuple[int, list[Permutation]]:
    """Largest ``c_w`` over ``w`` in S_n and the permutations attaining it.

    ``w`` with ``w(n) = n`` has ``c_w = 0`` here (its coefficient as a size-n
    pattern), which is the reading under which the maximizers are listed per n.
    """
    table = table if table is not None and table.max_size >= n else build_coefficients(n, **build_kw)
    best = 0
    arg: list[tuple[int, ...]] = []
    for u, c in table.values.items():
        if len(u) != n:
            continue
        if c > best:
            best, arg = c, [u]
        elif c == best:
            arg.append(u)
    if best == 0:
        # every size-n coefficient vanishes; all of S_n ties at zero
        return 0, []
    return best, [Permutation(u) for u in sorted(arg)]


def max_coefficient_report(n: int, table: CoefficientTable) -> dict:
    """Both readings of the per-n maximum, plus layeredness of the maximizers.

    ``exact``: coefficients of size-n patterns.  ``trimmed``: each ``w`` in S_n
    takes the coefficient of its trimmed window, so shorter patterns padded
    with fixed points compete too.
    """
    value, arg = max_coefficient(n, table)
    trimmed_best = max((c for u, c in table.values.items() if len(u) <= n), default=0)
    trimmed_arg = sorted(Permutation(u).padded(n) for u, c in table.values.items()
                         if len(u) <= n and c == trimmed_best)
    return {
        "n": n,
        "max": value,
        "argmax": [str(p) for p in arg],
        "layered": [is_layered(p) for p in arg],
        "trimmed_max": trimmed_best,
        "trimmed_argmax": ["".join(map(str, t)) if n <= 9 else ",".join(map(str, t))
                           for t in trimmed_arg],
        "readings_agree": trimmed_best == value and len(trimmed_arg) == len(arg),
    }


def riordan_reference(n: int) -> dict[int, int]:
    """``c`` of ``1, m, m-1, ..., 2`` for ``3 <= m <= n`` from the Catalan values alone.

    The only patterns of ``1, m, ..., 2`` with nonzero coefficient are the
    smaller permutations of the same shape, so the recursion closes on them.
    """
    ref: dict[int, int] = {}
    for m in range(3, n + 1):
        wm = catalan_permutation(m)
        ref[m] = catalan(m - 1) - 1 - sum(ref[k] * count_pattern(catalan_permutation(k), wm)
                                          for k in range(3, m))
    return ref


def riordan_check(n: int, table: CoefficientTable) -> bool:
    ref = riordan_reference(n)
    return all(table[catalan_permutation(m)] == ref[m] for m in range(3, n + 1))
