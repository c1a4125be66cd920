"""
Exhaustive verification harness.

Every check sweeps S_n in lexicographic order.  A sweep can be split into
``shards``: shard ``s`` takes the permutations whose lexicographic rank is
``s`` modulo ``shards``.  Reports from the shards of one sweep merge into the
same content as an unsharded run.

Checkpointing: with a checkpoint directory, each sweep rewrites
``<check>-n<size>-shard<s>.progress`` ("check, n, last completed rank") and the
partial report next to it every :data:`CHECKPOINT_EVERY` permutations;
``resume=True`` skips ranks already covered.
"""

from __future__ import annotations

import json
import math
import os
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

from .perm import (Permutation, avoids, catalan_permutation, count_pattern,
                   permutations_of, rothe_diagram)
from .rcgraph import (_raw_moves, bottom, count_rc_graphs, enumerate_all,
                      is_simply_connected, simple_sink, top)
from .schubert import (build_coefficients, catalan, max_coefficient,
                       max_coefficient_report, riordan_check)
from .witness import check_diag_gap, witness_report

__all__ = [
    "CheckReport", "CHECKS", "SUITES", "TABLE1", "CHECKPOINT_EVERY",
    "check_main_bound", "check_weigandt", "check_thm_4_1", "check_diamond",
    "check_witnesses", "check_catalan", "check_remark_14532",
    "check_conjecture", "run_all", "merge_reports", "write_report",
]

CHECKPOINT_EVERY = 10_000

# n -> (max c_w, maximizers)
TABLE1 = {
    3: (1, ("132",)),
    4: (1, ("1432",)),
    5: (5, ("12543", "21543")),
    6: (37, ("126543", "216543")),
    7: (342, ("1327654",)),
    8: (5820, ("13287654",)),
}


@dataclass
class CheckReport:
    name: str
    n_range: tuple[int, int]
    tested: int = 0
    failures: list[dict] = field(default_factory=list)
    wall_time: float = 0.0
    shards: int = 1
    shard_ids: list[int] = field(default_factory=lambda: [0])
    summary: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def merge(self, other: "CheckReport") -> "CheckReport":
        if other.name != self.name:
            raise ValueError(f"cannot merge {self.name} with {other.name}")
        if set(self.shard_ids) & set(other.shard_ids):
            raise ValueError("overlapping shards")
        summary = dict(self.summary)
        for k, v in other.summary.items():
            summary[k] = summary.get(k, 0) + v if isinstance(v, int) else v
        return CheckReport(
            name=self.name,
            n_range=(min(self.n_range[0], other.n_range[0]), max(self.n_range[1], other.n_range[1])),
            tested=self.tested + other.tested,
            failures=sorted(self.failures + other.failures, key=lambda f: (f.get("n", 0), f.get("rank", 0))),
            wall_time=self.wall_time + other.wall_time,
            shards=self.shards,
            shard_ids=sorted(self.shard_ids + other.shard_ids),
            summary=summary,
        )

    def content(self) -> dict:
        """Everything except timing and shard bookkeeping."""
        return {"name": self.name, "n_range": list(self.n_range), "tested": self.tested,
                "failures": self.failures, "summary": self.summary, "passed": self.passed}

    def to_json(self) -> dict:
        return {**self.content(), "wall_time": round(self.wall_time, 3),
                "shards": self.shards, "shard_ids": self.shard_ids}

    @classmethod
    def from_json(cls, data: dict) -> "CheckReport":
        return cls(data["name"], tuple(data["n_range"]), data["tested"], data["failures"],
                   data.get("wall_time", 0.0), data.get("shards", 1),
                   data.get("shard_ids", [0]), data.get("summary", {}))

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lo, hi = self.n_range
        return f"{status} {self.name} n={lo}..{hi} tested={self.tested} failures={len(self.failures)}"


def merge_reports(reports: list[CheckReport]) -> CheckReport:
    out = reports[0]
    for r in reports[1:]:
        out = out.merge(r)
    return out


# -- per-permutation predicates: return None on success, a dict on failure --

def _main_bound(w: Permutation) -> Optional[dict]:
    nu = count_rc_graphs(w)
    p132, p1432 = count_pattern("132", w), count_pattern("1432", w)
    if nu < 1 + p132 + p1432:
        return {"nu": nu, "p132": p132, "p1432": p1432}
    return None


def _weigandt(w: Permutation) -> Optional[dict]:
    nu = count_rc_graphs(w)
    p132 = count_pattern("132", w)
    sink, steps = simple_sink(bottom(w))
    if nu < 1 + p132 or sink != top(w) or steps != p132:
        return {"nu": nu, "p132": p132, "chain": steps + 1, "sink_is_top": sink == top(w)}
    return None


def _thm_4_1(w: Permutation) -> Optional[dict]:
    conn = is_simply_connected(w)
    av = avoids("1432", w)
    if conn != av:
        return {"simply_connected": conn, "avoids_1432": av}
    return None


def _diamond(w: Permutation) -> Optional[dict]:
    """Simple-move digraph from B_w: local confluence, graded, unique sink T_w."""
    n = w.n
    start = bottom(w).bits
    depth = {start: 0}
    queue = deque([start])
    sinks = []
    problems = []
    while queue:
        b = queue.popleft()
        moves = list(_raw_moves(b, n, max_order=0))
        if not moves:
            sinks.append(b)
        succ = {}
        for idx, _, tgt in moves:
            nb = b ^ (1 << idx) | (1 << tgt)
            succ[idx] = (nb, tgt)
            if nb not in depth:
                depth[nb] = depth[b] + 1
                queue.append(nb)
            elif depth[nb] != depth[b] + 1:
                problems.append("ungraded")
        srcs = sorted(succ)
        for x in range(len(srcs)):
            for y in range(x + 1, len(srcs)):
                i1, i2 = srcs[x], srcs[y]
                b1, t1 = succ[i1]
                b2, t2 = succ[i2]
                m2 = {s: t for s, _, t in _raw_moves(b1, n, max_order=0)}
                m1 = {s: t for s, _, t in _raw_moves(b2, n, max_order=0)}
                if m2.get(i2) != t2 or m1.get(i1) != t1:
                    problems.append("diamond")
    p132 = count_pattern("132", w)
    top_bits = top(w).bits
    if problems or sinks != [top_bits] or depth[top_bits] != p132:
        return {"problems": sorted(set(problems)), "sinks": len(sinks),
                "sink_is_top": sinks == [top_bits], "p132": p132,
                "depth_of_top": depth.get(top_bits)}
    return None


def _witnesses(w: Permutation) -> Optional[dict]:
    rep = witness_report(w)
    p1432 = count_pattern("1432", w)
    nu = count_rc_graphs(w)
    p132 = count_pattern("132", w)
    bad = (rep["expected"] != p1432 or rep["distinct"] != p1432 or rep["collisions"]
           or rep["unrecovered"] or rep["in_simple_component"]
           or not check_diag_gap(w) or 1 + p132 + rep["distinct"] > nu)
    if bad:
        return {k: rep[k] for k in ("expected", "distinct", "collisions", "unrecovered",
                                    "in_simple_component")} | {"p1432": p1432}
    return None


PREDICATES: dict[str, Callable[[Permutation], Optional[dict]]] = {
    "main_bound": _main_bound,
    "weigandt": _weigandt,
    "thm_4_1": _thm_4_1,
    "diamond": _diamond,
    "witnesses": _witnesses,
}


def _progress_paths(ckdir: Path, name: str, n: int, shards: int, shard_id: int):
    stem = f"{name}-n{n}-shard{shard_id}of{shards}"
    return ckdir / f"{stem}.progress", ckdir / f"{stem}.partial.json"


def _sweep(name: str, n: int, shards: int = 1, shard_id: int = 0,
           checkpoint: Optional[os.PathLike] = None, resume: bool = False) -> CheckReport:
    if not 0 <= shard_id < shards:
        raise ValueError(f"shard id {shard_id} outside 0..{shards - 1}")
    pred = PREDICATES[name]
    report = CheckReport(name, (n, n), shards=shards, shard_ids=[shard_id])
    last = -1
    ckdir = Path(checkpoint) if checkpoint is not None else None
    if ckdir is not None:
        prog, part = _progress_paths(ckdir, name, n, shards, shard_id)
        if resume and prog.exists() and part.exists():
            report = CheckReport.from_json(json.loads(part.read_text()))
            last = int(prog.read_text().split(",")[2])
    t0 = time.perf_counter()
    since = 0
    for rank, win in enumerate(permutations_of(n)):
        if rank <= last or rank % shards != shard_id:
            continue
        w = Permutation(win)
        fail = pred(w)
        report.tested += 1
        if fail is not None:
            report.failures.append({"n": n, "rank": rank, "w": list(win), **fail})
        since += 1
        if ckdir is not None and since >= CHECKPOINT_EVERY:
            _save_progress(ckdir, report, name, n, shards, shard_id, rank)
            since = 0
    report.wall_time += time.perf_counter() - t0
    if ckdir is not None:
        _save_progress(ckdir, report, name, n, shards, shard_id, math.factorial(n) - 1)
    return report


def _save_progress(ckdir, report, name, n, shards, shard_id, rank):
    ckdir.mkdir(parents=True, exist_ok=True)
    prog, part = _progress_paths(ckdir, name, n, shards, shard_id)
    part.write_text(json.dumps(report.to_json()))
    prog.write_text(f"{name}, {n}, {rank}\n")


def _sweep_range(name: str, n: int, shards: int, shard_id: int, **kw) -> CheckReport:
    reports = [_sweep(name, m, shards, shard_id, **kw) for m in range(1, n + 1)]
    return merge_reports_same_shard(reports)


def merge_reports_same_shard(reports: list[CheckReport]) -> CheckReport:
    """Combine sweeps of different sizes done by one shard."""
    out = reports[0]
    for r in reports[1:]:
        out = CheckReport(out.name, (min(out.n_range[0], r.n_range[0]), max(out.n_range[1], r.n_range[1])),
                          out.tested + r.tested, out.failures + r.failures,
                          out.wall_time + r.wall_time, out.shards, out.shard_ids, out.summary)
    return out


def check_main_bound(n: int, shards: int = 1, shard_id: int = 0, **kw) -> CheckReport:
    """``nu(w) >= 1 + p_132(w) + p_1432(w)`` for every ``w`` in S_n."""
    return _sweep("main_bound", n, shards, shard_id, **kw)


def check_weigandt(n: int, shards: int = 1, shard_id: int = 0, **kw) -> CheckReport:
    """``nu(w) >= 1 + p_132(w)``; the greedy simple-move chain from B_w ends at T_w after p_132 steps."""
    return _sweep("weigandt", n, shards, shard_id, **kw)


def check_thm_4_1(n: int, shards: int = 1, shard_id: int = 0, **kw) -> CheckReport:
    return _sweep("thm_4_1", n, shards, shard_id, **kw)


def check_diamond(n: int, shards: int = 1, shard_id: int = 0, **kw) -> CheckReport:
    return _sweep("diamond", n, shards, shard_id, **kw)


def check_witnesses(n: int, shards: int = 1, shard_id: int = 0, **kw) -> CheckReport:
    return _sweep("witnesses", n, shards, shard_id, **kw)


def check_catalan(max_n: int, shard_id: int = 0, shards: int = 1, **_) -> CheckReport:
    report = CheckReport("catalan", (2, max_n), shards=shards, shard_ids=[shard_id])
    t0 = time.perf_counter()
    for m in range(2, max_n + 1):
        # single permutation per size: owned by shard (m % shards)
        if m % shards != shard_id:
            continue
        got = count_rc_graphs(catalan_permutation(m))
        report.tested += 1
        if got != catalan(m - 1):
            report.failures.append({"n": m, "rank": 0, "nu": got, "catalan": catalan(m - 1)})
    report.wall_time = time.perf_counter() - t0
    return report


REMARK_RIGHT_GRAPH = frozenset({(1, 2), (1, 3), (2, 2), (3, 1), (3, 2)})


def check_remark_14532(shard_id: int = 0, shards: int = 1, **_) -> CheckReport:
    """Moves of order <= 1 from B_14532 reach exactly one graph with a new label."""
    report = CheckReport("remark_14532", (5, 5), shards=shards, shard_ids=[shard_id])
    if shard_id != 0:
        return report
    t0 = time.perf_counter()
    w = Permutation((1, 4, 5, 3, 2))
    base = bottom(w).label
    reached = [D for D in enumerate_all(w, max_order=1) if D.label != base]
    report.tested = 1
    report.summary = {"label_distinct": len(reached)}
    if len(reached) != 1 or reached[0].cells != REMARK_RIGHT_GRAPH:
        report.failures.append({"n": 5, "rank": 0, "w": [1, 4, 5, 3, 2],
                                "reached": [D.sorted_cells() for D in reached]})
    report.wall_time = time.perf_counter() - t0
    return report


def check_conjecture(n: int, shard_id: int = 0, shards: int = 1, workers: int = 1,
                     checkpoint: Optional[os.PathLike] = None, resume: bool = False,
                     **_) -> CheckReport:
    """``c_w >= 0`` up to size n, the per-n maxima, and the 1,n,...,2 values.

    The table is built in size stages, so this check is not split across
    shards; shard 0 runs it.
    """
    report = CheckReport("conjecture", (1, n), shards=shards, shard_ids=[shard_id])
    if shard_id != 0:
        return report
    t0 = time.perf_counter()
    ck = Path(checkpoint) / "coefficients" if checkpoint is not None else None
    table = build_coefficients(n, workers=workers, checkpoint=ck, resume=resume)
    report.tested = sum(table.evaluated.values())
    for u, c in sorted(table.values.items()):
        if c < 0:
            report.failures.append({"n": len(u), "rank": 0, "w": list(u), "c": c})
    rows = {}
    for m in range(3, n + 1):
        value, arg = max_coefficient(m, table)
        rows[str(m)] = {"max": value, "argmax": [str(p) for p in arg],
                        "trimmed_agrees": max_coefficient_report(m, table)["readings_agree"]}
        if m in TABLE1 and (value, tuple(str(p) for p in arg)) != TABLE1[m]:
            report.failures.append({"n": m, "rank": 0, "table1": rows[str(m)],
                                    "expected": list(TABLE1[m])})
    if n >= 3 and not riordan_check(n, table):
        report.failures.append({"n": n, "rank": 0, "riordan": False})
    report.summary = {"nonzero": {str(m): len(table.nonzero(m)) for m in range(1, n + 1)},
                      "table_max": rows}
    report.wall_time = time.perf_counter() - t0
    return report


SWEEPS = {
    "bound": "main_bound",
    "weigandt": "weigandt",
    "connectivity": "thm_4_1",
    "diamond": "diamond",
    "witness": "witnesses",
}

CHECKS = [*SWEEPS, "catalan", "remark", "conjecture"]

SUITES = {
    "all": CHECKS,
    "sweeps": list(SWEEPS),
    **{name: [name] for name in CHECKS},
}


def _run_shard(suite: str, n: int, shards: int, shard_id: int, workers: int,
               checkpoint, resume) -> dict[str, CheckReport]:
    out = {}
    for check in SUITES[suite]:
        if check in SWEEPS:
            out[check] = _sweep_range(SWEEPS[check], n, shards, shard_id,
                                      checkpoint=checkpoint, resume=resume)
            out[check].name = check
        elif check == "catalan":
            out[check] = check_catalan(max(n, 2), shard_id, shards)
        elif check == "remark":
            out[check] = check_remark_14532(shard_id, shards)
        elif check == "conjecture":
            out[check] = check_conjecture(n, shard_id, shards, workers=workers,
                                          checkpoint=checkpoint, resume=resume)
    return out


def run_all(n: int, shards: int = 1, shard_id: Optional[int] = None, suite: str = "all",
            workers: int = 1, checkpoint: Optional[os.PathLike] = None,
            resume: bool = False) -> dict[str, CheckReport]:
    """Run ``suite`` on all sizes ``1..n``.

    With ``shard_id`` given only that shard runs; otherwise every shard runs
    (on ``workers`` processes) and the reports are merged per check.
    """
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    if shards < 1:
        raise ValueError("shards must be positive")
    if shard_id is not None:
        return _run_shard(suite, n, shards, shard_id, workers, checkpoint, resume)
    ids = range(shards)
    if workers > 1 and shards > 1:
        with ProcessPoolExecutor(min(workers, shards)) as pool:
            parts = list(pool.map(_run_shard, [suite] * shards, [n] * shards, [shards] * shards,
                                  ids, [1] * shards, [checkpoint] * shards, [resume] * shards))
    else:
        parts = [_run_shard(suite, n, shards, s, workers, checkpoint, resume) for s in ids]
    return {name: merge_reports([p[name] for p in parts]) for name in parts[0]}


def write_report(reports: dict[str, CheckReport], path: os.PathLike) -> None:
    data = {"passed": all(r.passed for r in reports.values()),
            "checks": {k: r.to_json() for k, r in reports.items()}}
    Path(path).write_text(json.dumps(data, indent=2) + "\n")
