"""Benchmark harness: Monge-accelerated CC solvers against the quadratic baseline."""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, field

from .cc_sp import CcSpInstance, solve_cc_sp
from .core import Axis, InvariantError, MisrepProfile
from .gen import GenParams, gen_sp_misrep
from .monge import build_edge_weight_oracle

TAGS = {"monge-smawk": "smawk", "monge-dc": "dc", "naive-quadratic": "naive"}
CSV_COLUMNS = ("algorithm", "n", "m", "k", "d", "seed", "preprocess_ms", "solve_ms", "objective", "unverified")


class BenchMismatch(InvariantError):
    pass


@dataclass(frozen=True)
class BenchConfig:
    n: int
    m: int
    k: int
    seeds: int = 1
    tags: tuple[str, ...] = tuple(TAGS)
    base_seed: int = 0
    repeats: int = 1
    value_cap: int | None = None
    tie_probability: float = 0.2

    def __post_init__(self):
        unknown = [t for t in self.tags if t not in TAGS]
        if unknown or not self.tags:
            raise ValueError(f"unknown algorithm tags {unknown}; choose from {sorted(TAGS)}")
        if self.seeds < 1 or self.repeats < 1:
            raise ValueError("seeds and repeats must be positive")
        if not 1 <= self.k <= self.m:
            raise ValueError(f"k={self.k} outside 1..{self.m}")


@dataclass(frozen=True)
class BenchRecord:
    algorithm: str
    n: int
    m: int
    k: int
    d: int
    seed: int
    preprocess_ms: float
    solve_ms: float
    objective: object
    unverified: bool = field(default=False)

    def row(self) -> list:
        return [
            self.algorithm, self.n, self.m, self.k, self.d, self.seed,
            f"{self.preprocess_ms:.3f}", f"{self.solve_ms:.3f}", str(self.objective),
            str(self.unverified).lower(),
        ]


_warm = False


def _warm_up():
    """Compile the kernels once so no timing includes the JIT."""
    global _warm
    if not _warm:
        profile = MisrepProfile([[0, 1, 2], [2, 1, 0]])
        for method in TAGS.values():
            solve_cc_sp(CcSpInstance(profile, Axis.identity(3), 2), method)
        _warm = True


def bench_cell(profile, axis, k: int, tag: str, repeats: int = 1):
    """``(preprocess_ms, solve_ms, objective)``, best of ``repeats`` runs each."""
    _warm_up()
    method = TAGS[tag]
    best_pre = best_solve = float("inf")
    objective = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        oracle = build_edge_weight_oracle(profile, axis)
        t1 = time.perf_counter()
        res = solve_cc_sp(CcSpInstance(profile, axis, k), method, oracle=oracle)
        t2 = time.perf_counter()
        best_pre = min(best_pre, (t1 - t0) * 1e3)
        best_solve = min(best_solve, (t2 - t1) * 1e3)
        objective = res.objective
    return best_pre, best_solve, objective


def run_benchmark(config: BenchConfig) -> list[BenchRecord]:
    """One record per (seed, tag); raises :class:`BenchMismatch` on differing objectives."""
    records = []
    single = len(config.tags) == 1
    for s in range(config.seeds):
        seed = config.base_seed + s
        params = GenParams(
            config.n, config.m, seed=seed, value_cap=config.value_cap,
            tie_probability=config.tie_probability,
        )
        profile, axis = gen_sp_misrep(params)
        cell = []
        for tag in config.tags:
            pre, solve, obj = bench_cell(profile, axis, config.k, tag, config.repeats)
            cell.append(BenchRecord(tag, config.n, config.m, config.k, 0, seed, pre, solve, obj, single))
        objectives = {r.objective for r in cell}
        if len(objectives) > 1:
            raise BenchMismatch(
                f"seed {seed}: objectives differ across tags: "
                + ", ".join(f"{r.algorithm}={r.objective}" for r in cell)
            )
        records.extend(cell)
    return records


def records_to_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow(r.row())
    return buf.getvalue()
