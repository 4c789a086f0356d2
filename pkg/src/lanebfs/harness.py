"""Experiment driver: rooted BFS batches, TEPS statistics, thread and
placement sweeps, CSV/JSON emission.

Timing covers the traversal call only.  Every tree is validated before its
timing is reported; a validation failure aborts the experiment, since a
correctness bug outranks any benchmark number.
"""

from __future__ import annotations

import csv
import json
import math
import os
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .graph import CsrGraph, RmatParams, build_csr, generate_rmat
from .traversal import MODES, LayerPolicy, run_bfs
from .validate import validate_tree

# Environment override for the pinning strategy; an explicit CLI flag wins.
PLACEMENT_ENV_VAR = "LANEBFS_PLACEMENT"

STRATEGIES = ("compact", "scatter", "balanced", "explicit")


@dataclass(frozen=True)
class ThreadPlacement:
    """Where worker threads should land: pack siblings of one core first
    (compact), round-robin across packages and cores (scatter), spread
    evenly over cores keeping siblings adjacent (balanced), or exactly
    threads_per_core workers per physical core (explicit)."""

    strategy: str = "compact"
    threads_per_core: int | None = None

    def __post_init__(self):
        assert self.strategy in STRATEGIES
        if self.strategy == "explicit":
            assert self.threads_per_core is not None and 1 <= self.threads_per_core <= 4
        assert self.threads_per_core is None or 1 <= self.threads_per_core <= 4


def parse_placement(text: str) -> ThreadPlacement:
    """Parse 'compact' / 'scatter' / 'balanced' / 'explicit:N'."""
    if ":" in text:
        name, _, tpc = text.partition(":")
        return ThreadPlacement(name.strip(), int(tpc))
    return ThreadPlacement(text.strip())


def resolve_placement(cli_value: str | None, env: dict | None = None) -> ThreadPlacement:
    """CLI flag wins over the environment variable, which wins over the
    compact default."""
    env = os.environ if env is None else env
    if cli_value:
        return parse_placement(cli_value)
    if env.get(PLACEMENT_ENV_VAR):
        return parse_placement(env[PLACEMENT_ENV_VAR])
    return ThreadPlacement()


@dataclass(frozen=True)
class CpuSlot:
    cpu: int
    core: int
    package: int
    smt: int = 0  # rank among the siblings of (package, core)


@dataclass(frozen=True)
class PlacementOutcome:
    strategy: str
    threads: int
    cpus: tuple[int, ...]
    status: str  # "pinned" or "unpinned"
    note: str = ""

    @property
    def label(self) -> str:
        return self.strategy if self.status == "pinned" else f"{self.strategy}(unpinned)"


def read_topology(sysfs: str | Path = "/sys/devices/system/cpu") -> list[CpuSlot]:
    """Logical processors with their core and package ids, restricted to
    the CPUs this process may run on.  Raises on unreadable topology; the
    caller treats that as 'cannot pin'."""
    sysfs = Path(sysfs)
    try:
        allowed = os.sched_getaffinity(0)
    except AttributeError:
        allowed = None
    raw = []
    for entry in sorted(sysfs.glob("cpu[0-9]*")):
        cpu = int(entry.name[3:])
        if allowed is not None and cpu not in allowed:
            continue
        topo = entry / "topology"
        core = int((topo / "core_id").read_text())
        package = int((topo / "physical_package_id").read_text())
        raw.append((cpu, core, package))
    if not raw:
        raise RuntimeError("no usable cpus found")
    by_core: dict[tuple[int, int], int] = {}
    slots = []
    for cpu, core, package in sorted(raw):
        smt = by_core.get((package, core), 0)
        by_core[(package, core)] = smt + 1
        slots.append(CpuSlot(cpu, core, package, smt))
    return slots


def _placement_order(p: ThreadPlacement, threads: int, slots: list[CpuSlot]) -> list[int]:
    cores = sorted({(s.package, s.core) for s in slots})
    if p.strategy == "compact":
        order = sorted(slots, key=lambda s: (s.package, s.core, s.smt))
    elif p.strategy == "scatter":
        # alternate packages, then cores, filling one SMT level at a time
        order = sorted(slots, key=lambda s: (s.smt, s.core, s.package))
    elif p.strategy == "balanced":
        # spread over cores, siblings adjacent once a second lap is needed
        per_core = max(1, -(-threads // len(cores)))
        order = [s for s in sorted(slots, key=lambda s: (s.package, s.core, s.smt)) if s.smt < per_core]
    else:  # explicit: threads_per_core siblings from each core in order
        order = [s for s in sorted(slots, key=lambda s: (s.package, s.core, s.smt))
                 if s.smt < p.threads_per_core]
    cpus = [s.cpu for s in order]
    if not cpus:
        cpus = [s.cpu for s in slots]
    return [cpus[i % len(cpus)] for i in range(threads)]


def apply_placement(p: ThreadPlacement, threads: int,
                    topology: list[CpuSlot] | None = None,
                    pin: bool = True) -> PlacementOutcome:
    """Best-effort pinning of the process to the CPUs the strategy selects
    for `threads` workers.  Never raises: anything that prevents pinning
    yields an 'unpinned' outcome and execution proceeds."""
    assert threads >= 1
    try:
        slots = topology if topology is not None else read_topology()
        chosen = _placement_order(p, threads, slots)
    except Exception as exc:
        return PlacementOutcome(p.strategy, threads, (), "unpinned", f"topology: {exc}")
    if pin:
        try:
            os.sched_setaffinity(0, set(chosen))
        except (AttributeError, OSError) as exc:
            return PlacementOutcome(p.strategy, threads, tuple(chosen), "unpinned", f"pin: {exc}")
    return PlacementOutcome(p.strategy, threads, tuple(chosen), "pinned" if pin else "unpinned")


@dataclass(frozen=True)
class ExperimentConfig:
    scale: int
    edgefactor: int = 16
    a: float = 0.57
    b: float = 0.19
    c: float = 0.19
    d: float = 0.05
    seed: int = 1
    mode: str = "vectorized"
    vectorized_layers: int = 2
    thread_counts: tuple[int, ...] = (1,)
    placement: ThreadPlacement = field(default_factory=ThreadPlacement)
    num_roots: int = 64
    filter_unconnected: bool = False
    out: str | None = None
    fmt: str = "csv"

    def __post_init__(self):
        assert self.mode in MODES
        assert self.num_roots >= 1
        assert len(self.thread_counts) >= 1 and min(self.thread_counts) >= 1
        assert self.fmt in ("csv", "json")

    def rmat_params(self) -> RmatParams:
        return RmatParams(self.scale, self.edgefactor, self.a, self.b, self.c, self.d, self.seed)

    def layer_policy(self) -> LayerPolicy:
        return LayerPolicy(self.vectorized_layers, self.mode)


@dataclass(frozen=True)
class RootRun:
    root: int
    time_s: float
    edges: int
    teps: float


@dataclass
class RunStats:
    """One (mode, thread count) batch: per-root timings plus aggregates."""

    config: ExperimentConfig
    mode: str
    threads: int
    placement: str
    runs: list[RootRun]
    harmonic_mean: float
    zero_teps_roots: int
    degenerate_mean: bool
    min_time: float
    max_time: float
    mean_time: float

    def as_dict(self) -> dict:
        d = asdict(self)
        d["config"]["thread_counts"] = list(self.config.thread_counts)
        return d


def harmonic_mean_teps(values, include_zeros: bool = False) -> tuple[float, int, bool]:
    """Harmonic mean with explicit zero accounting.

    Returns (mean, zero_count, degenerate).  Zeros cannot enter the formula
    (1/0), so include_zeros=True with any zero present yields (0, k, True);
    otherwise the mean is taken over the nonzero values and degenerate is
    only set when there are none."""
    vals = [float(v) for v in values]
    assert vals, "need at least one value"
    assert min(vals) >= 0.0
    zeros = sum(1 for v in vals if v == 0.0)
    if include_zeros and zeros:
        return 0.0, zeros, True
    nonzero = [v for v in vals if v > 0.0]
    if not nonzero:
        return 0.0, zeros, True
    return len(nonzero) / math.fsum(1.0 / v for v in nonzero), zeros, False


def pick_roots(g: CsrGraph, n: int, seed: int, filter_unconnected: bool = False) -> np.ndarray:
    """n distinct root ids, uniform without replacement, deterministic per
    seed.  Unconnected (degree-0) vertices stay eligible unless filtering
    is requested."""
    pool = np.arange(g.num_vertices, dtype=np.int64)
    if filter_unconnected:
        pool = pool[g.degrees() > 0]
    assert n <= len(pool), "more roots requested than eligible vertices"
    rng = np.random.default_rng(seed)
    return rng.choice(pool, size=n, replace=False)


def run_experiment(cfg: ExperimentConfig, graph: CsrGraph | None = None) -> list[RunStats]:
    """Run num_roots BFS executions per thread count and collect TEPS.

    The graph and roots are derived once from the config seed, so repeated
    invocations are identical except for wall time.  Raises RuntimeError
    with the offending report if any tree fails validation."""
    g = graph if graph is not None else build_csr(generate_rmat(cfg.rmat_params()))
    roots = pick_roots(g, cfg.num_roots, cfg.seed, cfg.filter_unconnected)
    policy = cfg.layer_policy()
    batches = []
    for threads in cfg.thread_counts:
        outcome = apply_placement(cfg.placement, threads)
        runs = []
        for root in roots.tolist():
            t0 = time.perf_counter()
            res = run_bfs(g, root, policy, threads)
            dt = time.perf_counter() - t0
            report = validate_tree(g, root, res.predecessors)
            if not report.passed:
                raise RuntimeError(f"validation failed at root {root}: {report.to_json()}")
            teps = res.traversed_edge_count / dt if res.traversed_edge_count else 0.0
            runs.append(RootRun(root, dt, res.traversed_edge_count, teps))
        hm, zeros, degenerate = harmonic_mean_teps([r.teps for r in runs])
        times = [r.time_s for r in runs]
        batches.append(RunStats(cfg, cfg.mode, threads, outcome.label, runs, hm, zeros,
                                degenerate, min(times), max(times), sum(times) / len(times)))
    return batches


CSV_COLUMNS = ("scale", "edgefactor", "seed", "mode", "threads", "placement",
               "root", "time_s", "edges", "teps")


def emit_results(stats: list[RunStats], fmt: str, path: str | Path) -> None:
    """Write detail rows plus one aggregate row per (mode, threads) batch.
    The CSV column order is fixed; JSON mirrors the in-memory structure."""
    path = Path(path)
    if fmt == "json":
        path.write_text(json.dumps({"results": [s.as_dict() for s in stats]}, indent=2) + "\n")
        return
    assert fmt == "csv"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_COLUMNS)
        for s in stats:
            cfg = s.config
            head = [cfg.scale, cfg.edgefactor, cfg.seed, s.mode, s.threads, s.placement]
            for r in s.runs:
                w.writerow(head + [r.root, repr(r.time_s), r.edges, repr(r.teps)])
            total_edges = sum(r.edges for r in s.runs)
            w.writerow(head + ["all", repr(s.mean_time), total_edges, repr(s.harmonic_mean)])
