"""Command line driver: generate graphs, run rooted BFS batches, sweep
thread counts and placements, validate trees."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .graph import build_csr, generate_rmat, read_edge_list, write_edge_list
from .harness import (
    ExperimentConfig,
    emit_results,
    pick_roots,
    resolve_placement,
    run_experiment,
)
from .traversal import MODES, LayerPolicy, run_bfs
from .validate import validate_tree


def _parse_threads(text: str) -> tuple[int, ...]:
    counts = []
    for tok in text.split(","):
        tok = tok.strip()
        counts.append(os.cpu_count() or 1 if tok == "max" else int(tok))
    return tuple(counts)


def _add_graph_args(sp, with_graph_file=True):
    sp.add_argument("--scale", type=int, default=10)
    sp.add_argument("--edgefactor", type=int, default=16)
    sp.add_argument("--seed", type=int, default=1)
    if with_graph_file:
        sp.add_argument("--graph", help="edge-list file written by `generate` (overrides --scale/--edgefactor)")


def _add_run_args(sp):
    sp.add_argument("--mode", default="vectorized", choices=MODES)
    sp.add_argument("--threads", default="1", help="comma list, `max` allowed (e.g. 1,2,4,max)")
    sp.add_argument("--vectorized-layers", type=int, default=2)
    sp.add_argument("--placement", default=None,
                    help="compact | scatter | balanced | explicit:N (default: env, then compact)")
    sp.add_argument("--roots", type=int, default=64)
    sp.add_argument("--filter-unconnected", action="store_true")
    sp.add_argument("--out", default=None)
    sp.add_argument("--format", default="csv", choices=("csv", "json"), dest="fmt")


def _load_graph(args):
    if getattr(args, "graph", None):
        edges, params = read_edge_list(args.graph)
        return build_csr(edges), params
    from .graph import RmatParams

    params = RmatParams(scale=args.scale, edgefactor=args.edgefactor, seed=args.seed)
    return build_csr(generate_rmat(params)), params


def _make_config(args, params, threads) -> ExperimentConfig:
    return ExperimentConfig(
        scale=params.scale, edgefactor=params.edgefactor,
        a=params.a, b=params.b, c=params.c, d=params.d, seed=params.seed,
        mode=args.mode, vectorized_layers=args.vectorized_layers,
        thread_counts=threads, placement=resolve_placement(args.placement),
        num_roots=args.roots, filter_unconnected=args.filter_unconnected,
        out=args.out, fmt=args.fmt)


def cmd_generate(args) -> int:
    from .graph import RmatParams

    params = RmatParams(scale=args.scale, edgefactor=args.edgefactor, seed=args.seed)
    write_edge_list(args.out, generate_rmat(params), params)
    print(f"wrote {params.num_edges} edge pairs to {args.out}")
    return 0


def cmd_run(args) -> int:
    g, params = _load_graph(args)
    cfg = _make_config(args, params, _parse_threads(args.threads))
    stats = run_experiment(cfg, graph=g)
    out = args.out or f"results.{args.fmt}"
    emit_results(stats, args.fmt, out)
    for s in stats:
        print(f"mode={s.mode} threads={s.threads} placement={s.placement} "
              f"hm_teps={s.harmonic_mean:.6e} zero_roots={s.zero_teps_roots}")
    print(f"wrote {out}")
    return 0


def cmd_sweep(args) -> int:
    g, params = _load_graph(args)
    threads = _parse_threads(args.threads)
    all_stats = []
    for mode in args.modes.split(","):
        for placement in args.placements.split(","):
            cfg_args = argparse.Namespace(**vars(args))
            cfg_args.mode = mode.strip()
            cfg_args.placement = placement.strip()
            cfg = _make_config(cfg_args, params, threads)
            all_stats.extend(run_experiment(cfg, graph=g))
    out = args.out or f"sweep.{args.fmt}"
    emit_results(all_stats, args.fmt, out)
    for s in all_stats:
        print(f"mode={s.mode} threads={s.threads} placement={s.placement} "
              f"hm_teps={s.harmonic_mean:.6e}")
    print(f"wrote {out}")
    return 0


def cmd_validate(args) -> int:
    g, params = _load_graph(args)
    roots = pick_roots(g, args.roots, params.seed, args.filter_unconnected)
    policy = LayerPolicy(args.vectorized_layers, args.mode)
    threads = _parse_threads(args.threads)[0]
    failures = 0
    for root in roots.tolist():
        res = run_bfs(g, root, policy, threads)
        report = validate_tree(g, root, res.predecessors)
        if not report.passed:
            failures += 1
            print(f"root {root}: FAIL {report.to_json()}")
    verdict = {"roots": len(roots), "failures": failures, "mode": args.mode}
    print(json.dumps(verdict))
    return 1 if failures else 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="lanebfs")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write an edge-list file plus JSON sidecar")
    _add_graph_args(g, with_graph_file=False)
    g.add_argument("--out", required=True)
    g.set_defaults(fn=cmd_generate)

    r = sub.add_parser("run", help="rooted BFS batch with TEPS statistics")
    _add_graph_args(r)
    _add_run_args(r)
    r.set_defaults(fn=cmd_run)

    s = sub.add_parser("sweep", help="cross modes, thread counts and placements")
    _add_graph_args(s)
    _add_run_args(s)
    s.add_argument("--modes", default="parallel_naive,parallel_restored,vectorized")
    s.add_argument("--placements", default="compact,scatter,balanced")
    s.set_defaults(fn=cmd_sweep)

    v = sub.add_parser("validate", help="run a variant and validate every tree")
    _add_graph_args(v)
    _add_run_args(v)
    v.set_defaults(fn=cmd_validate)

    args = ap.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
