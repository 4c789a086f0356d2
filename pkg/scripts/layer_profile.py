#!/usr/bin/env python3
"""Print the per-layer profile of one BFS: frontier size, edges examined,
vertices discovered, and the cumulative edge share.

Example:
    python3 scripts/layer_profile.py --scale 16 --root auto
"""

import argparse

import numpy as np

from lanebfs import LayerPolicy, RmatParams, build_csr, generate_rmat, run_bfs


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--scale", type=int, default=16)
    ap.add_argument("--edgefactor", type=int, default=16)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--mode", default="serial")
    ap.add_argument("--root", default="auto",
                    help="vertex id, or `auto` for the first connected vertex")
    args = ap.parse_args()

    g = build_csr(generate_rmat(RmatParams(scale=args.scale, edgefactor=args.edgefactor,
                                           seed=args.seed)))
    if args.root == "auto":
        root = int(np.argmax(g.degrees() > 0))
    else:
        root = int(args.root)

    res = run_bfs(g, root, LayerPolicy(mode=args.mode))
    total = res.traversed_edge_count or 1
    reached = 1 + sum(layer.discovered for layer in res.layers)
    print(f"scale={args.scale} edgefactor={args.edgefactor} root={root} "
          f"mode={args.mode} reached={reached}")
    print(f"{'layer':>5} {'frontier':>10} {'edges':>12} {'discovered':>10} {'cum_edge%':>9}")
    cum = 0
    for i, layer in enumerate(res.layers):
        cum += layer.edges
        print(f"{i:>5} {layer.input:>10} {layer.edges:>12} {layer.discovered:>10} "
              f"{100.0 * cum / total:>8.2f}%")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
