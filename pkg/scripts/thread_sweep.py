#!/usr/bin/env python3
"""Sweep BFS variants across thread counts and placement strategies on one
graph and write the full result table.

Example:
    python3 scripts/thread_sweep.py --scale 14 --threads 1,2,4,max --out sweep.csv
"""

import sys

from lanebfs.cli import main

if __name__ == "__main__":
    raise SystemExit(main(["sweep", *sys.argv[1:]]))
