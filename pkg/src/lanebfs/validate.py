"""Soft correctness checks of a BFS parent tree against its graph.

The five checks are a reconstruction of what a spanning-tree validator for
this kind of benchmark conventionally verifies; they are deliberately
independent of the traversal code (levels come from pointer-chasing the
parent array, never from re-running a BFS).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .traversal import SENTINEL, PredecessorArray

_OK, _PSEUDO, _CYCLE, _BROKEN = 1, 2, 3, 4


@dataclass
class ValidationReport:
    """Outcome of the five checks; details hold the first offending vertex
    per failed check."""

    root_self_parent: bool
    reachability_closure: bool
    tree_edge_existence: bool
    level_consistency: bool
    cycle_freedom: bool
    details: dict[str, int] = field(default_factory=dict)

    CHECKS = ("root_self_parent", "reachability_closure", "tree_edge_existence",
              "level_consistency", "cycle_freedom")

    @property
    def passed(self) -> bool:
        return all(getattr(self, name) for name in self.CHECKS)

    def as_dict(self) -> dict:
        d = {name: getattr(self, name) for name in self.CHECKS}
        d["passed"] = self.passed
        d["details"] = dict(self.details)
        return d

    def to_json(self) -> str:
        return json.dumps(self.as_dict())


def validate_tree(g, s: int, pred: PredecessorArray) -> ValidationReport:
    """Evaluate five properties of a final parent array:

    1. the root is its own parent;
    2. reachability closure: the parent of a reached vertex is reached;
    3. every non-root tree edge (p[v], v) exists in the graph;
    4. level consistency: chasing parents assigns every reached vertex a
       well-defined level, i.e. no chase runs into a cycle;
    5. cycle freedom: every chase terminates at the root within
       num_vertices steps (a self-parented vertex other than the root
       strands its subtree even though no proper cycle exists).

    Failures are report entries, never exceptions.
    """
    n = g.num_vertices
    assert 0 <= s < n
    p = pred.p.tolist()
    details: dict[str, int] = {}

    ok_root = p[s] == s
    if not ok_root:
        details["root_self_parent"] = s

    reached = [v for v in range(n) if p[v] != SENTINEL]

    ok_closure = True
    for v in reached:
        u = p[v]
        if not (0 <= u < n) or p[u] == SENTINEL:
            ok_closure = False
            details["reachability_closure"] = v
            break

    ok_edges = True
    adj = g.adjacency_lists()
    children: dict[int, list[int]] = {}
    for v in reached:
        if v != s:
            children.setdefault(p[v], []).append(v)
    for u in sorted(children):
        if not (0 <= u < n):
            ok_edges = False
            details["tree_edge_existence"] = min(children[u])
            break
        present = set(adj[u])
        bad = [v for v in children[u] if v not in present]
        if bad:
            ok_edges = False
            details["tree_edge_existence"] = min(bad)
            break

    # One memoized chase per vertex classifies it: terminates at the root
    # (level defined), at a self-parented pseudo-root, in a cycle, or falls
    # off the reached set.
    status = [0] * n
    level = [-1] * n
    for v in reached:
        if status[v]:
            continue
        path = []
        on_path = set()
        u = v
        while True:
            if u == s:
                terminal, base = _OK, 0
                break
            if status[u]:
                terminal, base = status[u], level[u]
                break
            if u in on_path:
                terminal, base = _CYCLE, -1
                break
            parent = p[u]
            if not (0 <= parent < n) or parent == SENTINEL:
                terminal, base = _BROKEN, -1
                break
            if parent == u:
                terminal, base = _PSEUDO, -1
                path.append(u)
                on_path.add(u)
                break
            path.append(u)
            on_path.add(u)
            u = parent
        if terminal == _OK:
            lv = base
            for node in reversed(path):
                lv += 1
                level[node] = lv
                status[node] = _OK
        else:
            for node in path:
                status[node] = terminal

    ok_levels = True
    ok_acyclic = True
    for v in reached:
        st = status[v] if v != s else _OK
        if st in (_CYCLE, _BROKEN) and ok_levels:
            ok_levels = False
            details["level_consistency"] = v
        if st != _OK and ok_acyclic:
            ok_acyclic = False
            details["cycle_freedom"] = v

    return ValidationReport(ok_root, ok_closure, ok_edges, ok_levels, ok_acyclic, details)


def levels_from_parents(p: np.ndarray, s: int) -> np.ndarray:
    """Per-vertex BFS level implied by a parent array, -1 where undefined.

    Whole-array frontier relaxation: a vertex gets level k+1 once its
    parent has level k.  Used by tests to compare level structures of
    different traversals in bulk; the validator itself chases pointers."""
    p = np.asarray(p, dtype=np.int64)
    n = len(p)
    lev = np.full(n, -1, dtype=np.int64)
    if p[s] == s:
        lev[s] = 0
    valid = (p >= 0) & (p < n) & (p != SENTINEL)
    safe_parent = np.where(valid, p, 0)
    pending = valid & (lev < 0)
    while True:
        gain = pending & (lev[safe_parent] >= 0)
        if not gain.any():
            return lev
        lev[gain] = lev[safe_parent[gain]] + 1
        pending &= ~gain
