"""Shared test fixtures: small graph builders and the parent-mutation
catalog used to exercise the validator."""

import numpy as np

from lanebfs.graph import EdgeList, RmatParams, build_csr, generate_rmat
from lanebfs.traversal import SENTINEL


def graph_from_pairs(pairs, n, symmetrize=True, dedup=True):
    arr = np.array(pairs, dtype=np.uint32).reshape(-1, 2)
    return build_csr(EdgeList(arr[:, 0].copy(), arr[:, 1].copy(), n), symmetrize, dedup)


def path_graph(n):
    return graph_from_pairs([(i, i + 1) for i in range(n - 1)], n)


def star_graph(n):
    return graph_from_pairs([(0, i) for i in range(1, n)], n)


def clique_graph(n):
    return graph_from_pairs([(i, j) for i in range(n) for j in range(i + 1, n)], n)


def disconnected_graph(k=6):
    # two cliques with no edges between them
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    pairs += [(k + i, k + j) for i in range(k) for j in range(i + 1, k)]
    return graph_from_pairs(pairs, 2 * k)


def empty_graph(n=5):
    return build_csr(EdgeList(np.empty(0, np.uint32), np.empty(0, np.uint32), n))


def rmat_graph(scale, edgefactor=16, seed=1):
    return build_csr(generate_rmat(RmatParams(scale=scale, edgefactor=edgefactor, seed=seed)))


def adversarial_graphs():
    return [
        ("path", path_graph(33)),
        ("star", star_graph(101)),
        ("clique", clique_graph(24)),
        ("disconnected", disconnected_graph(8)),
        ("empty", empty_graph(7)),
    ]


# --- mutation catalog -------------------------------------------------------
# Each mutator perturbs a copy of a valid parent array so that exactly the
# named check must flag it (other checks may co-flag).  Returns None when the
# tree offers no vertex with the required shape.

def _reached(p, s):
    return [v for v in range(len(p)) if p[v] != SENTINEL and v != s]


def mutate_root(rng, g, s, p):
    """Reparent the root: root_self_parent must fail."""
    q = list(p)
    others = _reached(p, s)
    q[s] = int(rng.choice(others)) if others else (s + 1) % len(p)
    return q


def mutate_unreached_parent(rng, g, s, p):
    """Point a reached vertex at an unreached one: reachability_closure
    must fail."""
    unreached = [v for v in range(len(p)) if p[v] == SENTINEL]
    victims = _reached(p, s)
    if not unreached or not victims:
        return None
    q = list(p)
    q[int(rng.choice(victims))] = int(rng.choice(unreached))
    return q


def mutate_nonadjacent_parent(rng, g, s, p):
    """Reparent a vertex to a reached non-neighbor with a defined level:
    tree_edge_existence must fail, chases stay terminating."""
    victims = _reached(p, s)
    rng.shuffle(victims)
    adj = g.adjacency_lists()
    reached_set = {v for v in range(len(p)) if p[v] != SENTINEL}
    for v in victims:
        # candidate parents: reached, not adjacent to v, not v itself, and
        # not in v's own subtree (avoid creating a cycle)
        below = _subtree(p, v)
        options = [u for u in reached_set if u not in below and u != v and v not in adj[u]]
        if options:
            q = list(p)
            q[v] = int(rng.choice(sorted(options)))
            return q
    return None


def mutate_two_cycle(rng, g, s, p):
    """Make two adjacent reached vertices parent each other:
    level_consistency must fail (their levels become undefined)."""
    adj = g.adjacency_lists()
    victims = _reached(p, s)
    rng.shuffle(victims)
    for v in victims:
        mates = [u for u in adj[v] if u != s and p[u] != SENTINEL]
        if mates:
            u = int(rng.choice(sorted(mates)))
            q = list(p)
            q[v], q[u] = u, v
            return q
    return None


def mutate_pseudo_root(rng, g, s, p):
    """Self-parent a non-root vertex: cycle_freedom must fail while
    level_consistency still passes (no proper cycle appears)."""
    victims = _reached(p, s)
    if not victims:
        return None
    v = int(rng.choice(victims))
    q = list(p)
    q[v] = v
    return q


def _subtree(p, v):
    children = {}
    for w in range(len(p)):
        if p[w] != SENTINEL and w != p[w]:
            children.setdefault(p[w], []).append(w)
    seen = {v}
    stack = [v]
    while stack:
        for w in children.get(stack.pop(), []):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


MUTATIONS = [
    ("root_self_parent", mutate_root),
    ("reachability_closure", mutate_unreached_parent),
    ("tree_edge_existence", mutate_nonadjacent_parent),
    ("level_consistency", mutate_two_cycle),
    ("cycle_freedom", mutate_pseudo_root),
]
