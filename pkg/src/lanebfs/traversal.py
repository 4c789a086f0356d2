"""Top-down BFS variants over a CSR graph, from a serial oracle to a
bitmap-frontier form whose first layers run through 16-wide lane operations.

All variants produce a predecessor array.  The parallel bitmap variants
write frontier bits without atomics, so concurrent read-modify-writes of a
word can lose bits; a restoration pass after each layer finds every lost
vertex through its negative predecessor mark and repairs the bitmaps.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bitmap import BITS_PER_WORD, Bitmap, swap_and_clear
from .lane import LANE_WIDTH, LaneVector, NumpyBackend, partition_run

# Larger than any vertex id (scale is capped at 30) and positive, so it can
# never collide with a parent value or a negative mid-layer mark.
SENTINEL = 0x7FFFFFFF

# Frontier words handed to one exploration task at a time.
DEFAULT_WORD_CHUNK = 64

MODES = ("serial", "parallel_naive", "parallel_restored", "vectorized")


class PredecessorArray:
    """Per-vertex parent ids, sentinel for unreached vertices.

    Storage is padded to a whole number of 32-entry words (padding holds the
    sentinel) so 16-lane gathers aligned to any word never run off the end.
    ``p`` is the exact-length view.
    """

    __slots__ = ("num_vertices", "storage")

    infinity_sentinel = SENTINEL

    def __init__(self, num_vertices: int):
        assert num_vertices >= 1
        padded = (num_vertices + BITS_PER_WORD - 1) // BITS_PER_WORD * BITS_PER_WORD
        self.num_vertices = num_vertices
        self.storage = np.full(padded, SENTINEL, dtype=np.int32)

    @property
    def p(self) -> np.ndarray:
        return self.storage[:self.num_vertices]


@dataclass(frozen=True)
class LayerPolicy:
    """How a traversal runs: which variant, and for the lane variant how
    many leading layers go through the 16-wide path."""

    vectorized_layers: int = 2
    mode: str = "vectorized"

    def __post_init__(self):
        assert self.vectorized_layers >= 0
        assert self.mode in MODES


@dataclass(frozen=True)
class LayerStats:
    input: int       # frontier vertices entering the layer
    edges: int       # adjacency entries examined
    discovered: int  # vertices first reached in this layer


@dataclass
class BfsResult:
    predecessors: PredecessorArray
    layers: list[LayerStats] = field(default_factory=list)
    traversed_edge_count: int = 0


def bfs_serial(g, s: int) -> BfsResult:
    """Queue BFS, one vertex at a time.  This is the oracle every parallel
    variant is judged against, so it stays on plain Python lists and shares
    no frontier machinery with them."""
    assert 0 <= s < g.num_vertices
    adj = g.adjacency_lists()
    p = [SENTINEL] * g.num_vertices
    p[s] = s
    frontier = [s]
    layers = []
    while frontier:
        edges = 0
        discovered = []
        for u in frontier:
            neighbors = adj[u]
            edges += len(neighbors)
            for v in neighbors:
                if p[v] == SENTINEL:
                    p[v] = u
                    discovered.append(v)
        layers.append(LayerStats(len(frontier), edges, len(discovered)))
        frontier = discovered
    pred = PredecessorArray(g.num_vertices)
    pred.p[:] = p
    return BfsResult(pred, layers, sum(l.edges for l in layers))


def _frontier_neighbors(g, verts: np.ndarray) -> tuple[np.ndarray, np.ndarray, int]:
    """All adjacency entries of the given frontier vertices, plus the owner
    of each entry and the number of entries examined."""
    cs = g.colstarts
    starts = cs[verts]
    counts = cs[verts + 1] - starts
    total = int(counts.sum())
    if total == 0:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty, 0
    pos = np.arange(total, dtype=np.int64)
    pos += np.repeat(starts - np.concatenate(([0], np.cumsum(counts)[:-1])), counts)
    return g.rows[pos].astype(np.int64), np.repeat(verts, counts), total


def _run_tasks(pool: ThreadPoolExecutor | None, fn, chunks: list) -> list:
    if pool is None or len(chunks) <= 1:
        return [fn(c) for c in chunks]
    return list(pool.map(fn, chunks))


def bfs_parallel_naive(g, s: int, threads: int = 1) -> BfsResult:
    """Layer-parallel BFS with flag-array frontiers (no bitmaps, so no bit
    races).  Concurrent threads may write different valid parents for the
    same vertex; the last one wins, which is benign because every writer is
    a frontier vertex of the same layer."""
    assert 0 <= s < g.num_vertices and threads >= 1
    n = g.num_vertices
    pred = PredecessorArray(n)
    pred.p[s] = s
    visited = np.zeros(n, dtype=np.uint8)
    visited[s] = 1
    frontier = np.array([s], dtype=np.int64)
    layers: list[LayerStats] = []
    total_edges = 0

    def explore(verts: np.ndarray) -> tuple[np.ndarray, int]:
        neigh, parents, examined = _frontier_neighbors(g, verts)
        keep = visited[neigh] == 0
        candidates = neigh[keep]
        pred.p[candidates] = parents[keep]
        return candidates, examined

    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        while len(frontier):
            chunks = np.array_split(frontier, threads) if threads > 1 else [frontier]
            results = _run_tasks(pool, explore, [c for c in chunks if len(c)])
            # barrier: merge candidate lists, mark visited once per layer
            edges = sum(r[1] for r in results)
            nxt = np.unique(np.concatenate([r[0] for r in results])) if results else frontier[:0]
            visited[nxt] = 1
            layers.append(LayerStats(len(frontier), edges, len(nxt)))
            total_edges += edges
            frontier = nxt
    finally:
        if pool is not None:
            pool.shutdown()
    return BfsResult(pred, layers, total_edges)


def _words_to_vertices(bm: Bitmap, word_idx: np.ndarray) -> np.ndarray:
    w = bm.words[word_idx]
    bits = np.unpackbits(w.view(np.uint8), bitorder="little").reshape(-1, BITS_PER_WORD)
    rows, offs = np.nonzero(bits)
    return word_idx[rows] * BITS_PER_WORD + offs


def _explore_verts(g, verts: np.ndarray, vis: Bitmap, out: Bitmap, pred: PredecessorArray) -> tuple[int, int]:
    """One exploration task: filter the frontier's neighbors against vis and
    out, write negative predecessor marks, then OR the new bits into the out
    words with a plain gather/modify/scatter.  The scatter is last-writer-
    wins, so bits can be lost here; restoration recovers them from p."""
    n = g.num_vertices
    neigh, parents, examined = _frontier_neighbors(g, verts)
    if examined == 0:
        return 0, 0
    vw = neigh >> 5
    bit = np.uint32(1) << (neigh & 31).astype(np.uint32)
    seen = (vis.words[vw] | out.words[vw]) & bit
    keep = seen == 0
    new_v = neigh[keep]
    # marks first: any out bit that becomes visible implies its mark exists
    pred.p[new_v] = parents[keep] - n
    kw = vw[keep]
    out.words[kw] = out.words[kw] | bit[keep]
    return len(verts), examined


def restore_layer(out: Bitmap, vis: Bitmap, p: PredecessorArray, nodes: int) -> int:
    """Repair the out bitmap after an unsynchronized exploration step.

    Scans every nonzero out-word and, within it, every one of the 32 bit
    positions: lost bits are found through negative predecessor marks, not
    through the bits that survived.  For each marked vertex the out and vis
    bits are set and the mark is lifted back to a parent id.  Returns how
    many vertices this layer discovered."""
    return _restore_words(out, vis, p, nodes, out.nonzero_words())


def _restore_words(out: Bitmap, vis: Bitmap, p: PredecessorArray, nodes: int, words) -> int:
    st = p.storage
    total = 0
    for w in words:
        w = int(w)
        base = w * BITS_PER_WORD
        seg = st[base:base + BITS_PER_WORD].tolist()
        setbits = 0
        for off, pv in enumerate(seg):
            if pv < 0:
                st[base + off] = pv + nodes
                setbits |= 1 << off
                total += 1
        if setbits:
            out.words[w] |= np.uint32(setbits)
            vis.words[w] |= np.uint32(setbits)
    return total


_IOTA_LO = LaneVector.from_ints(range(LANE_WIDTH))
_IOTA_HI = LaneVector.from_ints(range(LANE_WIDTH, 2 * LANE_WIDTH))


def restore_layer_vectorized(out: Bitmap, vis: Bitmap, p: PredecessorArray, nodes: int,
                             backend=None) -> int:
    """Same contract as restore_layer, but each nonzero word is processed
    as two 16-lane passes (bit offsets 0..15, then 16..31): gather the 32
    candidate p values, mask on the sign bit, and apply masked updates."""
    be = backend or NumpyBackend()
    sign = be.broadcast(-(1 << 31))
    one = be.broadcast(1)
    lift = be.broadcast(nodes)
    halves = (
        (_IOTA_LO, be.shift_left_variable(one, _IOTA_LO)),
        (_IOTA_HI, be.shift_left_variable(one, _IOTA_HI)),
    )
    total = 0
    for w in out.nonzero_words():
        base = int(w) * BITS_PER_WORD
        base_vec = be.broadcast(base)
        for iota, bits in halves:
            candidates = be.add_lanes(base_vec, iota)
            pv = be.gather(p.storage, candidates)
            neg = be.test_nonzero_and(pv, sign)
            if not neg.any():
                continue
            setbits = be.reduce_or(bits, neg) & 0xFFFFFFFF
            out.words[w] |= np.uint32(setbits)
            vis.words[w] |= np.uint32(setbits)
            be.scatter(p.storage, candidates, be.add_lanes(pv, lift), neg)
            total += neg.count()
    return total


def _restore_batched(out: Bitmap, vis: Bitmap, p: PredecessorArray, nodes: int) -> int:
    """Whole-layer form of the two-half lane restoration: all candidate
    lanes of all nonzero words in one shot.  Output is bit-identical to
    restore_layer / restore_layer_vectorized."""
    ws = out.nonzero_words().astype(np.int64)
    if len(ws) == 0:
        return 0
    candidates = (ws[:, None] * BITS_PER_WORD + np.arange(BITS_PER_WORD)).reshape(-1)
    pv = p.storage[candidates]
    neg = pv < 0
    if not neg.any():
        return 0
    lane_bits = np.uint32(1) << np.arange(BITS_PER_WORD, dtype=np.uint32)
    bits = np.where(neg.reshape(-1, BITS_PER_WORD), lane_bits[None, :], np.uint32(0))
    setw = np.bitwise_or.reduce(bits, axis=1)
    out.words[ws] |= setw
    vis.words[ws] |= setw
    p.storage[candidates[neg]] += np.int32(nodes)
    return int(neg.sum())


def _explore_scalar_range(g, u: int, vis: Bitmap, out: Bitmap, p: PredecessorArray,
                          lo: int, hi: int) -> int:
    """Scalar inner loop over rows[lo:hi] for frontier vertex u."""
    nodes = g.num_vertices
    rows = g.rows
    count = 0
    for i in range(lo, hi):
        v = int(rows[i])
        if not vis.test_bit(v) and not out.test_bit(v):
            p.storage[v] = u - nodes
            out.words[v // BITS_PER_WORD] |= np.uint32(1) << np.uint32(v % BITS_PER_WORD)
            count += 1
    return count


def explore_adjacency_vectorized(g, u: int, vis: Bitmap, out: Bitmap, p: PredecessorArray,
                                 backend=None) -> int:
    """Explore adj(u) sixteen neighbors at a time.

    Whole 16-lane chunks run the lane pipeline: load neighbors, split each
    id into word and offset, gather the vis and out words, build per-lane
    bits, filter out lanes whose vertex is already visited or queued, then
    masked-scatter the negative predecessor marks and the updated out
    words.  Lanes sharing a word each OR into their own gathered copy, so
    the lane-order scatter can drop bits; the marks make that loss
    repairable.  Peel and remainder fall back to the scalar loop."""
    be = backend or NumpyBackend()
    start, end = int(g.colstarts[u]), int(g.colstarts[u + 1])
    run = partition_run(start, end)
    mark = be.broadcast(u - g.num_vertices)
    one = be.broadcast(1)
    zero = be.broadcast(0)
    count = _explore_scalar_range(g, u, vis, out, p, *run.peel)
    for chunk in range(run.body[0], run.body[1], LANE_WIDTH):
        be.prefetch_hint(g.rows, chunk + LANE_WIDTH)
        neigh = be.load_contiguous(g.rows, chunk)
        vword = be.div_lanes(neigh, BITS_PER_WORD)
        vbits = be.rem_lanes(neigh, BITS_PER_WORD)
        vis_words = be.gather(vis.words, vword)
        out_words = be.gather(out.words, vword)
        bits = be.shift_left_variable(one, vbits)
        seen = be.mask_or(be.test_nonzero_and(vis_words, bits),
                          be.test_nonzero_and(out_words, bits))
        fresh = be.mask_not(seen)
        if fresh.any():
            be.scatter(p.storage, neigh, mark, fresh)
            new_words = be.masked_or_lanes(zero, fresh, out_words, bits)
            be.scatter(out.words, vword, new_words, fresh)
            count += fresh.count()
    count += _explore_scalar_range(g, u, vis, out, p, *run.remainder)
    return count


def _bitmap_bfs(g, s: int, threads: int, vectorized_layers: int, backend, chunked: bool,
                chunk_words: int) -> BfsResult:
    """Shared skeleton of the bitmap-frontier variants.  Layers with index
    below vectorized_layers explore and restore through the lane path,
    the rest through the scalar path.  Every layer ends with a barrier,
    a restoration pass, and swap_and_clear."""
    assert 0 <= s < g.num_vertices and threads >= 1
    n = g.num_vertices
    pred = PredecessorArray(n)
    pred.p[s] = s
    vis, inb, outb = Bitmap(n), Bitmap(n), Bitmap(n)
    vis.set_bit(s)
    inb.set_bit(s)
    layers: list[LayerStats] = []
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None

    def explore_scalar(word_idx: np.ndarray) -> tuple[int, int]:
        return _explore_verts(g, _words_to_vertices(inb, word_idx), vis, outb, pred)

    def explore_lanes(word_idx: np.ndarray) -> tuple[int, int]:
        verts = _words_to_vertices(inb, word_idx)
        if chunked:
            examined = 0
            for u in verts.tolist():
                explore_adjacency_vectorized(g, u, vis, outb, pred, backend)
                examined += g.degree(u)
            return len(verts), examined
        return _explore_verts(g, verts, vis, outb, pred)

    try:
        layer = 0
        while inb.any_set():
            vectorized = layer < vectorized_layers
            words = inb.nonzero_words()
            tasks = [words[i:i + chunk_words] for i in range(0, len(words), chunk_words)]
            results = _run_tasks(pool, explore_lanes if vectorized else explore_scalar, tasks)
            frontier_count = sum(r[0] for r in results)
            edges = sum(r[1] for r in results)
            # barrier reached: every exploration task has finished
            if vectorized:
                if chunked:
                    discovered = restore_layer_vectorized(outb, vis, pred, n, backend)
                else:
                    discovered = _restore_batched(outb, vis, pred, n)
            else:
                dirty = outb.nonzero_words()
                parts = [a for a in np.array_split(dirty, threads) if len(a)]
                discovered = sum(_run_tasks(pool, lambda ws: _restore_words(outb, vis, pred, n, ws), parts))
            layers.append(LayerStats(frontier_count, edges, discovered))
            inb, outb = swap_and_clear(inb, outb)
            layer += 1
    finally:
        if pool is not None:
            pool.shutdown()
    return BfsResult(pred, layers, sum(l.edges for l in layers))


def bfs_parallel_restored(g, s: int, threads: int = 1, policy: LayerPolicy | None = None,
                          chunk_words: int = DEFAULT_WORD_CHUNK) -> BfsResult:
    """Bitmap-frontier BFS without atomics: unsynchronized out-word updates
    plus a per-layer restoration pass."""
    return _bitmap_bfs(g, s, threads, 0, None, False, chunk_words)


def bfs_vectorized(g, s: int, threads: int = 1, policy: LayerPolicy | None = None,
                   backend=None, chunked: bool = False,
                   chunk_words: int = DEFAULT_WORD_CHUNK) -> BfsResult:
    """bfs_parallel_restored with the first policy.vectorized_layers layers
    explored and restored through the 16-lane path.

    By default the lane dataflow is applied to the whole layer at once
    (identical operations, batched); chunked=True runs the literal
    16-neighbor-chunk pipeline per frontier vertex instead, which is what
    the equivalence tests exercise."""
    policy = policy or LayerPolicy()
    return _bitmap_bfs(g, s, threads, policy.vectorized_layers, backend, chunked, chunk_words)


def run_bfs(g, s: int, policy: LayerPolicy | None = None, threads: int = 1,
            backend=None, chunked: bool = False) -> BfsResult:
    policy = policy or LayerPolicy()
    if policy.mode == "serial":
        return bfs_serial(g, s)
    if policy.mode == "parallel_naive":
        return bfs_parallel_naive(g, s, threads)
    if policy.mode == "parallel_restored":
        return bfs_parallel_restored(g, s, threads, policy)
    return bfs_vectorized(g, s, threads, policy, backend=backend, chunked=chunked)
