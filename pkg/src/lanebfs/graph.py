"""Scale-free graph generation and the CSR structure the traversals run on."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

# Vertex ids live in signed 32-bit lanes and must stay below the sentinel,
# so the generator rejects scales past 30.
MAX_SCALE = 30


@dataclass(frozen=True)
class RmatParams:
    """Recursive-matrix generator parameters.

    Quadrant probabilities default to the standard scale-free setting
    (0.57, 0.19, 0.19, 0.05).  ``scale`` is the vertex-count exponent and
    ``edgefactor`` the generated-pairs-per-vertex multiplier.
    """

    scale: int
    edgefactor: int = 16
    a: float = 0.57
    b: float = 0.19
    c: float = 0.19
    d: float = 0.05
    seed: int = 1

    def __post_init__(self):
        assert 1 <= self.scale <= MAX_SCALE
        assert self.edgefactor >= 1
        assert min(self.a, self.b, self.c, self.d) >= 0.0
        assert abs(self.a + self.b + self.c + self.d - 1.0) <= 1e-9

    @property
    def num_vertices(self) -> int:
        return 1 << self.scale

    @property
    def num_edges(self) -> int:
        return (1 << self.scale) * self.edgefactor


@dataclass
class EdgeList:
    """Raw generator output: parallel endpoint arrays, possibly with
    self-loops and repeated pairs."""

    src: np.ndarray
    dst: np.ndarray
    num_vertices: int

    def __post_init__(self):
        assert self.src.shape == self.dst.shape
        if len(self.src):
            assert int(self.src.max()) < self.num_vertices
            assert int(self.dst.max()) < self.num_vertices

    @property
    def edge_count(self) -> int:
        return len(self.src)


def generate_rmat(p: RmatParams) -> EdgeList:
    """Sample 2^scale * edgefactor endpoint pairs from the recursive-matrix
    distribution.  Each of the scale address bits picks a quadrant
    independently with probabilities (a, b, c, d); deterministic per seed."""
    rng = np.random.default_rng(p.seed)
    m = p.num_edges
    ab = p.a + p.b
    # conditional probabilities of descending into the right half
    a_norm = p.a / ab if ab > 0 else 0.0
    c_norm = p.c / (p.c + p.d) if (p.c + p.d) > 0 else 0.0
    src = np.zeros(m, dtype=np.uint32)
    dst = np.zeros(m, dtype=np.uint32)
    for bit in range(p.scale):
        ii = rng.random(m) > ab
        jj = rng.random(m) > np.where(ii, c_norm, a_norm)
        src |= ii.astype(np.uint32) << np.uint32(bit)
        dst |= jj.astype(np.uint32) << np.uint32(bit)
    return EdgeList(src, dst, p.num_vertices)


def _aligned_i32(n: int) -> np.ndarray:
    # 64-byte alignment is a locality hint for wide loads, not a correctness
    # requirement anywhere.
    raw = np.empty(n * 4 + 64, dtype=np.uint8)
    off = (-raw.ctypes.data) % 64
    return raw[off:off + n * 4].view(np.int32)


class CsrGraph:
    """Immutable adjacency in compressed sparse rows.

    adjacency of u = rows[colstarts[u] : colstarts[u+1]]
    """

    __slots__ = ("num_vertices", "rows", "colstarts", "_adj")

    def __init__(self, num_vertices: int, rows: np.ndarray, colstarts: np.ndarray):
        assert colstarts[0] == 0 and colstarts[-1] == len(rows)
        assert len(colstarts) == num_vertices + 1
        self.num_vertices = num_vertices
        self.rows = rows
        self.colstarts = colstarts
        self._adj = None

    @property
    def num_edges(self) -> int:
        return len(self.rows)

    def degree(self, u: int) -> int:
        assert 0 <= u < self.num_vertices
        return int(self.colstarts[u + 1] - self.colstarts[u])

    def degrees(self) -> np.ndarray:
        return np.diff(self.colstarts)

    def adjacency(self, u: int) -> np.ndarray:
        assert 0 <= u < self.num_vertices
        return self.rows[self.colstarts[u]:self.colstarts[u + 1]]

    def adjacency_lists(self) -> list[list[int]]:
        """Plain Python lists-of-lists view, built once and cached.  The
        serial traversal and the validator use this instead of array
        slicing so they do not share hot-path code with the parallel
        variants."""
        if self._adj is None:
            rows = self.rows.tolist()
            cs = self.colstarts.tolist()
            self._adj = [rows[cs[u]:cs[u + 1]] for u in range(self.num_vertices)]
        return self._adj


def build_csr(e: EdgeList, symmetrize: bool = True, dedup: bool = True) -> CsrGraph:
    """Pack an edge list into CSR.  symmetrize inserts the reverse of every
    pair (the traversals treat graphs as undirected); dedup sorts each
    adjacency list ascending and drops duplicates and self-loops."""
    n = e.num_vertices
    src = e.src.astype(np.int64)
    dst = e.dst.astype(np.int64)
    if symmetrize:
        src, dst = np.concatenate([src, dst]), np.concatenate([dst, src])
    if dedup:
        keep = src != dst
        keys = np.unique(src[keep] * n + dst[keep])
        src, dst = keys // n, keys % n
    else:
        order = np.argsort(src, kind="stable")
        src, dst = src[order], dst[order]
    counts = np.bincount(src, minlength=n)
    colstarts = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=colstarts[1:])
    rows = _aligned_i32(len(dst))
    rows[:] = dst
    return CsrGraph(n, rows, colstarts)


def write_edge_list(path: str | Path, e: EdgeList, params: RmatParams) -> None:
    """Binary little-endian (u, v) uint32 pairs plus a one-line JSON sidecar
    recording the generator parameters."""
    path = Path(path)
    pairs = np.empty((e.edge_count, 2), dtype="<u4")
    pairs[:, 0] = e.src
    pairs[:, 1] = e.dst
    pairs.tofile(path)
    path.with_suffix(path.suffix + ".json").write_text(json.dumps(asdict(params)) + "\n")


def read_edge_list(path: str | Path) -> tuple[EdgeList, RmatParams]:
    path = Path(path)
    params = RmatParams(**json.loads(path.with_suffix(path.suffix + ".json").read_text()))
    pairs = np.fromfile(path, dtype="<u4").reshape(-1, 2)
    e = EdgeList(pairs[:, 0].astype(np.uint32), pairs[:, 1].astype(np.uint32), params.num_vertices)
    return e, params
