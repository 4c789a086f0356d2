"""Bitmap-frontier BFS with a 16-lane vectorized exploration path.

The package splits into a word-addressed bitmap, a portable lane layer with
scalar and array backends, an RMAT generator with CSR assembly, the BFS
variant ladder (serial, flag-array parallel, bitmap-with-restoration, lane
vectorized), a five-check tree validator, and a TEPS benchmark harness with
thread placement control.
"""

from .bitmap import BITS_PER_WORD, Bitmap, bit_to_vertex, swap_and_clear, vertex_to_bit
from .graph import (
    MAX_SCALE,
    CsrGraph,
    EdgeList,
    RmatParams,
    build_csr,
    generate_rmat,
    read_edge_list,
    write_edge_list,
)
from .harness import (
    PLACEMENT_ENV_VAR,
    CpuSlot,
    ExperimentConfig,
    PlacementOutcome,
    RootRun,
    RunStats,
    ThreadPlacement,
    apply_placement,
    emit_results,
    harmonic_mean_teps,
    parse_placement,
    pick_roots,
    read_topology,
    resolve_placement,
    run_experiment,
)
from .lane import (
    LANE_WIDTH,
    LaneMask,
    LaneVector,
    NumpyBackend,
    RunPartition,
    ScalarBackend,
    partition_run,
)
from .traversal import (
    MODES,
    SENTINEL,
    BfsResult,
    LayerPolicy,
    LayerStats,
    PredecessorArray,
    bfs_parallel_naive,
    bfs_parallel_restored,
    bfs_serial,
    bfs_vectorized,
    explore_adjacency_vectorized,
    restore_layer,
    restore_layer_vectorized,
    run_bfs,
)
from .validate import ValidationReport, levels_from_parents, validate_tree

__all__ = [
    "BITS_PER_WORD",
    "Bitmap",
    "bit_to_vertex",
    "swap_and_clear",
    "vertex_to_bit",
    "MAX_SCALE",
    "CsrGraph",
    "EdgeList",
    "RmatParams",
    "build_csr",
    "generate_rmat",
    "read_edge_list",
    "write_edge_list",
    "PLACEMENT_ENV_VAR",
    "CpuSlot",
    "ExperimentConfig",
    "PlacementOutcome",
    "RootRun",
    "RunStats",
    "ThreadPlacement",
    "apply_placement",
    "emit_results",
    "harmonic_mean_teps",
    "parse_placement",
    "pick_roots",
    "read_topology",
    "resolve_placement",
    "run_experiment",
    "LANE_WIDTH",
    "LaneMask",
    "LaneVector",
    "NumpyBackend",
    "RunPartition",
    "ScalarBackend",
    "partition_run",
    "MODES",
    "SENTINEL",
    "BfsResult",
    "LayerPolicy",
    "LayerStats",
    "PredecessorArray",
    "bfs_parallel_naive",
    "bfs_parallel_restored",
    "bfs_serial",
    "bfs_vectorized",
    "explore_adjacency_vectorized",
    "restore_layer",
    "restore_layer_vectorized",
    "run_bfs",
    "ValidationReport",
    "levels_from_parents",
    "validate_tree",
]

__version__ = "0.1.0"
