"""Multi-dimensional HITS centrality for temporal multilayer networks.

Thin wrapper over the compiled extension; see the package README for the
model, the file formats, and the command-line interface.
"""

from ._core import (
    ClassicalHits,
    ExponentConfig,
    MonolayerHits,
    RankedList,
    Solution,
    SparseTensor,
    SupportSlice,
    TensorShape,
    TraceEntry,
    MdhitsError,
    __version__,
    aggregate_degree,
    build_weight_matrix,
    check_feasible,
    classical_hits,
    generate_random,
    intersection_similarity,
    kendall_tau,
    load_tensor,
    monolayer_hits,
    perron,
    rank_all,
    read_solution,
    residual,
    solve,
    top_k,
    write_solution,
)

__all__ = [
    "ClassicalHits",
    "ExponentConfig",
    "MonolayerHits",
    "RankedList",
    "Solution",
    "SparseTensor",
    "SupportSlice",
    "TensorShape",
    "TraceEntry",
    "MdhitsError",
    "__version__",
    "aggregate_degree",
    "build_weight_matrix",
    "check_feasible",
    "classical_hits",
    "generate_random",
    "intersection_similarity",
    "kendall_tau",
    "load_tensor",
    "monolayer_hits",
    "perron",
    "rank_all",
    "read_solution",
    "residual",
    "solve",
    "top_k",
    "write_solution",
]
