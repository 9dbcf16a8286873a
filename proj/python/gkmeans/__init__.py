"""Graph-accelerated incremental k-means."""

from ._gkmeans import (
    brute_force_knn,
    build_knn_graph,
    cluster,
    distortion,
    gen_mixture,
    objective_value,
    recall_at_1,
    two_means_tree,
)

__all__ = [
    "brute_force_knn",
    "build_knn_graph",
    "cluster",
    "distortion",
    "gen_mixture",
    "objective_value",
    "recall_at_1",
    "two_means_tree",
]

__version__ = "0.1.0"
