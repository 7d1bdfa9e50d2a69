"""Hierarchical semantic path planning over layered graphs.

Search under a total order on semantic classes (least favorable class
first, then its count, then distance), a hierarchical driver that prunes
lower layers to the corridor found above, pluggable room classifiers, a
brute-force optimality oracle and a benchmark harness.
"""

from .model import HSG, Graph, GraphFormatError, Node, edge_class, load_hsg, load_hsg_file
from .order import UNREACHED, OrderMode, add, compare, one_hot, top_key
from .search import NoPathError, PathResult, coa_star, euclidean_heuristic
from .hierarchy import HierResult, hcoa_star
from .baselines import OracleResult, ma_star, oracle_optimal
from .classify import (DiskSpec, KNNClassifier, MajorityClassClassifier,
                       TableClassifier, accuracy, generate_dataset, knn_fit,
                       load_prediction_table)
from .generators import HierParams, demo_grid_world, disk_labeling, gen_grid_world, gen_hier_hsg

__version__ = "0.1.0"

__all__ = [
    "HSG", "Graph", "GraphFormatError", "Node", "edge_class", "load_hsg",
    "load_hsg_file", "UNREACHED", "OrderMode", "add", "compare", "one_hot",
    "top_key", "NoPathError", "PathResult", "coa_star", "euclidean_heuristic",
    "HierResult", "hcoa_star", "OracleResult", "ma_star", "oracle_optimal",
    "DiskSpec", "KNNClassifier", "MajorityClassClassifier", "TableClassifier",
    "accuracy", "generate_dataset", "knn_fit", "load_prediction_table",
    "HierParams", "demo_grid_world", "disk_labeling", "gen_grid_world",
    "gen_hier_hsg",
]
