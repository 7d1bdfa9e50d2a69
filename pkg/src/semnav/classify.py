"""Higher-layer node classification: labeling, datasets, MC, kNN, tables.

A room's ground-truth class is the worst layer-0 class touched by an
optimal border-to-border path through it. Training data is produced by
repeatedly perturbing a room's classes inside a random disk and running
the class-ordered search between two random border nodes.
"""

from __future__ import annotations

import json
import logging
import math
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .model import HSG, Graph
from .order import OrderMode
from .search import NoPathError, coa_star

logger = logging.getLogger(__name__)


class PredictionError(KeyError):
    """Raised when a table classifier has no entry for a queried node."""


def accuracy(predictions: Sequence[int], labels: Sequence[int]) -> float:
    """Fraction of exact matches."""
    if len(predictions) != len(labels):
        raise ValueError("length mismatch")
    if not labels:
        raise ValueError("empty sequences")
    return sum(p == l for p, l in zip(predictions, labels)) / len(labels)


def _plurality(counts: Dict[int, int], prefer_larger: bool = False) -> int:
    best_cls, best_n = None, -1
    items = sorted(counts.items(), reverse=prefer_larger)
    for cls, n in items:
        if n > best_n:
            best_cls, best_n = cls, n
    return best_cls


# -- samples -----------------------------------------------------------


@dataclass
class SampleNode:
    id: str
    pos: Tuple[float, float, float]
    node_class: int
    border: bool


@dataclass
class SubgraphSample:
    """A serialized induced layer-0 subgraph with an optional room label."""

    room: str
    seed: int
    nodes: List[SampleNode]
    edges: List[Tuple[str, str]]
    label: Optional[int] = None

    def class_counts(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for node in self.nodes:
            counts[node.node_class] = counts.get(node.node_class, 0) + 1
        return counts

    def border_counts(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for node in self.nodes:
            if node.border:
                counts[node.node_class] = counts.get(node.node_class, 0) + 1
        return counts

    def to_graph(self) -> Graph:
        g = Graph()
        for node in self.nodes:
            g.add_node(node.id, node.pos, node.node_class)
        for u, v in self.edges:
            g.add_edge(u, v)
        return g


def room_sample(hsg: HSG, room: str, class_override: Optional[Dict[str, int]] = None,
                seed: int = 0) -> SubgraphSample:
    """Build a SubgraphSample for a higher-layer node from the full graph."""
    sub = hsg.induced_subgraph(room)
    borders = set(hsg.border_nodes(room))
    override = class_override or {}
    nodes = [SampleNode(nid, sub.positions[nid],
                        override.get(nid, sub.classes[nid]), nid in borders)
             for nid in sub.nodes()]
    return SubgraphSample(room, seed, nodes, sub.edges())


def label_from_path(hsg: HSG, path: Sequence[str], room: str) -> int:
    """Worst stored class among path nodes inside the room's subgraph."""
    members = set(hsg.descendants0(room))
    inside = [hsg.node_class(n) for n in path if n in members]
    if not inside:
        raise ValueError(f"path does not intersect {room!r}")
    return max(inside)


# -- dataset generation ------------------------------------------------


@dataclass
class DiskSpec:
    """Random-disk relabeling parameters for dataset generation.

    Per sample one disk is drawn: its center uniformly over the room's
    node positions, its radius uniformly from `radius_range`, its class
    uniformly from `classes`. Nodes inside the disk take the disk class
    when it is worse than their current one.
    """

    radius_range: Tuple[float, float] = (1.0, 3.0)
    classes: Tuple[int, ...] = ()

    def resolved_classes(self, num_classes: int) -> Tuple[int, ...]:
        return self.classes or tuple(range(1, num_classes + 1))


@dataclass
class DatasetStats:
    generated: int = 0
    discarded_disconnected: int = 0
    skipped_rooms: List[str] = field(default_factory=list)


def generate_dataset(hsg: HSG, samples_per_room: int, disk_spec: DiskSpec,
                     seed: int, layer: int = 1) -> Tuple[List[SubgraphSample], DatasetStats]:
    """Per room: relabel inside a random disk, search border to border, label.

    Deterministic for a fixed seed. Rooms with fewer than two border
    nodes are skipped with a warning; samples whose subgraph leaves the
    two chosen borders disconnected are discarded and counted.
    """
    stats = DatasetStats()
    samples: List[SubgraphSample] = []
    K = hsg.num_classes
    disk_classes = disk_spec.resolved_classes(K)
    for room in sorted(hsg.layer_nodes(layer)):
        borders = sorted(hsg.border_nodes(room))
        if len(borders) < 2:
            logger.warning("room %s has %d border nodes; skipped", room, len(borders))
            stats.skipped_rooms.append(room)
            continue
        rng = random.Random(f"{seed}:{room}")
        sub = hsg.induced_subgraph(room)
        positions = [sub.positions[n] for n in sorted(sub.nodes())]
        for i in range(samples_per_room):
            sample_seed = rng.randrange(2 ** 31)
            srng = random.Random(sample_seed)
            center = srng.choice(positions)
            radius = srng.uniform(*disk_spec.radius_range)
            disk_class = srng.choice(disk_classes)
            override = {}
            for nid in sub.nodes():
                if math.dist(sub.positions[nid], center) <= radius:
                    if disk_class > sub.classes[nid]:
                        override[nid] = disk_class
            sample = room_sample(hsg, room, override, seed=sample_seed)
            start = srng.choice(borders)
            goal = srng.choice([b for b in borders if b != start])
            graph = sample.to_graph()
            try:
                result = coa_star(graph, start, goal, graph.node_class, K,
                                  mode=OrderMode.TOP_CLASS)
            except NoPathError:
                stats.discarded_disconnected += 1
                continue
            sample.label = max(graph.node_class(n) for n in result.path)
            samples.append(sample)
            stats.generated += 1
    return samples, stats


# -- dataset serialization ---------------------------------------------


def dataset_to_dict(samples: Sequence[SubgraphSample], num_classes: int) -> dict:
    return {
        "num_classes": num_classes,
        "samples": [
            {
                "room": s.room,
                "seed": s.seed,
                "label": s.label,
                "nodes": [{"id": n.id, "pos": list(n.pos), "class": n.node_class,
                           "border": n.border} for n in s.nodes],
                "edges": [[u, v] for u, v in s.edges],
            }
            for s in samples
        ],
    }


def dataset_from_dict(doc: dict) -> Tuple[List[SubgraphSample], int]:
    num_classes = doc["num_classes"]
    samples = []
    for item in doc["samples"]:
        nodes = [SampleNode(n["id"], tuple(n["pos"]), n["class"], bool(n["border"]))
                 for n in item["nodes"]]
        edges = [(u, v) for u, v in item["edges"]]
        samples.append(SubgraphSample(item["room"], item["seed"], nodes, edges,
                                      item.get("label")))
    return samples, num_classes


def save_dataset(path: str, samples: Sequence[SubgraphSample], num_classes: int) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(dataset_to_dict(samples, num_classes), fh)


def load_dataset(path: str) -> Tuple[List[SubgraphSample], int]:
    with open(path, "r", encoding="utf-8") as fh:
        return dataset_from_dict(json.load(fh))


# -- classifiers -------------------------------------------------------


class MajorityClassClassifier:
    """Predicts the most frequent layer-0 class in the induced subgraph."""

    kind = "mc"

    def __init__(self, prefer_larger_ties: bool = False):
        self.prefer_larger_ties = prefer_larger_ties

    def classify_sample(self, sample: SubgraphSample) -> int:
        counts = sample.class_counts()
        if not counts:
            raise ValueError("empty subgraph")
        return _plurality(counts, self.prefer_larger_ties)

    def classify(self, hsg: HSG, node_id: str) -> int:
        return self.classify_sample(room_sample(hsg, node_id))


def knn_features(sample: SubgraphSample, num_classes: int,
                 prefer_larger_ties: bool = False) -> np.ndarray:
    """Per-class node proportions plus the border-node majority class."""
    if not sample.nodes:
        raise ValueError("empty subgraph")
    counts = sample.class_counts()
    total = len(sample.nodes)
    proportions = [counts.get(k, 0) / total for k in range(1, num_classes + 1)]
    border_counts = sample.border_counts()
    if not border_counts:
        raise ValueError("no border nodes; feature undefined")
    border_majority = _plurality(border_counts, prefer_larger_ties)
    return np.array(proportions + [border_majority], dtype=float)


class KNNClassifier:
    """k-nearest-neighbor vote over standardized hand-crafted features."""

    kind = "knn"

    def __init__(self, k: int, num_classes: int, mean: np.ndarray, std: np.ndarray,
                 keep: np.ndarray, matrix: np.ndarray, labels: np.ndarray,
                 prefer_larger_ties: bool = False):
        self.k = k
        self.num_classes = num_classes
        self.mean = mean
        self.std = std
        self.keep = keep          # zero-variance features are dropped
        self.matrix = matrix      # standardized training rows, kept columns
        self.labels = labels
        self.prefer_larger_ties = prefer_larger_ties

    def _transform(self, feats: np.ndarray) -> np.ndarray:
        z = (feats - self.mean) / self.std
        return z[self.keep]

    def classify_features(self, feats: np.ndarray) -> int:
        z = self._transform(feats)
        dists = np.linalg.norm(self.matrix - z, axis=1)
        order = np.argsort(dists, kind="stable")[: self.k]
        votes: Dict[int, int] = {}
        for idx in order:
            lbl = int(self.labels[idx])
            votes[lbl] = votes.get(lbl, 0) + 1
        return _plurality(votes, self.prefer_larger_ties)

    def classify_sample(self, sample: SubgraphSample) -> int:
        return self.classify_features(knn_features(sample, self.num_classes,
                                                   self.prefer_larger_ties))

    def classify(self, hsg: HSG, node_id: str) -> int:
        return self.classify_sample(room_sample(hsg, node_id))

    def to_dict(self) -> dict:
        return {
            "kind": "knn",
            "k": self.k,
            "num_classes": self.num_classes,
            "mean": self.mean.tolist(),
            "std": self.std.tolist(),
            "keep": self.keep.tolist(),
            "matrix": self.matrix.tolist(),
            "labels": self.labels.tolist(),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "KNNClassifier":
        return cls(doc["k"], doc["num_classes"], np.array(doc["mean"]),
                   np.array(doc["std"]), np.array(doc["keep"], dtype=bool),
                   np.array(doc["matrix"]), np.array(doc["labels"], dtype=int))

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh)

    @classmethod
    def load(cls, path: str) -> "KNNClassifier":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def knn_fit(samples: Sequence[SubgraphSample], num_classes: int, k: int = 5) -> KNNClassifier:
    """Fit the kNN classifier: standardize features over the training set."""
    if len(samples) < k:
        raise ValueError(f"need at least k={k} samples, got {len(samples)}")
    feats = np.stack([knn_features(s, num_classes) for s in samples])
    labels = np.array([s.label for s in samples], dtype=int)
    mean = feats.mean(axis=0)
    std = feats.std(axis=0)
    keep = std > 0
    safe_std = np.where(keep, std, 1.0)
    matrix = ((feats - mean) / safe_std)[:, keep]
    return KNNClassifier(k, num_classes, mean, safe_std, keep, matrix, labels)


class TableClassifier:
    """Looks up externally produced per-node predictions (e.g. a GNN's)."""

    kind = "table"

    def __init__(self, table: Dict[str, int], layer: int = 1):
        self.table = dict(table)
        self.layer = layer

    def classify(self, hsg: HSG, node_id: str) -> int:
        try:
            return self.table[node_id]
        except KeyError:
            raise PredictionError(f"no prediction for node {node_id!r}") from None

    def to_dict(self) -> dict:
        return {"layer": self.layer, "predictions": dict(sorted(self.table.items()))}

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh)


def load_prediction_table(document: str, num_classes: Optional[int] = None) -> TableClassifier:
    """Parse Prediction-JSON into a table classifier."""
    doc = json.loads(document)
    preds = doc.get("predictions")
    if not isinstance(preds, dict):
        raise ValueError("missing 'predictions' object")
    table = {}
    for nid, cls in preds.items():
        if not isinstance(cls, int) or cls < 1 or (num_classes and cls > num_classes):
            raise ValueError(f"prediction for {nid!r} out of range: {cls!r}")
        table[nid] = cls
    return TableClassifier(table, doc.get("layer", 1))


def load_prediction_file(path: str, num_classes: Optional[int] = None) -> TableClassifier:
    with open(path, "r", encoding="utf-8") as fh:
        return load_prediction_table(fh.read(), num_classes)
