"""Layered semantic graph model: loading, validation, projection, subgraphs.

The graph has layers 0..n. Every node below the top layer has exactly one
parent in the layer above; every layer-0 node carries a semantic class in
1..K. Edges connect nodes of the same layer and their weight is always the
Euclidean distance between the endpoint positions (input weights are
rejected to keep the model consistent).
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple


class GraphFormatError(ValueError):
    """Raised when a graph document violates the model invariants."""


def edge_class(class_u: int, class_v: int, num_classes: Optional[int] = None) -> int:
    """Class of an edge: the less favorable (larger) of its endpoint classes."""
    for c in (class_u, class_v):
        if c < 1 or (num_classes is not None and c > num_classes):
            raise ValueError(f"class {c} out of range")
    return max(class_u, class_v)


@dataclass(frozen=True)
class Node:
    id: str
    layer: int
    pos: Tuple[float, float, float]
    parent: Optional[str] = None
    node_class: Optional[int] = None


@dataclass
class Graph:
    """A single-layer weighted graph; weights are Euclidean distances.

    Optionally carries per-node classes (used for layer-0 subgraphs).
    """

    positions: Dict[str, Tuple[float, float, float]] = field(default_factory=dict)
    adj: Dict[str, List[Tuple[str, float]]] = field(default_factory=dict)
    classes: Dict[str, int] = field(default_factory=dict)

    def add_node(self, node_id: str, pos: Sequence[float], node_class: Optional[int] = None) -> None:
        self.positions[node_id] = tuple(pos)
        self.adj.setdefault(node_id, [])
        if node_class is not None:
            self.classes[node_id] = node_class

    def add_edge(self, u: str, v: str) -> None:
        w = math.dist(self.positions[u], self.positions[v])
        self.adj[u].append((v, w))
        self.adj[v].append((u, w))

    def has_node(self, node_id: str) -> bool:
        return node_id in self.positions

    def nodes(self) -> List[str]:
        return list(self.positions)

    def neighbors(self, node_id: str) -> List[Tuple[str, float]]:
        return self.adj[node_id]

    def num_nodes(self) -> int:
        return len(self.positions)

    def num_edges(self) -> int:
        return sum(len(v) for v in self.adj.values()) // 2

    def edges(self) -> List[Tuple[str, str]]:
        seen = []
        for u, nbrs in self.adj.items():
            for v, _ in nbrs:
                if u < v:
                    seen.append((u, v))
        return seen

    def node_class(self, node_id: str) -> int:
        return self.classes[node_id]

    def is_connected(self) -> bool:
        if not self.positions:
            return True
        start = next(iter(self.positions))
        seen = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for u, _ in self.adj[v]:
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        return len(seen) == len(self.positions)


class HSG:
    """Immutable hierarchical semantic graph.

    Construct through :func:`load_hsg` / :meth:`from_dict`, which validate
    every model invariant. After construction the object is read-only and
    safe to share across concurrent searches.
    """

    def __init__(self, num_layers: int, num_classes: int, nodes: Dict[str, Node],
                 layer_adj: Dict[int, Dict[str, List[Tuple[str, float]]]],
                 children: Dict[str, List[str]]):
        self.num_layers = num_layers
        self.num_classes = num_classes
        self._nodes = nodes
        self._layer_adj = layer_adj
        self._children = children
        self._by_layer: Dict[int, List[str]] = {l: [] for l in range(num_layers)}
        for node in nodes.values():
            self._by_layer[node.layer].append(node.id)

    # -- accessors -----------------------------------------------------

    @property
    def top_layer(self) -> int:
        return self.num_layers - 1

    def node(self, node_id: str) -> Node:
        return self._nodes[node_id]

    def has_node(self, node_id: str) -> bool:
        return node_id in self._nodes

    def nodes(self) -> Iterable[Node]:
        return self._nodes.values()

    def layer_nodes(self, layer: int) -> List[str]:
        return self._by_layer[layer]

    def neighbors(self, node_id: str) -> List[Tuple[str, float]]:
        return self._layer_adj[self._nodes[node_id].layer][node_id]

    def children(self, node_id: str) -> List[str]:
        return self._children.get(node_id, [])

    def node_class(self, node_id: str) -> int:
        cls = self._nodes[node_id].node_class
        if cls is None:
            raise ValueError(f"node {node_id!r} has no stored class")
        return cls

    def pos(self, node_id: str) -> Tuple[float, float, float]:
        return self._nodes[node_id].pos

    # -- hierarchy operations ------------------------------------------

    def ancestor(self, node_id: str, layer: int) -> str:
        """Project a node to its ancestor at the given layer."""
        node = self._nodes[node_id]
        if layer < node.layer or layer > self.top_layer:
            raise ValueError(f"layer {layer} outside {node.layer}..{self.top_layer} for {node_id!r}")
        current = node
        while current.layer < layer:
            if current.parent is None:
                raise GraphFormatError(f"broken parent chain at {current.id!r}")
            current = self._nodes[current.parent]
        return current.id

    def descendants0(self, node_id: str) -> List[str]:
        """Layer-0 descendants of a higher-layer node, in stable order."""
        node = self._nodes[node_id]
        if node.layer < 1:
            raise ValueError(f"{node_id!r} is a layer-0 node")
        frontier = [node_id]
        for _ in range(node.layer):
            frontier = [c for p in frontier for c in self._children.get(p, [])]
        return frontier

    def induced_subgraph(self, node_id: str) -> Graph:
        """Layer-0 subgraph induced by a higher-layer node's descendants."""
        members = set(self.descendants0(node_id))
        sub = Graph()
        for nid in self.layer_nodes(0):
            if nid in members:
                node = self._nodes[nid]
                sub.add_node(nid, node.pos, node.node_class)
        for u in sub.nodes():
            for v, _ in self._layer_adj[0][u]:
                if v in members and u < v:
                    sub.add_edge(u, v)
        return sub

    def border_nodes(self, node_id: str) -> List[str]:
        """Layer-0 descendants with a neighbor under a different ancestor."""
        node = self._nodes[node_id]
        layer = node.layer
        if layer < 1:
            raise ValueError(f"{node_id!r} is a layer-0 node")
        members = set(self.descendants0(node_id))
        borders = []
        for nid in self.layer_nodes(0):
            if nid not in members:
                continue
            for v, _ in self._layer_adj[0][nid]:
                if self.ancestor(v, layer) != node_id:
                    borders.append(nid)
                    break
        return borders

    def layer_graph(self, layer: int) -> Graph:
        """Copy of one layer as a standalone Graph (classes only at layer 0)."""
        g = Graph()
        for nid in self.layer_nodes(layer):
            node = self._nodes[nid]
            g.add_node(nid, node.pos, node.node_class)
        for nid in self.layer_nodes(layer):
            for v, _ in self._layer_adj[layer][nid]:
                if nid < v:
                    g.add_edge(nid, v)
        return g

    # -- derived graphs -------------------------------------------------

    def with_classes(self, new_classes: Dict[str, int]) -> "HSG":
        """A copy of this graph with some layer-0 classes replaced."""
        nodes = dict(self._nodes)
        for nid, cls in new_classes.items():
            node = nodes[nid]
            if node.layer != 0:
                raise ValueError(f"{nid!r} is not a layer-0 node")
            if not 1 <= cls <= self.num_classes:
                raise ValueError(f"class {cls} out of range")
            nodes[nid] = Node(node.id, node.layer, node.pos, node.parent, cls)
        return HSG(self.num_layers, self.num_classes, nodes, self._layer_adj, self._children)

    # -- serialization --------------------------------------------------

    @classmethod
    def from_dict(cls, doc: dict) -> "HSG":
        for key in ("num_layers", "num_classes", "nodes", "edges"):
            if key not in doc:
                raise GraphFormatError(f"missing top-level key {key!r}")
        num_layers = doc["num_layers"]
        num_classes = doc["num_classes"]
        if not isinstance(num_layers, int) or num_layers < 1:
            raise GraphFormatError("num_layers must be a positive integer")
        if not isinstance(num_classes, int) or num_classes < 1:
            raise GraphFormatError("num_classes must be a positive integer")

        nodes: Dict[str, Node] = {}
        for item in doc["nodes"]:
            nid = item.get("id")
            if not isinstance(nid, str):
                raise GraphFormatError("node id must be a string")
            if nid in nodes:
                raise GraphFormatError(f"duplicate node id {nid!r}")
            layer = item.get("layer")
            if not isinstance(layer, int) or not 0 <= layer < num_layers:
                raise GraphFormatError(f"node {nid!r}: bad layer {layer!r}")
            pos = item.get("pos")
            if not isinstance(pos, (list, tuple)) or len(pos) not in (2, 3):
                raise GraphFormatError(f"node {nid!r}: pos must be a 2- or 3-vector")
            if len(pos) == 2:
                pos = [pos[0], pos[1], 0.0]
            node_class = item.get("class")
            if layer == 0 and node_class is None:
                raise GraphFormatError(f"node {nid!r}: missing layer-0 class")
            if node_class is not None and not 1 <= node_class <= num_classes:
                raise GraphFormatError(f"node {nid!r}: class {node_class} out of range")
            nodes[nid] = Node(nid, layer, tuple(float(x) for x in pos),
                              item.get("parent"), node_class)

        children: Dict[str, List[str]] = {}
        for node in nodes.values():
            if node.layer < num_layers - 1:
                if node.parent is None:
                    raise GraphFormatError(f"node {node.id!r}: missing parent")
            if node.parent is not None:
                parent = nodes.get(node.parent)
                if parent is None:
                    raise GraphFormatError(f"node {node.id!r}: dangling parent {node.parent!r}")
                if parent.layer != node.layer + 1:
                    raise GraphFormatError(
                        f"node {node.id!r}: parent {node.parent!r} not in layer {node.layer + 1}")
                children.setdefault(node.parent, []).append(node.id)

        layer_adj: Dict[int, Dict[str, List[Tuple[str, float]]]] = {
            l: {nid: [] for nid, n in nodes.items() if n.layer == l} for l in range(num_layers)
        }
        seen_edges = set()
        for item in doc["edges"]:
            if isinstance(item, dict):
                if "weight" in item or "w" in item:
                    raise GraphFormatError("stored edge weights are rejected; weights derive from positions")
                u, v = item.get("u"), item.get("v")
            else:
                u, v = item
            if u not in nodes or v not in nodes:
                raise GraphFormatError(f"edge ({u!r}, {v!r}): dangling endpoint")
            if u == v:
                raise GraphFormatError(f"self-loop at {u!r}")
            nu, nv = nodes[u], nodes[v]
            if nu.layer != nv.layer:
                raise GraphFormatError(f"edge ({u!r}, {v!r}) crosses layers {nu.layer}/{nv.layer}")
            key = (min(u, v), max(u, v))
            if key in seen_edges:
                raise GraphFormatError(f"duplicate edge ({u!r}, {v!r})")
            seen_edges.add(key)
            w = math.dist(nu.pos, nv.pos)
            layer_adj[nu.layer][u].append((v, w))
            layer_adj[nu.layer][v].append((u, w))

        hsg = cls(num_layers, num_classes, nodes, layer_adj, children)
        for layer in range(num_layers):
            if not hsg.layer_nodes(layer):
                raise GraphFormatError(f"layer {layer} is empty")
            if not hsg.layer_graph(layer).is_connected():
                raise GraphFormatError(f"layer {layer} is disconnected")
        return hsg

    def to_dict(self) -> dict:
        node_items = []
        for layer in range(self.num_layers):
            for nid in self.layer_nodes(layer):
                node = self._nodes[nid]
                node_items.append({
                    "id": node.id,
                    "layer": node.layer,
                    "pos": list(node.pos),
                    "parent": node.parent,
                    "class": node.node_class,
                })
        edge_items = []
        for layer in range(self.num_layers):
            for nid in self.layer_nodes(layer):
                for v, _ in self._layer_adj[layer][nid]:
                    if nid < v:
                        edge_items.append({"u": nid, "v": v})
        return {
            "num_layers": self.num_layers,
            "num_classes": self.num_classes,
            "nodes": node_items,
            "edges": edge_items,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)


def load_hsg(document: str) -> HSG:
    """Parse and validate an HSG-JSON document."""
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise GraphFormatError("top-level JSON value must be an object")
    return HSG.from_dict(doc)


def load_hsg_file(path: str) -> HSG:
    with open(path, "r", encoding="utf-8") as fh:
        return load_hsg(fh.read())
