"""Hierarchical driver: top-down class-ordered search with pruning.

Planning starts at the layer below the root and walks down to layer 0.
After each layer's search, lower layers are restricted to nodes whose
ancestor lies on the path just found. The restriction is a lazy view
(an ancestor-membership check), never a graph copy.

Layer-0 node classes come from the stored labels; higher-layer classes
are produced by a pluggable classifier and memoized per planning call.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from .model import HSG, edge_class
from .order import OrderMode, one_hot
from .search import NoPathError, PathResult, coa_star, euclidean_heuristic


class _LayerView:
    """One layer of the HSG, optionally restricted to allowed ancestors."""

    def __init__(self, hsg: HSG, layer: int,
                 constraint: Optional[Tuple[int, frozenset]] = None):
        self._hsg = hsg
        self._layer = layer
        self._constraint = constraint

    def _allowed(self, node_id: str) -> bool:
        if self._constraint is None:
            return True
        layer, keep = self._constraint
        return self._hsg.ancestor(node_id, layer) in keep

    def has_node(self, node_id: str) -> bool:
        node = self._hsg.node(node_id) if self._hsg.has_node(node_id) else None
        return node is not None and node.layer == self._layer and self._allowed(node_id)

    def nodes(self) -> List[str]:
        return [n for n in self._hsg.layer_nodes(self._layer) if self._allowed(n)]

    def neighbors(self, node_id: str) -> List[Tuple[str, float]]:
        return [(u, w) for u, w in self._hsg.neighbors(node_id) if self._allowed(u)]

    def pos(self, node_id: str):
        return self._hsg.pos(node_id)


def prune(hsg: HSG, layer: int, path: List[str], target_layer: int) -> _LayerView:
    """View of `target_layer` keeping only descendants of `path` at `layer`."""
    if not path:
        raise ValueError("empty pruning path")
    return _LayerView(hsg, target_layer, (layer, frozenset(path)))


def semantics(v_class: int, u: str, hsg: HSG,
              classify: Callable[[str], int]) -> Tuple[int, ...]:
    """One-hot class-count vector for an edge into higher-layer node u."""
    u_class = classify(u)
    return one_hot(edge_class(v_class, u_class, hsg.num_classes), hsg.num_classes)


@dataclass
class LayerPlan:
    layer: int
    path: List[str]
    result: PathResult


@dataclass
class HierResult:
    layers: List[LayerPlan]
    path: List[str]
    total_expanded: int
    total_pushes: int
    classifier_queries: int
    used_fallback: bool = False

    @property
    def result0(self) -> PathResult:
        return self.layers[-1].result


def hcoa_star(hsg: HSG, start: str, goal: str, classifier,
              mode: OrderMode = OrderMode.TOP_CLASS,
              fallback_flat: bool = False) -> HierResult:
    """Plan from `start` to `goal` (both layer-0 nodes), top down.

    `classifier` provides classes for higher-layer nodes via
    `classify(hsg, node_id)`. Its answers are memoized for the duration
    of this call. If pruning disconnects a layer, the search reports
    NoPathError naming the failing layer, unless `fallback_flat` asks
    for a plain full-graph search instead.
    """
    for nid in (start, goal):
        if not hsg.has_node(nid) or hsg.node(nid).layer != 0:
            raise ValueError(f"{nid!r} is not a layer-0 node")

    memo: Dict[str, int] = {}
    queries = 0

    def classify(node_id: str) -> int:
        nonlocal queries
        cls = memo.get(node_id)
        if cls is None:
            queries += 1
            cls = classifier.classify(hsg, node_id)
            if not 1 <= cls <= hsg.num_classes:
                raise ValueError(f"classifier returned {cls} for {node_id!r}")
            memo[node_id] = cls
        return cls

    n = hsg.top_layer
    layers = list(range(n - 1, -1, -1)) if n >= 1 else [0]

    plans: List[LayerPlan] = []
    constraint: Optional[Tuple[int, frozenset]] = None
    for layer in layers:
        vs = hsg.ancestor(start, layer)
        vg = hsg.ancestor(goal, layer)
        view = _LayerView(hsg, layer, constraint)
        node_class = hsg.node_class if layer == 0 else classify
        try:
            result = coa_star(view, vs, vg, node_class, hsg.num_classes,
                              h=euclidean_heuristic(view, vg), mode=mode)
        except NoPathError as exc:
            if fallback_flat:
                full = _LayerView(hsg, 0)
                result = coa_star(full, start, goal, hsg.node_class, hsg.num_classes,
                                  h=euclidean_heuristic(full, goal), mode=mode)
                plans.append(LayerPlan(0, result.path, result))
                return HierResult(plans, result.path,
                                  sum(p.result.expanded for p in plans),
                                  sum(p.result.pushes for p in plans),
                                  queries, used_fallback=True)
            raise NoPathError(f"layer {layer}: {exc}", layer=layer) from exc
        plans.append(LayerPlan(layer, result.path, result))
        if layer > 0:
            constraint = (layer, frozenset(result.path))

    final = plans[-1].path
    return HierResult(plans, final,
                      sum(p.result.expanded for p in plans),
                      sum(p.result.pushes for p in plans),
                      queries)
