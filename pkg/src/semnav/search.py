"""Class-ordered A*: shortest path under the semantic class total order.

The search ranks candidate paths first by their class-count vector (see
:mod:`semnav.order`) and then by geometric length. Because the class order
is only weakly monotone under path extension (a strictly better prefix can
become merely equal after a less favorable edge), a single label per node
can lose the shorter of two prefixes that later tie on classes. The search
therefore keeps, per node, the set of labels that are Pareto-undominated
in (class key, cost-to-come) and pops them in (class key, f) order; the
first goal pop is exactly optimal for (class key, then weight).
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from .model import Graph, edge_class
from .order import OrderMode, ClassVector, one_hot, add, sort_key, zero, top_key


class NoPathError(Exception):
    """Raised when the queue empties without reaching the goal."""

    def __init__(self, message: str, layer: Optional[int] = None):
        super().__init__(message)
        self.layer = layer


@dataclass
class PathResult:
    """Outcome of one single-layer search."""

    path: List[str]
    g: float
    theta: Tuple[int, ...]
    expanded: int
    pushes: int

    @property
    def theta_key(self) -> Tuple[int, int]:
        return top_key(self.theta)


class _Label:
    __slots__ = ("node", "theta", "g", "parent", "pruned")

    def __init__(self, node: str, theta: Tuple[int, ...], g: float, parent: Optional["_Label"]):
        self.node = node
        self.theta = theta
        self.g = g
        self.parent = parent
        self.pruned = False


def euclidean_heuristic(graph, goal: str) -> Callable[[str], float]:
    """Straight-line distance to the goal position (admissible)."""
    goal_pos = graph.positions[goal] if isinstance(graph, Graph) else graph.pos(goal)

    def h(node_id: str) -> float:
        pos = graph.positions[node_id] if isinstance(graph, Graph) else graph.pos(node_id)
        return math.dist(pos, goal_pos)

    return h


def coa_star(graph, start: str, goal: str, node_class: Callable[[str], int],
             num_classes: int, h: Optional[Callable[[str], float]] = None,
             mode: OrderMode = OrderMode.TOP_CLASS) -> PathResult:
    """Search `graph` for the best start-goal path under (class order, weight).

    `graph` needs `has_node` and `neighbors(v) -> [(u, w), ...]`. Classes
    are evaluated once per node and cached. Raises NoPathError when the
    goal is unreachable.
    """
    if not graph.has_node(start):
        raise ValueError(f"unknown start node {start!r}")
    if not graph.has_node(goal):
        raise ValueError(f"unknown goal node {goal!r}")
    if h is None:
        h = lambda _: 0.0

    class_cache: Dict[str, int] = {}

    def cls(node_id: str) -> int:
        c = class_cache.get(node_id)
        if c is None:
            c = node_class(node_id)
            class_cache[node_id] = c
        return c

    counter = itertools.count()
    labels: Dict[str, List[_Label]] = {}
    root = _Label(start, zero(num_classes), 0.0, None)
    labels[start] = [root]
    heap: List[tuple] = [(sort_key(root.theta, mode), h(start), next(counter), root)]
    expanded = 0
    pushes = 1

    while heap:
        _, _, _, label = heapq.heappop(heap)
        if label.pruned:
            continue
        expanded += 1
        v = label.node
        if v == goal:
            path = []
            cur: Optional[_Label] = label
            while cur is not None:
                path.append(cur.node)
                cur = cur.parent
            path.reverse()
            return PathResult(path, label.g, label.theta, expanded, pushes)
        for u, w in graph.neighbors(v):
            ec = edge_class(cls(v), cls(u), num_classes)
            ntheta = add(label.theta, one_hot(ec, num_classes))
            ng = label.g + w
            nkey = sort_key(ntheta, mode)
            bucket = labels.setdefault(u, [])
            dominated = False
            for other in bucket:
                if sort_key(other.theta, mode) <= nkey and other.g <= ng:
                    dominated = True
                    break
            if dominated:
                continue
            survivors = []
            for other in bucket:
                if nkey <= sort_key(other.theta, mode) and ng <= other.g:
                    other.pruned = True
                else:
                    survivors.append(other)
            new = _Label(u, ntheta, ng, label)
            survivors.append(new)
            labels[u] = survivors
            heapq.heappush(heap, (nkey, ng + h(u), next(counter), new))
            pushes += 1

    raise NoPathError(f"no path from {start!r} to {goal!r}")


def path_theta(graph, path: List[str], node_class: Callable[[str], int],
               num_classes: int) -> Tuple[int, ...]:
    """Recompute a path's class-count vector from its edges."""
    theta = zero(num_classes)
    for u, v in zip(path, path[1:]):
        theta = add(theta, one_hot(edge_class(node_class(u), node_class(v), num_classes), num_classes))
    return theta


def path_weight(graph, path: List[str]) -> float:
    """Recompute a path's total weight from the graph adjacency."""
    total = 0.0
    for u, v in zip(path, path[1:]):
        for nbr, w in graph.neighbors(u):
            if nbr == v:
                total += w
                break
        else:
            raise ValueError(f"path edge ({u!r}, {v!r}) not in graph")
    return total
