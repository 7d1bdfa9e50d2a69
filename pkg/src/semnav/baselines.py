"""Exact brute-force optimality oracle and the weighted-A* baseline.

The oracle enumerates every acyclic start-goal path and picks the minimum
of (least favorable class, count of that class, total weight). It exists
to verify the searches on small graphs and deliberately shares no code
with them.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

from .search import NoPathError, PathResult, euclidean_heuristic, path_theta


class OracleLimitError(RuntimeError):
    """Raised when the instance exceeds the enumeration guard rails."""


@dataclass
class OracleResult:
    path: List[str]
    top_class: int
    count: int
    weight: float
    num_paths: int

    @property
    def theta_key(self) -> Tuple[int, int]:
        return (self.top_class, self.count)


def oracle_optimal(graph, start: str, goal: str, node_class: Callable[[str], int],
                   num_classes: int, max_nodes: int = 14,
                   max_paths: int = 10 ** 6) -> OracleResult:
    """Enumerate all acyclic paths and select the exact optimum.

    Independent of the A*-style searches: plain depth-first enumeration
    with a visited set, ranking each complete path by
    (top class, count at top class, weight).
    """
    if not graph.has_node(start) or not graph.has_node(goal):
        raise ValueError("start or goal not in graph")
    if graph.num_nodes() > max_nodes:
        raise OracleLimitError(f"{graph.num_nodes()} nodes exceeds oracle cap {max_nodes}")

    best: Optional[Tuple[int, int, float]] = None
    best_path: Optional[List[str]] = None
    num_paths = 0

    classes = {nid: node_class(nid) for nid in graph.nodes()}

    path = [start]
    on_path = {start}

    def walk(v: str, weight: float) -> None:
        nonlocal best, best_path, num_paths
        if v == goal:
            num_paths += 1
            if num_paths > max_paths:
                raise OracleLimitError(f"more than {max_paths} paths enumerated")
            top, count = 1, 0
            for a, b in zip(path, path[1:]):
                ec = max(classes[a], classes[b])
                if ec > top:
                    top, count = ec, 1
                elif ec == top:
                    count += 1
            if not path[1:]:
                top, count = 0, 0
            key = (top, count, weight)
            if best is None or key < best:
                best = key
                best_path = list(path)
            return
        for u, w in graph.neighbors(v):
            if u in on_path:
                continue
            path.append(u)
            on_path.add(u)
            walk(u, weight + w)
            path.pop()
            on_path.remove(u)

    walk(start, 0.0)
    if best is None:
        raise NoPathError(f"no path from {start!r} to {goal!r}")
    return OracleResult(best_path, best[0], best[1], best[2], num_paths)


def ma_star(graph, start: str, goal: str, alpha: float,
            node_class: Callable[[str], int], num_classes: int) -> PathResult:
    """Baseline A* on the inflated edge cost w + alpha ** edge_class.

    The returned PathResult carries the true geometric weight and the
    class-count vector of the path (not the inflated cost), so results
    compare directly against the oracle.
    """
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    if not math.isfinite(alpha ** num_classes):
        raise OverflowError(f"alpha ** {num_classes} is not finite for alpha={alpha}")
    if not graph.has_node(start) or not graph.has_node(goal):
        raise ValueError("start or goal not in graph")

    classes = {}

    def cls(nid: str) -> int:
        c = classes.get(nid)
        if c is None:
            c = node_class(nid)
            classes[nid] = c
        return c

    h = euclidean_heuristic(graph, goal)
    counter = itertools.count()
    g_cost = {start: 0.0}
    parent = {start: None}
    heap = [(h(start), next(counter), start)]
    expanded = 0
    pushes = 1
    while heap:
        f, _, v = heapq.heappop(heap)
        if f > g_cost[v] + h(v) + 1e-12:
            continue  # stale entry
        expanded += 1
        if v == goal:
            path = []
            cur: Optional[str] = v
            while cur is not None:
                path.append(cur)
                cur = parent[cur]
            path.reverse()
            weight = sum(w for a in zip(path, path[1:])
                         for n, w in graph.neighbors(a[0]) if n == a[1])
            theta = path_theta(graph, path, cls, num_classes)
            return PathResult(path, weight, theta, expanded, pushes)
        for u, w in graph.neighbors(v):
            ec = max(cls(v), cls(u))
            ng = g_cost[v] + w + alpha ** ec
            if ng < g_cost.get(u, math.inf):
                g_cost[u] = ng
                parent[u] = v
                heapq.heappush(heap, (ng + h(u), next(counter), u))
                pushes += 1
    raise NoPathError(f"no path from {start!r} to {goal!r}")
