"""Synthetic graph generators: grid worlds, multi-room hierarchies, disks.

All generators are deterministic for a fixed seed: identical parameters
produce byte-identical serialized graphs.
"""

from __future__ import annotations

import importlib.resources
import itertools
import math
import random
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .model import HSG, load_hsg


def gen_grid_world(rows: int, cols: int, class_map, spacing: float = 1.0,
                   num_classes: int = 3) -> HSG:
    """4-connected lattice of cells under a single root node.

    `class_map` is either a callable (row, col) -> class or a nested
    sequence indexed [row][col].
    """
    if rows < 1 or cols < 1:
        raise ValueError("rows and cols must be >= 1")
    if callable(class_map):
        cell_class = class_map
    else:
        cell_class = lambda r, c: class_map[r][c]

    nodes = []
    for r in range(rows):
        for c in range(cols):
            cls = cell_class(r, c)
            if not 1 <= cls <= num_classes:
                raise ValueError(f"cell ({r},{c}): class {cls} out of range")
            nodes.append({
                "id": f"c{r}_{c}",
                "layer": 0,
                "pos": [c * spacing, r * spacing, 0.0],
                "parent": "root",
                "class": cls,
            })
    cx = (cols - 1) * spacing / 2.0
    cy = (rows - 1) * spacing / 2.0
    nodes.append({"id": "root", "layer": 1, "pos": [cx, cy, 0.0],
                  "parent": None, "class": None})
    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append({"u": f"c{r}_{c}", "v": f"c{r}_{c + 1}"})
            if r + 1 < rows:
                edges.append({"u": f"c{r}_{c}", "v": f"c{r + 1}_{c}"})
    return HSG.from_dict({"num_layers": 2, "num_classes": num_classes,
                          "nodes": nodes, "edges": edges})


# Grid-world demo map: 1 = road, 2 = grass, 3 = river. A river with one
# ford splits the map; grass borders the river banks.
DEMO_GRID = [
    [1, 1, 2, 3, 1],
    [1, 1, 2, 3, 1],
    [1, 1, 2, 1, 1],
    [1, 1, 2, 3, 1],
    [1, 1, 2, 3, 1],
]

DEMO_GRID_START = "c0_0"
DEMO_GRID_GOAL = "c4_4"


def demo_grid_world() -> HSG:
    """The bundled road/grass/river fixture used by the examples and tests."""
    return gen_grid_world(5, 5, DEMO_GRID)


def gen_random_graph(num_nodes: int, num_edges: int, num_classes: int, seed: int,
                     span: float = 10.0,
                     class_weights: Optional[Sequence[float]] = None) -> HSG:
    """Random connected single-room graph (one layer-0 layer plus a root)."""
    if num_nodes < 1:
        raise ValueError("num_nodes must be >= 1")
    min_edges = num_nodes - 1
    max_edges = num_nodes * (num_nodes - 1) // 2
    num_edges = max(min_edges, min(num_edges, max_edges))
    rng = random.Random(seed)
    weights = list(class_weights) if class_weights else [1.0] * num_classes
    ids = [f"n{i}" for i in range(num_nodes)]
    pos = {i: (rng.uniform(0, span), rng.uniform(0, span), 0.0) for i in ids}
    cls = {i: rng.choices(range(1, num_classes + 1), weights=weights)[0] for i in ids}

    edge_set = set()
    shuffled = ids[:]
    rng.shuffle(shuffled)
    for a, b in zip(shuffled, shuffled[1:]):  # random spanning tree
        edge_set.add((min(a, b), max(a, b)))
    candidates = [(min(a, b), max(a, b)) for a, b in itertools.combinations(ids, 2)
                  if (min(a, b), max(a, b)) not in edge_set]
    rng.shuffle(candidates)
    for e in candidates[: num_edges - len(edge_set)]:
        edge_set.add(e)

    cx = sum(pos[i][0] for i in ids) / num_nodes
    cy = sum(pos[i][1] for i in ids) / num_nodes
    nodes = [{"id": i, "layer": 0, "pos": list(pos[i]), "parent": "root",
              "class": cls[i]} for i in ids]
    nodes.append({"id": "root", "layer": 1, "pos": [cx, cy, 0.0],
                  "parent": None, "class": None})
    edges = [{"u": u, "v": v} for u, v in sorted(edge_set)]
    return HSG.from_dict({"num_layers": 2, "num_classes": num_classes,
                          "nodes": nodes, "edges": edges})


@dataclass
class HierParams:
    """Parameters for the multi-room hierarchical generator."""

    rooms: int = 4
    nodes_per_room: int = 8
    doorways_per_pair: int = 1
    layers: int = 3               # 2 = places+rooms, 3 = +building
    room_spacing: float = 12.0
    room_radius: float = 4.0
    num_classes: int = 3
    class_weights: Tuple[float, ...] = (0.7, 0.2, 0.1)
    intra_degree: int = 3         # nearest-neighbor links inside a room
    prop2: bool = False           # tree room graph, clique rooms, one doorway


def gen_hier_hsg(params: HierParams, seed: int) -> HSG:
    """Rooms on a planar grid, each a connected layer-0 cluster.

    Adjacent rooms share doorway edges; room nodes sit at their cluster's
    centroid. With `prop2` set, the room adjacency is a spanning tree,
    each room is a clique and adjacent rooms share exactly one doorway,
    which makes the hierarchical search provably optimal on the instance.
    """
    if params.rooms < 1 or params.nodes_per_room < 1:
        raise ValueError("rooms and nodes_per_room must be >= 1")
    if params.layers not in (2, 3):
        raise ValueError("layers must be 2 or 3")
    rng = random.Random(seed)
    side = math.ceil(math.sqrt(params.rooms))
    centers = {}
    for idx in range(params.rooms):
        gr, gc = divmod(idx, side)
        centers[idx] = (gc * params.room_spacing, gr * params.room_spacing)

    # room adjacency from the placement grid
    adj_pairs = []
    for idx in range(params.rooms):
        gr, gc = divmod(idx, side)
        right = idx + 1
        if gc + 1 < side and right < params.rooms:
            adj_pairs.append((idx, right))
        below = idx + side
        if below < params.rooms:
            adj_pairs.append((idx, below))
    if params.prop2 and params.rooms > 1:
        # random spanning tree over the grid adjacency
        pairs = adj_pairs[:]
        rng.shuffle(pairs)
        joined = {0}
        tree = []
        while len(joined) < params.rooms:
            progressed = False
            for a, b in pairs:
                if (a in joined) != (b in joined):
                    tree.append((a, b))
                    joined.update((a, b))
                    progressed = True
            if not progressed:
                raise ValueError("room grid adjacency not connected")
        adj_pairs = sorted(tree)

    nodes = []
    edges = []
    room_points: Dict[int, Dict[str, Tuple[float, float]]] = {}
    for idx in range(params.rooms):
        cx, cy = centers[idx]
        pts = {}
        for j in range(params.nodes_per_room):
            ang = rng.uniform(0, 2 * math.pi)
            rad = params.room_radius * math.sqrt(rng.uniform(0, 1))
            pts[f"r{idx}n{j}"] = (cx + rad * math.cos(ang), cy + rad * math.sin(ang))
        room_points[idx] = pts
        ids = sorted(pts)
        if params.prop2 or len(ids) <= params.intra_degree:
            for a, b in itertools.combinations(ids, 2):
                edges.append({"u": a, "v": b})
        else:
            linked = set()
            for a in ids:
                dists = sorted((math.dist(pts[a], pts[b]), b) for b in ids if b != a)
                for _, b in dists[: params.intra_degree]:
                    linked.add((min(a, b), max(a, b)))
            # guarantee intra-room connectivity with a chain over sorted x
            by_x = sorted(ids, key=lambda i: pts[i])
            for a, b in zip(by_x, by_x[1:]):
                linked.add((min(a, b), max(a, b)))
            edges.extend({"u": a, "v": b} for a, b in sorted(linked))

    for idx in range(params.rooms):
        pts = room_points[idx]
        for nid, (x, y) in sorted(pts.items()):
            cls = rng.choices(range(1, params.num_classes + 1),
                              weights=params.class_weights)[0]
            nodes.append({"id": nid, "layer": 0, "pos": [x, y, 0.0],
                          "parent": f"R{idx}", "class": cls})

    doorways = 1 if params.prop2 else params.doorways_per_pair
    for a, b in adj_pairs:
        cross = sorted(
            (math.dist(room_points[a][u], room_points[b][v]), u, v)
            for u in room_points[a] for v in room_points[b])
        for _, u, v in cross[:doorways]:
            edges.append({"u": u, "v": v})

    room_parent = "B0" if params.layers == 3 else None
    for idx in range(params.rooms):
        pts = room_points[idx]
        cx = sum(p[0] for p in pts.values()) / len(pts)
        cy = sum(p[1] for p in pts.values()) / len(pts)
        nodes.append({"id": f"R{idx}", "layer": 1, "pos": [cx, cy, 0.0],
                      "parent": room_parent, "class": None})
    for a, b in adj_pairs:
        edges.append({"u": f"R{a}", "v": f"R{b}"})
    if params.layers == 3:
        gx = sum(c[0] for c in centers.values()) / params.rooms
        gy = sum(c[1] for c in centers.values()) / params.rooms
        nodes.append({"id": "B0", "layer": 2, "pos": [gx, gy, 0.0],
                      "parent": None, "class": None})
    return HSG.from_dict({"num_layers": params.layers,
                          "num_classes": params.num_classes,
                          "nodes": nodes, "edges": edges})


def disk_labeling(hsg: HSG, centers: Sequence[Sequence[float]], radius: float,
                  k: int) -> HSG:
    """Raise to class k every layer-0 node within `radius` of any center.

    Never lowers a node's class; nodes outside every disk are unchanged.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    if not 1 <= k <= hsg.num_classes:
        raise ValueError(f"class {k} out of range")
    padded = [tuple(c) + (0.0,) * (3 - len(c)) for c in centers]
    updates = {}
    for nid in hsg.layer_nodes(0):
        pos = hsg.pos(nid)
        if any(math.dist(pos, c) <= radius for c in padded):
            if k > hsg.node_class(nid):
                updates[nid] = k
    return hsg.with_classes(updates)
