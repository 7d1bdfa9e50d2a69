import json
import math

import pytest

from semnav.generators import gen_hier_hsg, HierParams
from semnav.model import GraphFormatError, HSG, edge_class, load_hsg


def make_doc(**overrides):
    doc = {
        "num_layers": 2,
        "num_classes": 3,
        "nodes": [
            {"id": "a", "layer": 0, "pos": [0, 0, 0], "parent": "R", "class": 1},
            {"id": "b", "layer": 0, "pos": [1, 0, 0], "parent": "R", "class": 2},
            {"id": "R", "layer": 1, "pos": [0.5, 0, 0], "parent": None, "class": None},
        ],
        "edges": [{"u": "a", "v": "b"}],
    }
    doc.update(overrides)
    return doc


def test_load_smallest_graph():
    doc = {"num_layers": 1, "num_classes": 1,
           "nodes": [{"id": "only", "layer": 0, "pos": [0, 0, 0],
                      "parent": None, "class": 1}],
           "edges": []}
    hsg = load_hsg(json.dumps(doc))
    assert hsg.num_layers == 1
    assert hsg.node("only").node_class == 1


def test_load_minimal_hierarchy():
    hsg = load_hsg(json.dumps(make_doc()))
    assert hsg.num_layers == 2
    assert hsg.ancestor("a", 1) == "R"
    u, w = hsg.neighbors("a")[0]
    assert u == "b" and w == pytest.approx(1.0)


def test_missing_layer0_class():
    doc = make_doc()
    doc["nodes"][0] = {"id": "a", "layer": 0, "pos": [0, 0, 0], "parent": "R"}
    with pytest.raises(GraphFormatError, match="missing layer-0 class"):
        load_hsg(json.dumps(doc))


def test_invalid_json():
    with pytest.raises(GraphFormatError, match="invalid JSON"):
        load_hsg("{nope")


def test_dangling_parent():
    doc = make_doc()
    doc["nodes"][0]["parent"] = "ghost"
    with pytest.raises(GraphFormatError, match="dangling parent"):
        load_hsg(json.dumps(doc))


def test_dangling_edge():
    doc = make_doc(edges=[{"u": "a", "v": "zz"}])
    with pytest.raises(GraphFormatError, match="dangling endpoint"):
        load_hsg(json.dumps(doc))


def test_cross_layer_edge():
    doc = make_doc(edges=[{"u": "a", "v": "b"}, {"u": "a", "v": "R"}])
    with pytest.raises(GraphFormatError, match="crosses layers"):
        load_hsg(json.dumps(doc))


def test_disconnected_layer():
    doc = make_doc(edges=[])
    with pytest.raises(GraphFormatError, match="disconnected"):
        load_hsg(json.dumps(doc))


def test_stored_weights_rejected():
    doc = make_doc(edges=[{"u": "a", "v": "b", "weight": 5.0}])
    with pytest.raises(GraphFormatError, match="weights"):
        load_hsg(json.dumps(doc))


def test_2d_positions_padded():
    doc = make_doc()
    for node in doc["nodes"]:
        node["pos"] = node["pos"][:2]
    hsg = load_hsg(json.dumps(doc))
    assert hsg.pos("a") == (0.0, 0.0, 0.0)


def test_ancestor_chain():
    hsg = gen_hier_hsg(HierParams(rooms=2, nodes_per_room=3, layers=3), seed=1)
    place = hsg.layer_nodes(0)[0]
    room = hsg.ancestor(place, 1)
    assert hsg.node(room).layer == 1
    assert hsg.ancestor(place, 2) == "B0"
    assert hsg.ancestor(place, 0) == place
    assert hsg.ancestor(hsg.ancestor(place, 1), 2) == hsg.ancestor(place, 2)


def test_ancestor_below_own_layer_rejected():
    hsg = load_hsg(json.dumps(make_doc()))
    with pytest.raises(ValueError):
        hsg.ancestor("R", 0)


def test_induced_subgraphs_partition_layer0():
    hsg = gen_hier_hsg(HierParams(rooms=3, nodes_per_room=5, layers=2), seed=3)
    seen = []
    for room in hsg.layer_nodes(1):
        seen.extend(hsg.induced_subgraph(room).nodes())
    assert sorted(seen) == sorted(hsg.layer_nodes(0))


def test_induced_subgraph_contents():
    hsg = load_hsg(json.dumps(make_doc()))
    sub = hsg.induced_subgraph("R")
    assert sorted(sub.nodes()) == ["a", "b"]
    assert sub.num_edges() == 1


def test_border_nodes_match_edge_scan():
    hsg = gen_hier_hsg(HierParams(rooms=3, nodes_per_room=5, layers=2), seed=9)
    for room in hsg.layer_nodes(1):
        expected = set()
        for nid in hsg.induced_subgraph(room).nodes():
            for v, _ in hsg.neighbors(nid):
                if hsg.ancestor(v, 1) != room:
                    expected.add(nid)
        assert set(hsg.border_nodes(room)) == expected


def test_border_symmetry_across_doorways():
    hsg = gen_hier_hsg(HierParams(rooms=2, nodes_per_room=4, layers=2,
                                  doorways_per_pair=1), seed=5)
    r0, r1 = hsg.layer_nodes(1)
    b0, b1 = hsg.border_nodes(r0), hsg.border_nodes(r1)
    assert len(b0) == 1 and len(b1) == 1
    # the doorway connects exactly the two border nodes
    assert any(v == b1[0] for v, _ in hsg.neighbors(b0[0]))


def test_isolated_room_has_no_borders():
    doc = {"num_layers": 2, "num_classes": 2,
           "nodes": [{"id": "a", "layer": 0, "pos": [0, 0, 0], "parent": "R", "class": 1},
                     {"id": "R", "layer": 1, "pos": [0, 0, 0], "parent": None, "class": None}],
           "edges": []}
    hsg = load_hsg(json.dumps(doc))
    assert hsg.border_nodes("R") == []


def test_edge_class():
    assert edge_class(1, 3) == 3
    assert edge_class(2, 2) == 2
    assert edge_class(1, 1) == 1
    assert edge_class(3, 1) == edge_class(1, 3)
    with pytest.raises(ValueError):
        edge_class(0, 1)
    with pytest.raises(ValueError):
        edge_class(1, 4, num_classes=3)


def test_with_classes_copy():
    hsg = load_hsg(json.dumps(make_doc()))
    relabeled = hsg.with_classes({"a": 3})
    assert relabeled.node_class("a") == 3
    assert hsg.node_class("a") == 1


def test_roundtrip_serialization():
    hsg = gen_hier_hsg(HierParams(rooms=3, nodes_per_room=4, layers=3), seed=11)
    again = load_hsg(hsg.to_json())
    assert again.to_json() == hsg.to_json()
