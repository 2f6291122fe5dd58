import json

import pytest
from hypothesis import given, strategies as st

from singjones.coeff import TetLabels
from singjones.diagram import (braid_closure, cube_graph, diagram_from_pd,
                               fixture_names, graph_raw, load_fixture, parse_diagram,
                               parse_graph, prism_graph, render_diagram, render_graph,
                               tetrahedron_graph, theta_graph, unknot, validate_graph)
from singjones.errors import DanglingEdge, NotPlanar, ParseError
from singjones.families import st_diagram

SIX_TWO = [[1, 4, 2, 5], [5, 10, 6, 11], [3, 9, 4, 8], [9, 3, 10, 2], [7, 12, 8, 1],
           [11, 6, 12, 7]]


def test_smallest_singular_knot():
    d = parse_diagram(json.dumps({
        "free_circles": 0, "nodes": [{"id": 0, "kind": "singular"}],
        "edges": [{"id": 0, "ends": [[0, 0], [0, 1]]}, {"id": 1, "ends": [[0, 2], [0, 3]]}]}))
    assert len(d.nodes) == 1 and len(d.edges) == 2


def test_empty_unknot():
    d = parse_diagram(b'{"free_circles": 1, "nodes": [], "edges": []}')
    assert d == unknot()


def test_unused_slot():
    with pytest.raises(DanglingEdge):
        parse_diagram(json.dumps({"nodes": [{"id": 0, "kind": "crossing"}],
                                  "edges": [{"id": 0, "ends": [[0, 0], [0, 1]]}]}))


def test_double_slot():
    with pytest.raises(DanglingEdge):
        parse_diagram(json.dumps({"nodes": [{"id": 0, "kind": "crossing"}], "edges": [
            {"id": 0, "ends": [[0, 0], [0, 1]]}, {"id": 1, "ends": [[0, 1], [0, 2]]},
            {"id": 2, "ends": [[0, 3], [0, 3]]}]}))


@pytest.mark.parametrize("text", ["{", "[]", '{"nodes": [{"id": 0}]}',
                                  '{"nodes": [{"id": 0, "kind": "virtual"}], "edges": []}',
                                  '{"edges": [{"id": 0}]}'])
def test_malformed(text):
    with pytest.raises(ParseError):
        parse_diagram(text)


def test_nonplanar_diagram():
    # one crossing with slots 0-2 and 1-3 joined has genus 1
    with pytest.raises(NotPlanar):
        parse_diagram(json.dumps({
            "nodes": [{"id": 0, "kind": "crossing"}],
            "edges": [{"id": 0, "ends": [[0, 0], [0, 2]]}, {"id": 1, "ends": [[0, 1], [0, 3]]}]}))


def test_validate_graph():
    assert validate_graph(theta_graph(1, 1, 2)) == []
    v = validate_graph(theta_graph(1, 1, 3))
    assert v and all("inadmissible" in x for x in v)
    k4 = graph_raw([0, 1, 2, 3], [((0, 0), (1, 0), 2), ((0, 1), (2, 0), 2), ((0, 2), (3, 0), 2),
                                  ((1, 1), (2, 1), 2), ((1, 2), (3, 1), 2), ((2, 2), (3, 2), 2)])
    v = validate_graph(k4)
    assert len(v) == 1 and v[0].startswith("not planar")
    assert validate_graph("{") [0].startswith("malformed")


def test_planar_builders():
    assert validate_graph(tetrahedron_graph(TetLabels(2, 2, 2, 2, 2, 2))) == []
    assert validate_graph(prism_graph([2] * 9)) == []
    assert validate_graph(cube_graph([2] * 12)) == []


def test_fixtures_are_planar():
    for name in fixture_names():
        obj = load_fixture(name)
        assert obj is not None


def test_six_two_from_pd():
    d = diagram_from_pd(SIX_TWO)
    assert len(d.nodes) == 6 and len(d.strand_components()) == 1
    assert d.face_count() == 8
    assert load_fixture("six_two") == d


def test_st_diagram_counts():
    d = st_diagram(1, 0)
    assert (len(d.nodes), len(d.edges)) == (1, 2)
    d = st_diagram(2, 0)
    assert d.count("singular") == 2 and len(d.edges) == 4
    for k in range(1, 4):
        for l in range(3):
            assert len(st_diagram(k, l).nodes) == k + l


def test_writhe():
    assert braid_closure(2, [(0, "+")] * 3).writhe() == 3
    assert braid_closure(2, [(0, "-")]).writhe() == -1
    assert braid_closure(3, [(0, "+"), (1, "-")]).writhe() == 0


words = st.lists(st.tuples(st.integers(0, 2), st.sampled_from("+-s")), max_size=6)


@given(words)
def test_roundtrip(word):
    d = braid_closure(4, word)
    assert parse_diagram(render_diagram(d)) == d
    # Euler per component: V - E + F = 2, with E = 2V
    assert d.face_count() == len(d.nodes) + 2 * _node_components(d)


def _node_components(d):
    parent = {n.id: n.id for n in d.nodes}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x
    for e in d.edges:
        parent[find(e.ends[0][0])] = find(e.ends[1][0])
    return len({find(x) for x in parent})


def test_graph_roundtrip():
    g = cube_graph([2, 2, 2, 2, 1, 1, 1, 1, 1, 1, 1, 1])
    assert parse_graph(render_graph(g)) == g
