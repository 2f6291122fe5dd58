"""Singular link diagrams and colored trivalent graphs as rotation systems.

A diagram node has four slots numbered counterclockwise.  At a classical
crossing the strand through slots (0, 2) passes over the strand through
slots (1, 3).  A singular node is a rigid transverse double point; strands
also go straight through it (slot s to slot s+2).

Graph vertices have three slots, again counterclockwise.  Both objects are
validated on construction: every slot is used exactly once and the rotation
system has genus 0.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .coeff import TetLabels, admissible
from .errors import DanglingEdge, NotPlanar, ParseError

KINDS = ("crossing", "singular")


@dataclass(frozen=True)
class Node:
    id: int
    kind: str


@dataclass(frozen=True)
class Edge:
    id: int
    ends: tuple  # ((node, slot), (node, slot))


def _rotation_faces(darts_at: dict, arity: dict, other_end: dict) -> int:
    """Count faces of a rotation system.

    ``darts_at`` maps (vertex, slot) -> dart, ``other_end`` maps a dart to the
    (vertex, slot) at the far end of its edge, ``arity`` gives slot counts.
    """
    seen = set()
    faces = 0
    for start in darts_at:
        if start in seen:
            continue
        faces += 1
        cur = start
        while cur not in seen:
            seen.add(cur)
            v, s = other_end[cur]
            cur = (v, (s + 1) % arity[v])
    return faces


def _components(vertices: Iterable, adjacency: dict) -> int:
    seen, comps = set(), 0
    for v in vertices:
        if v in seen:
            continue
        comps += 1
        stack = [v]
        while stack:
            u = stack.pop()
            if u in seen:
                continue
            seen.add(u)
            stack.extend(adjacency.get(u, ()))
    return comps


def _check_rotation(vertex_ids: Sequence[int], arity: dict, edges, label: str):
    """Validate slot usage and the Euler characteristic; return slot map."""
    slot_of = {}
    for e in edges:
        if len(e.ends) != 2:
            raise ParseError(f"edge {e.id} must have exactly two ends")
        for end, (v, s) in enumerate(e.ends):
            if v not in arity:
                raise ParseError(f"edge {e.id} refers to unknown {label} {v}")
            if not 0 <= s < arity[v]:
                raise ParseError(f"edge {e.id}: slot {s} out of range at {label} {v}")
            if (v, s) in slot_of:
                raise DanglingEdge(f"slot {s} of {label} {v} is used twice")
            slot_of[(v, s)] = (e.id, end)
    for v in vertex_ids:
        for s in range(arity[v]):
            if (v, s) not in slot_of:
                raise DanglingEdge(f"slot {s} of {label} {v} is unused")
    by_id = {e.id: e for e in edges}
    other_end = {}
    for (v, s), (eid, end) in slot_of.items():
        other_end[(v, s)] = tuple(by_id[eid].ends[1 - end])
    adjacency = {}
    for e in edges:
        (u, _), (w, _) = e.ends
        adjacency.setdefault(u, []).append(w)
        adjacency.setdefault(w, []).append(u)
    V, E = len(vertex_ids), len(edges)
    F = _rotation_faces(slot_of, arity, other_end)
    C = _components(vertex_ids, adjacency)
    if V - E + F != 2 * C:
        raise NotPlanar(f"rotation system has V-E+F = {V - E + F}, expected {2 * C}")
    return slot_of


@dataclass(frozen=True)
class SingularDiagram:
    nodes: tuple
    edges: tuple
    free_circles: int = 0
    _slots: dict = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple(
            Edge(e.id, tuple(tuple(x) for x in e.ends)) for e in self.edges))
        ids = [n.id for n in self.nodes]
        if len(set(ids)) != len(ids):
            raise ParseError("duplicate node id")
        if len({e.id for e in self.edges}) != len(self.edges):
            raise ParseError("duplicate edge id")
        for n in self.nodes:
            if n.kind not in KINDS:
                raise ParseError(f"node {n.id}: unknown kind {n.kind!r}")
        if self.free_circles < 0:
            raise ParseError("free_circles must be non-negative")
        arity = {i: 4 for i in ids}
        slots = _check_rotation(ids, arity, self.edges, "node")
        object.__setattr__(self, "_slots", slots)

    # -- queries ----------------------------------------------------------
    @property
    def kinds(self) -> dict:
        return {n.id: n.kind for n in self.nodes}

    def edge(self, eid: int) -> Edge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise KeyError(eid)

    def edge_at(self, node: int, slot: int) -> tuple[int, int]:
        """(edge id, end index) occupying a slot."""
        return self._slots[(node, slot)]

    def count(self, kind: str) -> int:
        return sum(1 for n in self.nodes if n.kind == kind)

    def face_count(self) -> int:
        by_id = {e.id: e for e in self.edges}
        other = {k: tuple(by_id[eid].ends[1 - end]) for k, (eid, end) in self._slots.items()}
        return _rotation_faces(self._slots, {n.id: 4 for n in self.nodes}, other)

    def strand_components(self) -> list[list[tuple[int, int]]]:
        """Components traced straight through every node.

        Each component is a list of (edge id, direction) steps, direction 0
        meaning the edge is traversed from ends[0] to ends[1].  The starting
        edge and direction are the smallest available, so the orientation
        is deterministic.
        """
        by_id = {e.id: e for e in self.edges}
        used = set()
        comps = []
        for e in sorted(by_id):
            if e in used:
                continue
            comp = []
            eid, d = e, 0
            while eid not in used:
                used.add(eid)
                comp.append((eid, d))
                node, slot = by_id[eid].ends[1 - d]
                eid, end = self._slots[(node, (slot + 2) % 4)]
                d = end  # leaving through ends[end]
            comps.append(comp)
        return comps

    def crossing_signs(self) -> dict:
        """Sign of every classical crossing w.r.t. :meth:`strand_components`."""
        by_id = {e.id: e for e in self.edges}
        enter = {}
        for comp in self.strand_components():
            for eid, d in comp:
                node, slot = by_id[eid].ends[1 - d]
                enter.setdefault(node, []).append(slot)
        signs = {}
        for n in self.nodes:
            if n.kind != "crossing":
                continue
            slots = enter[n.id]
            over_fwd = 0 in slots
            under_fwd = 1 in slots
            signs[n.id] = 1 if over_fwd == under_fwd else -1
        return signs

    def writhe(self) -> int:
        return sum(self.crossing_signs().values())

    # -- serialization ----------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "free_circles": self.free_circles,
            "nodes": [{"id": n.id, "kind": n.kind} for n in self.nodes],
            "edges": [{"id": e.id, "ends": [list(x) for x in e.ends]} for e in self.edges],
        }


def render_diagram(d: SingularDiagram) -> str:
    return json.dumps(d.to_dict(), sort_keys=True)


def _load_json(text):
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from None


def _parse_edges(raw, with_color=False):
    if not isinstance(raw, list):
        raise ParseError("'edges' must be a list")
    out = []
    for item in raw:
        try:
            ends = tuple((int(v), int(s)) for v, s in item["ends"])
            eid = int(item["id"])
            col = int(item["color"]) if with_color else None
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad edge record {item!r}: {exc}") from None
        out.append(GraphEdge(eid, ends, col) if with_color else Edge(eid, ends))
    return out


def parse_diagram(text) -> SingularDiagram:
    data = _load_json(text)
    if not isinstance(data, dict):
        raise ParseError("diagram must be a JSON object")
    try:
        nodes = [Node(int(n["id"]), str(n["kind"])) for n in data.get("nodes", [])]
        circles = int(data.get("free_circles", 0))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad node record: {exc}") from None
    return SingularDiagram(tuple(nodes), tuple(_parse_edges(data.get("edges", []))), circles)


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def unknot() -> SingularDiagram:
    return SingularDiagram((), (), 1)


def diagram_from_pd(pd: Sequence[Sequence[int]], singular: Iterable[int] = ()) -> SingularDiagram:
    """Diagram from a PD code.

    Each entry X[i, j, k, l] lists edge labels counterclockwise starting at
    the incoming under-strand, so the over-strand is j-l.  Entries whose
    index is in ``singular`` become singular nodes (their labels are read
    the same way).
    """
    singular = set(singular)
    where = {}
    nodes = []
    for idx, (i, j, k, l) in enumerate(pd):
        kind = "singular" if idx in singular else "crossing"
        nodes.append(Node(idx, kind))
        # slot order j, k, l, i keeps the rotation and puts the over-strand on (0, 2)
        for slot, lab in enumerate((j, k, l, i)):
            where.setdefault(lab, []).append((idx, slot))
    edges = []
    for eid, lab in enumerate(sorted(where)):
        ends = where[lab]
        if len(ends) != 2:
            raise DanglingEdge(f"PD label {lab} appears {len(ends)} times")
        edges.append(Edge(eid, tuple(ends)))
    return SingularDiagram(tuple(nodes), tuple(edges), 0)


# braid-closure slot layout: strands run left to right, position 0 on top
_SLOTS_POS = {"TL": 0, "BL": 1, "BR": 2, "TR": 3}   # over-strand TL -> BR
_SLOTS_NEG = {"TL": 3, "BL": 0, "BR": 1, "TR": 2}   # over-strand BL -> TR


def braid_closure(strands: int, word: Sequence[tuple[int, str]]) -> SingularDiagram:
    """Closure of a (singular) braid.

    ``word`` is a sequence of (i, kind) with 0 <= i < strands-1 acting on
    positions i and i+1; kind is '+' or '-' for a crossing (over-strand
    going down-right or up-right) and 's' for a singular point.
    """
    if strands < 1:
        raise ValueError("need at least one strand")
    nodes, edges = [], []
    start = [None] * strands
    cur = [None] * strands

    def link(a, b):
        edges.append(Edge(len(edges), (a, b)))

    for idx, (i, kind) in enumerate(word):
        if not 0 <= i < strands - 1:
            raise ValueError(f"generator {i} out of range")
        if kind == "s":
            slots, nkind = _SLOTS_POS, "singular"
        elif kind in "+-":
            slots, nkind = (_SLOTS_POS if kind == "+" else _SLOTS_NEG), "crossing"
        else:
            raise ValueError(f"unknown letter {kind!r}")
        nodes.append(Node(idx, nkind))
        for pos, corner in ((i, "TL"), (i + 1, "BL")):
            end = (idx, slots[corner])
            if cur[pos] is None:
                start[pos] = end
            else:
                link(cur[pos], end)
        cur[i] = (idx, slots["TR"])
        cur[i + 1] = (idx, slots["BR"])
    circles = 0
    for pos in range(strands):
        if cur[pos] is None:
            circles += 1
        else:
            link(cur[pos], start[pos])
    return SingularDiagram(tuple(nodes), tuple(edges), circles)


# ---------------------------------------------------------------------------
# colored trivalent graphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GraphEdge:
    id: int
    ends: tuple
    color: int


@dataclass(frozen=True)
class ColoredGraph:
    """Planar trivalent graph with colored edges plus colored free loops.

    Construction checks only the structure (slots, genus); admissibility is
    reported by :func:`validate_graph` and handled by evaluators.
    """

    vertices: tuple
    edges: tuple
    free_loops: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "free_loops", tuple(self.free_loops))
        object.__setattr__(self, "edges", tuple(
            GraphEdge(e.id, tuple(tuple(x) for x in e.ends), e.color) for e in self.edges))
        for e in self.edges:
            if e.color < 0:
                raise ParseError(f"edge {e.id} has negative color")
        if any(c < 0 for c in self.free_loops):
            raise ParseError("negative free loop color")
        _check_rotation(self.vertices, {v: 3 for v in self.vertices}, self.edges, "vertex")

    def darts(self) -> dict:
        """(vertex, slot) -> (edge id, end)."""
        out = {}
        for e in self.edges:
            for end, (v, s) in enumerate(e.ends):
                out[(v, s)] = (e.id, end)
        return out

    def vertex_colors(self, v: int) -> tuple[int, int, int]:
        cols = {e.id: e.color for e in self.edges}
        d = self.darts()
        return tuple(cols[d[(v, s)][0]] for s in range(3))

    def to_dict(self) -> dict:
        return {
            "free_loops": list(self.free_loops),
            "vertices": [{"id": v} for v in self.vertices],
            "edges": [{"id": e.id, "ends": [list(x) for x in e.ends], "color": e.color}
                      for e in self.edges],
        }


def render_graph(g: ColoredGraph) -> str:
    return json.dumps(g.to_dict(), sort_keys=True)


def parse_graph(text) -> ColoredGraph:
    data = _load_json(text)
    if not isinstance(data, dict):
        raise ParseError("graph must be a JSON object")
    try:
        verts = tuple(int(v["id"]) for v in data.get("vertices", []))
        loops = tuple(int(c) for c in data.get("free_loops", []))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad vertex record: {exc}") from None
    return ColoredGraph(verts, tuple(_parse_edges(data.get("edges", []), True)), loops)


def validate_graph(g) -> list[str]:
    """Violations that make a graph unevaluable or zero.

    Accepts a :class:`ColoredGraph` or its raw JSON; structural problems
    (dangling slots, non-planar rotation) are reported instead of raised.
    """
    if not isinstance(g, ColoredGraph):
        try:
            g = parse_graph(g)
        except NotPlanar as exc:
            return [f"not planar: {exc}"]
        except ParseError as exc:
            return [f"malformed: {exc}"]
    out = []
    for v in g.vertices:
        cols = g.vertex_colors(v)
        if not admissible(*cols):
            out.append(f"inadmissible vertex {v}: colors {cols}")
    return out


def graph_raw(vertices, edges, free_loops=()) -> str:
    """JSON for a graph without validating it (for negative fixtures)."""
    return json.dumps({
        "free_loops": list(free_loops),
        "vertices": [{"id": v} for v in vertices],
        "edges": [{"id": i, "ends": [list(a), list(b)], "color": c}
                  for i, (a, b, c) in enumerate(edges)],
    })


def circle_graph(n: int) -> ColoredGraph:
    return ColoredGraph((), (), (n,))


def theta_graph(a: int, b: int, c: int) -> ColoredGraph:
    """Two vertices joined by edges colored a, b, c (in planar order)."""
    # vertex 0 ccw (a, b, c); vertex 1 sees them in reverse
    edges = (GraphEdge(0, ((0, 0), (1, 0)), a),
             GraphEdge(1, ((0, 1), (1, 2)), b),
             GraphEdge(2, ((0, 2), (1, 1)), c))
    return ColoredGraph((0, 1), edges)


def tetrahedron_graph(labels: TetLabels) -> ColoredGraph:
    """Planar tetrahedron whose vertex triples follow ``labels``.

    Vertex 3 sits in the middle of the triangle formed by 0, 1, 2.
    """
    col = labels.by_vertex_pair()
    # counterclockwise neighbor order at each vertex for the planar embedding
    # with 0, 1, 2 counterclockwise on the outside and 3 inside
    rot = {0: (1, 3, 2), 1: (2, 3, 0), 2: (0, 3, 1), 3: (0, 1, 2)}
    slot = {(v, w): rot[v].index(w) for v in rot for w in rot[v]}
    edges = []
    for k, (i, j) in enumerate(sorted(col)):
        edges.append(GraphEdge(k, ((i, slot[(i, j)]), (j, slot[(j, i)])), col[(i, j)]))
    return ColoredGraph((0, 1, 2, 3), tuple(edges))


@dataclass(frozen=True)
class GraphSum:
    """Linear combination of colored graphs; zero coefficients are dropped."""

    terms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(
            (c, g) for c, g in self.terms if not c.is_zero()))

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)


def planar_graph(points, edges, free_loops=()) -> ColoredGraph:
    """Trivalent graph from a straight-line drawing.

    ``points`` maps vertex -> (x, y); ``edges`` is a list of (u, v, color).
    The counterclockwise slot order is read off the edge angles.
    """
    import math
    spokes = {v: [] for v in points}
    for k, (u, v, _) in enumerate(edges):
        for end, (a, b) in enumerate(((u, v), (v, u))):
            (x0, y0), (x1, y1) = points[a], points[b]
            spokes[a].append((math.atan2(y1 - y0, x1 - x0), k, end))
    ends = {}
    for v, lst in spokes.items():
        for s, (_, k, end) in enumerate(sorted(lst)):
            ends[(k, end)] = (v, s)
    gedges = tuple(GraphEdge(k, (ends[(k, 0)], ends[(k, 1)]), c)
                   for k, (_, _, c) in enumerate(edges))
    return ColoredGraph(tuple(sorted(points)), gedges, tuple(free_loops))


def prism_graph(colors) -> ColoredGraph:
    """Triangular prism; ``colors`` lists the nine edge colors in the order
    inner triangle, outer triangle, spokes."""
    import math
    pts = {}
    for k in range(3):
        ang = math.pi / 2 + 2 * math.pi * k / 3
        pts[k] = (math.cos(ang), math.sin(ang))
        pts[k + 3] = (3 * math.cos(ang), 3 * math.sin(ang))
    pairs = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]
    return planar_graph(pts, [(u, v, c) for (u, v), c in zip(pairs, colors)])


def cube_graph(colors) -> ColoredGraph:
    """Cube drawn as two nested squares; twelve edge colors, inner square,
    outer square, then spokes."""
    pts = {0: (1, 1), 1: (-1, 1), 2: (-1, -1), 3: (1, -1),
           4: (3, 3), 5: (-3, 3), 6: (-3, -3), 7: (3, -3)}
    pairs = [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4),
             (0, 4), (1, 5), (2, 6), (3, 7)]
    return planar_graph(pts, [(u, v, c) for (u, v), c in zip(pairs, colors)])


def fixture_names() -> list[str]:
    from importlib import resources
    root = resources.files("singjones.fixtures")
    return sorted(p.name[:-5] for p in root.iterdir()
                  if p.name.endswith(".json") and p.name != "six_two_table.json")


def load_fixture(name: str):
    """Shipped diagram or graph by name (see :func:`fixture_names`)."""
    from importlib import resources
    if name not in fixture_names():
        raise ParseError(f"unknown fixture {name!r}")
    text = resources.files("singjones.fixtures").joinpath(name + ".json").read_text()
    data = _load_json(text)
    return parse_graph(text) if "vertices" in data else parse_diagram(text)
