"""Colored bracket of singular link diagrams via trivalent graphs.

A diagram is first expanded into a linear combination of colored planar
trivalent graphs: each crossing by crossing fusion, each singular point by
a square of four trivalent vertices.  Each graph is then reduced to a scalar
by local moves (loops, bubbles, triangles, 6j flips).
"""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor

from .coeff import admissible, bubble_coef, delta, fusion_coef, lambda_coef, sixj, tet, theta
from .diagram import ColoredGraph, GraphEdge, GraphSum, SingularDiagram
from .errors import InternalNotDivisible, OddColorOnSingular, ReductionStuck
from .qpoly import LaurentPoly, RF_ONE, RF_ZERO, RationalFn

# ---------------------------------------------------------------------------
# expansion
# ---------------------------------------------------------------------------


def _crossing_pieces(m: int):
    """Fusion channels of a crossing of two m-colored strands.

    Each piece is (coefficient, channel color); the graph piece has vertex P
    on slots 0, 1 and vertex Q on slots 2, 3 joined by the channel.
    """
    out = []
    for i in range(0, 2 * m + 1, 2):
        c = fusion_coef(m, m, i) * RationalFn(lambda_coef(i, m, m))
        out.append((c, i))
    return out


def expand_to_graphs(d: SingularDiagram, color: int) -> GraphSum:
    """Distribute crossing fusion over all crossings of ``d``."""
    if color < 0:
        raise ValueError("color must be non-negative")
    if color % 2 and d.count("singular"):
        raise OddColorOnSingular(f"color {color} is odd but the diagram has singular points")
    m = color
    vid = itertools.count()
    slot_end = {}        # (node, slot) -> (vertex, slot)
    fixed_edges = []     # (end, end, color) independent of the choice
    choices = []         # crossing nodes with their (P, Q) vertices
    for node in d.nodes:
        if node.kind == "crossing":
            P, Q = next(vid), next(vid)
            # P: (channel, leg0, leg1), Q: (leg2, leg3, channel)
            slot_end[(node.id, 0)] = (P, 1)
            slot_end[(node.id, 1)] = (P, 2)
            slot_end[(node.id, 2)] = (Q, 0)
            slot_end[(node.id, 3)] = (Q, 1)
            choices.append(((P, 0), (Q, 2)))
        else:
            V = [next(vid) for _ in range(4)]
            # corner s: (leg s, channel to s+1, channel from s-1)
            for s in range(4):
                slot_end[(node.id, s)] = (V[s], 0)
                fixed_edges.append(((V[s], 1), (V[(s + 1) % 4], 2), m // 2))
    for e in d.edges:
        fixed_edges.append((slot_end[e.ends[0]], slot_end[e.ends[1]], m))
    vertices = tuple(range(next(vid)))
    loops = (m,) * d.free_circles
    pieces = _crossing_pieces(m)
    terms = []
    for combo in itertools.product(pieces, repeat=len(choices)):
        c = RF_ONE
        edges = list(fixed_edges)
        for (cf, i), (p, q) in zip(combo, choices):
            c = c * cf
            edges.append((p, q, i))
        g = ColoredGraph(vertices, tuple(GraphEdge(k, (a, b), col)
                                         for k, (a, b, col) in enumerate(edges)), loops)
        terms.append((c, g))
    return GraphSum(tuple(terms))


# ---------------------------------------------------------------------------
# reduction
# ---------------------------------------------------------------------------

class _Graph:
    """Mutable rotation system on darts.

    ``opp`` pairs the two darts of an edge, ``nxt``/``prv`` give the
    counterclockwise order at a vertex, ``at`` the vertex of a dart.
    """

    def __init__(self):
        self.opp, self.nxt, self.prv, self.at, self.col = {}, {}, {}, {}, {}
        self.verts = {}      # vertex -> one of its darts
        self.deg = {}
        self.scalar = RF_ONE
        self._ids = itertools.count()

    @classmethod
    def from_colored(cls, g: ColoredGraph) -> "_Graph":
        G = cls()
        dart = {}
        for v in g.vertices:
            ds = [next(G._ids) for _ in range(3)]
            for s, x in enumerate(ds):
                dart[(v, s)] = x
                G.at[x] = v
                G.nxt[x] = ds[(s + 1) % 3]
                G.prv[x] = ds[(s - 1) % 3]
            G.verts[v] = ds[0]
            G.deg[v] = 3
        for e in g.edges:
            a, b = dart[e.ends[0]], dart[e.ends[1]]
            G.opp[a], G.opp[b] = b, a
            G.col[a] = G.col[b] = e.color
        G._vid = itertools.count(max(g.vertices, default=-1) + 1)
        for c in g.free_loops:
            G.scalar = G.scalar * RationalFn(delta(c))
        return G

    def copy(self) -> "_Graph":
        G = _Graph.__new__(_Graph)
        G.opp, G.nxt, G.prv = dict(self.opp), dict(self.nxt), dict(self.prv)
        G.at, G.col = dict(self.at), dict(self.col)
        G.verts, G.deg = dict(self.verts), dict(self.deg)
        G.scalar = self.scalar
        G._ids = self._ids
        G._vid = self._vid
        return G

    def darts_at(self, v):
        first = self.verts[v]
        out = [first]
        cur = self.nxt[first]
        while cur != first:
            out.append(cur)
            cur = self.nxt[cur]
        return out

    def n_edges(self):
        return len(self.opp) // 2

    def _drop_dart(self, x):
        v = self.at.pop(x)
        p, n = self.prv.pop(x), self.nxt.pop(x)
        self.deg[v] -= 1
        if self.deg[v] == 0:
            del self.verts[v], self.deg[v]
        else:
            self.nxt[p], self.prv[n] = n, p
            if self.verts[v] == x:
                self.verts[v] = n
        self.col.pop(x, None)

    def delete_edge(self, x):
        y = self.opp.pop(x)
        del self.opp[y]
        self._drop_dart(x)
        self._drop_dart(y)

    def _join(self, x, y):
        """Remove darts x, y (at a vertex about to vanish) and splice their
        edges into one.  Returns True when this closes a free circle."""
        a, b = self.opp[x], self.opp[y]
        c = self.col[x]
        for z in (x, y):
            del self.opp[z]
            self._drop_dart(z)
        if a == y:
            return True
        self.opp[a], self.opp[b] = b, a
        self.col[a] = self.col[b] = c
        return False

    def new_vertex(self, slots):
        """New vertex from ccw (far dart or None, color) pairs; returns its darts."""
        v = next(self._vid)
        ds = [next(self._ids) for _ in slots]
        k = len(ds)
        for s, (x, (far, c)) in enumerate(zip(ds, slots)):
            self.at[x] = v
            self.nxt[x], self.prv[x] = ds[(s + 1) % k], ds[(s - 1) % k]
            self.col[x] = c
            if far is not None:
                self.opp[x], self.opp[far] = far, x
        self.verts[v], self.deg[v] = ds[0], k
        return ds

    def remove_vertex(self, v):
        for x in self.darts_at(v):
            self.at.pop(x)
            self.nxt.pop(x)
            self.prv.pop(x)
            self.col.pop(x, None)
            self.opp.pop(x, None)
        del self.verts[v], self.deg[v]

    def faces(self):
        """Faces as dart lists; the face lies to the right of each dart."""
        seen, out = set(), []
        for d in self.opp:
            if d in seen:
                continue
            f, cur = [], d
            while cur not in seen:
                seen.add(cur)
                f.append(cur)
                cur = self.nxt[self.opp[cur]]
            out.append(f)
        return out


def _simplify(G: _Graph) -> bool:
    """Apply one cheap move.  Returns False when none applies; sets
    ``G.scalar`` to zero when the graph vanishes."""
    # inadmissible vertices and color-0 edges
    for v in list(G.verts):
        if G.deg[v] == 3:
            ds = G.darts_at(v)
            if not admissible(*(G.col[x] for x in ds)):
                G.scalar = RF_ZERO
                return True
    for x in list(G.opp):
        if x in G.opp and G.col[x] == 0:
            G.delete_edge(x)
            return True
    for v in list(G.verts):
        deg = G.deg[v]
        if deg == 1:
            # a strand ending at a vertex is zero unless its color is 0
            G.scalar = RF_ZERO
            return True
        if deg == 2:
            x, y = G.darts_at(v)
            if G.col[x] != G.col[y]:
                G.scalar = RF_ZERO
                return True
            c = G.col[x]
            if G._join(x, y):
                G.scalar = G.scalar * RationalFn(delta(c))
            return True
    return False


def _face_move(G: _Graph):
    """Bridge, bubble or triangle move if available.

    Returns None when no such move applies, else True.  Picks the smallest
    face; if it has four or more sides returns that face as a list.
    """
    faces = G.faces()
    face_of = {}
    for k, f in enumerate(faces):
        for d in f:
            face_of[d] = k
    for d in G.opp:
        if face_of[d] == face_of[G.opp[d]]:
            # a bridge carrying a nonzero color kills the graph
            G.scalar = RF_ZERO
            return True
    faces.sort(key=len)
    for f in faces:
        if len(f) == 2:
            _bubble(G, f)
            return True
        if len(f) == 3 and len({G.at[d] for d in f}) == 3:
            _triangle(G, f)
            return True
    return min(faces, key=len)


def _bubble(G: _Graph, f):
    d1, d2 = f
    u, w = G.at[d1], G.at[d2]
    # third darts: at u the one that is neither d1 nor opp(d2)
    tu = [x for x in G.darts_at(u) if x not in (d1, G.opp[d2])][0]
    tw = [x for x in G.darts_at(w) if x not in (d2, G.opp[d1])][0]
    a, d = G.col[tu], G.col[tw]
    b, c = G.col[d1], G.col[d2]
    k = bubble_coef(a, b, c, d)
    if k.is_zero():
        G.scalar = RF_ZERO
        return
    if G.opp[tu] == tw:
        # the whole component is a theta graph
        G.scalar = G.scalar * theta(a, b, c)
        G.remove_vertex(u)
        G.remove_vertex(w)
        return
    G.scalar = G.scalar * k
    fu, fw = G.opp[tu], G.opp[tw]
    G.remove_vertex(u)
    G.remove_vertex(w)
    G.opp[fu], G.opp[fw] = fw, fu


def _triangle(G: _Graph, f):
    d_uv, d_vw, d_wu = f
    u, v, w = G.at[d_uv], G.at[d_vw], G.at[d_wu]

    def ext(x, inside):
        return [y for y in G.darts_at(x) if y not in inside][0]

    eu = ext(u, (d_uv, G.opp[d_wu]))
    ev = ext(v, (d_vw, G.opp[d_uv]))
    ew = ext(w, (d_wu, G.opp[d_vw]))
    Ac, Bc, Cc = G.col[eu], G.col[ev], G.col[ew]
    if not admissible(Ac, Bc, Cc):
        G.scalar = RF_ZERO
        return
    val = tet(Ac, G.col[d_uv], G.col[d_wu], G.col[d_vw], Cc, Bc) / theta(Ac, Bc, Cc)
    G.scalar = G.scalar * val
    far = [(G.opp[eu], Ac), (G.opp[ew], Cc), (G.opp[ev], Bc)]
    for x in (u, v, w):
        G.remove_vertex(x)
    G.new_vertex(far)


def _flip(G: _Graph, d):
    """6j move on the edge of dart d; returns the branch graphs."""
    b = G.nxt[d]
    a = G.nxt[b]
    dj = G.opp[d]
    c = G.nxt[dj]
    dd = G.nxt[c]
    ca, cb, cc, cd, cj = G.col[a], G.col[b], G.col[c], G.col[dd], G.col[d]
    fa, fb, fc, fd = G.opp[a], G.opp[b], G.opp[c], G.opp[dd]
    U, V = G.at[d], G.at[dj]
    out = []
    for i in range(abs(ca - cc), ca + cc + 1, 2):
        k = sixj(ca, cb, i, cc, cd, cj)
        if k.is_zero():
            continue
        H = G.copy()
        H.remove_vertex(U)
        H.remove_vertex(V)
        L = H.new_vertex([(None, i), (fa, ca), (fc, cc)])
        R = H.new_vertex([(None, i), (fd, cd), (fb, cb)])
        H.opp[L[0]], H.opp[R[0]] = R[0], L[0]
        H.scalar = H.scalar * k
        out.append(H)
    return out


def _run(G: _Graph, stats) -> RationalFn:
    cap = 10 * (G.n_edges() ** 2 + 1)
    steps = 0
    while True:
        steps += 1
        stats["steps"] += 1
        if steps > cap:
            raise ReductionStuck(f"no progress after {cap} moves")
        if G.scalar.is_zero():
            return RF_ZERO
        if _simplify(G):
            continue
        if not G.opp:
            return G.scalar
        mv = _face_move(G)
        if mv is True:
            continue
        # 6j flip on an edge of a minimal face
        total = RF_ZERO
        for H in _flip(G, mv[0]):
            total = total + _run(H, stats)
        return total


def reduce_graph(g: ColoredGraph) -> RationalFn:
    """Kauffman bracket evaluation of a colored planar trivalent graph."""
    G = _Graph.from_colored(g)
    return _run(G, {"steps": 0})


def evaluate_sum(gs: GraphSum, workers: int | None = None) -> RationalFn:
    """Sum of coefficient times graph value, optionally on a thread pool."""
    terms = list(gs)
    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            vals = list(ex.map(lambda t: reduce_graph(t[1]), terms))
    else:
        vals = [reduce_graph(g) for _, g in terms]
    total = RF_ZERO
    for (c, _), v in zip(terms, vals):
        total = total + c * v
    return total


def framing_factor(m: int, writhe: int) -> LaurentPoly:
    """Monomial that removes the dependence of [d]_m on the writhe."""
    sign = -1 if (m * writhe) % 2 else 1
    return LaurentPoly.monomial(m * (m + 2) * writhe, sign)


def colored_jones(d: SingularDiagram, n2: int, normalized: bool = False,
                  writhe_correct: bool = False, workers: int | None = None) -> RationalFn:
    """[d]_{n2}, optionally divided by Delta_{n2} and framing-corrected.

    Classical diagrams give Laurent polynomials; diagrams with singular
    points give rational functions in general.
    """
    val = evaluate_sum(expand_to_graphs(d, n2), workers)
    if writhe_correct:
        val = val * RationalFn(framing_factor(n2, d.writhe()))
    if normalized:
        val = val / RationalFn(delta(n2))
    if not d.count("singular") and not val.is_poly():
        raise InternalNotDivisible(f"classical bracket is not a Laurent polynomial: {val}")
    return val
