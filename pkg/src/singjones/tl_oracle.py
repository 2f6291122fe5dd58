"""Brute-force Temperley-Lieb calculus used as ground truth.

Everything here works with explicit planar matchings.  Boundary points of
a rectangle are numbered bottom left-to-right, then top left-to-right, and a
closed loop is worth ``delta = -A^2 - A^-2``.

Besides the algebra (composition, tensor product, Jones-Wenzl projectors)
the module evaluates whole networks: colored trivalent graphs are blown up
into strands through projectors, and link diagrams are cabled with every
crossing resolved strand by strand.  This is exponential and only meant for
small inputs.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .errors import BoundaryMismatch, TooLarge
from .qpoly import A, ONE, RF_ONE, RF_ZERO, LaurentPoly, RationalFn

DELTA = -(A ** 2) - A ** -2
DEFAULT_BUDGET = 10 ** 6


@dataclass(frozen=True)
class PlanarMatching:
    """Non-crossing perfect matching of ``bottom + top`` boundary points.

    ``match[i]`` is the partner of point ``i``.
    """

    bottom: int
    top: int
    match: tuple

    def __post_init__(self):
        n = self.bottom + self.top
        m = tuple(self.match)
        object.__setattr__(self, "match", m)
        if len(m) != n or n % 2:
            raise ValueError("matching size does not fit the boundary")
        for i, j in enumerate(m):
            if not 0 <= j < n or j == i or m[j] != i:
                raise ValueError(f"not a perfect matching: {m}")
        # walk the boundary circle: bottom left-to-right, top right-to-left
        order = list(range(self.bottom)) + list(range(n - 1, self.bottom - 1, -1))
        pos = {p: k for k, p in enumerate(order)}
        stack = []
        for p in order:
            q = m[p]
            if pos[q] > pos[p]:
                stack.append(p)
            elif not stack or stack.pop() != q:
                raise ValueError(f"matching {m} is not planar")

    @classmethod
    def from_pairs(cls, bottom, top, pairs):
        m = [None] * (bottom + top)
        for i, j in pairs:
            m[i], m[j] = j, i
        return cls(bottom, top, tuple(m))

    def pairs(self):
        return [(i, j) for i, j in enumerate(self.match) if i < j]


class TLElement:
    """Linear combination of planar matchings with rational coefficients."""

    __slots__ = ("bottom", "top", "terms")

    def __init__(self, bottom: int, top: int, terms=None):
        self.bottom, self.top = bottom, top
        self.terms = {}
        for m, c in (terms or {}).items():
            if (m.bottom, m.top) != (bottom, top):
                raise BoundaryMismatch("matching boundary differs from element boundary")
            c = RationalFn.coerce(c)
            if not c.is_zero():
                self.terms[m] = c

    def _check(self, other):
        if (self.bottom, self.top) != (other.bottom, other.top):
            raise BoundaryMismatch("elements have different boundaries")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return TLElement(self.bottom, self.top, out)

    def __neg__(self):
        return TLElement(self.bottom, self.top, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        k = RationalFn.coerce(k)
        return TLElement(self.bottom, self.top, {m: c * k for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TLElement):
            return tl_compose(self, other)
        return self.scale(other)

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, TLElement):
            return NotImplemented
        return ((self.bottom, self.top) == (other.bottom, other.top)
                and set(self.terms) == set(other.terms)
                and all(self.terms[m] == other.terms[m] for m in self.terms))

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"TLElement({self.bottom}->{self.top}, {len(self.terms)} terms)"


def _stack(y: PlanarMatching, x: PlanarMatching):
    """Put ``x`` on top of ``y``; return (matching, closed loop count)."""
    if y.top != x.bottom:
        raise BoundaryMismatch(f"cannot stack: {y.top} top points vs {x.bottom} bottom points")
    k = y.top
    yb, xoff = y.bottom, y.bottom + y.top
    # global points: y-points 0..yb+k-1, x-points xoff..; middle y.top[t] ~ x.bottom[t]
    def arc(p):
        return y.match[p] if p < xoff else xoff + x.match[p - xoff]

    def glue(p):
        if yb <= p < xoff:
            return xoff + (p - yb)
        if xoff <= p < xoff + k:
            return yb + (p - xoff)
        return None

    ext = list(range(yb)) + list(range(xoff + k, xoff + k + x.top))
    new_index = {p: i for i, p in enumerate(ext)}
    out = [None] * len(ext)
    seen = set()
    for p in ext:
        if p in seen:
            continue
        cur = p
        seen.add(cur)
        while True:
            cur = arc(cur)
            seen.add(cur)
            g = glue(cur)
            if g is None:
                break
            seen.add(g)
            cur = g
        out[new_index[p]], out[new_index[cur]] = new_index[cur], new_index[p]
    loops = 0
    for p in range(yb, xoff):
        if p in seen:
            continue
        loops += 1
        cur = p
        while cur not in seen:
            seen.add(cur)
            g = glue(cur)
            seen.add(g)
            cur = arc(g)
    return PlanarMatching(yb, x.top, tuple(out)), loops


def tl_compose(x: TLElement, y: TLElement) -> TLElement:
    """``x`` stacked on top of ``y`` (apply y first)."""
    if y.top != x.bottom:
        raise BoundaryMismatch(f"top count {y.top} of y differs from bottom count {x.bottom} of x")
    out = {}
    for my, cy in y.terms.items():
        for mx, cx in x.terms.items():
            m, loops = _stack(my, mx)
            c = cx * cy * RationalFn(DELTA ** loops)
            out[m] = out[m] + c if m in out else c
    return TLElement(y.bottom, x.top, out)


def _tensor_matching(a: PlanarMatching, b: PlanarMatching) -> PlanarMatching:
    def place(m, p, boff, toff):
        return boff + p if p < m.bottom else toff + (p - m.bottom)

    nb = a.bottom + b.bottom
    out = [None] * (nb + a.top + b.top)
    for m, boff, toff in ((a, 0, nb), (b, a.bottom, nb + a.top)):
        for i, j in m.pairs():
            pi, pj = place(m, i, boff, toff), place(m, j, boff, toff)
            out[pi], out[pj] = pj, pi
    return PlanarMatching(nb, a.top + b.top, tuple(out))


def tensor(x: TLElement, y: TLElement) -> TLElement:
    """Side by side, ``x`` on the left."""
    out = {}
    for mx, cx in x.terms.items():
        for my, cy in y.terms.items():
            out[_tensor_matching(mx, my)] = cx * cy
    return TLElement(x.bottom + y.bottom, x.top + y.top, out)


def identity_matching(n: int) -> PlanarMatching:
    return PlanarMatching.from_pairs(n, n, [(i, n + i) for i in range(n)])


def identity(n: int) -> TLElement:
    return TLElement(n, n, {identity_matching(n): RF_ONE})


def hook(n: int, i: int) -> TLElement:
    """The generator e_i of TL_n (1 <= i < n): a cap and cup on strands i, i+1."""
    if not 1 <= i < n:
        raise ValueError(f"hook e_{i} does not exist in TL_{n}")
    pairs = [(i - 1, i), (n + i - 1, n + i)]
    pairs += [(j, n + j) for j in range(n) if j not in (i - 1, i)]
    return TLElement(n, n, {PlanarMatching.from_pairs(n, n, pairs): RF_ONE})


def _delta_tl(n: int) -> RationalFn:
    # Chebyshev recursion in the loop value, kept independent of coeff.delta
    a, b = RF_ONE, RationalFn(DELTA)
    for _ in range(n):
        a, b = b, RationalFn(DELTA) * b - a
    return a


@lru_cache(maxsize=None)
def jw(n: int) -> TLElement:
    """Jones-Wenzl projector f^(n) by the Wenzl recursion."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n <= 1:
        return identity(n)
    prev = tensor(jw(n - 1), identity(1))
    ratio = _delta_tl(n - 2) / _delta_tl(n - 1)
    return prev - (prev * hook(n, n - 1) * prev).scale(ratio)


def trace_closure(x: TLElement) -> RationalFn:
    """Markov trace: join top point t to bottom point t and count loops."""
    if x.bottom != x.top:
        raise BoundaryMismatch("trace needs equal top and bottom counts")
    n = x.bottom
    total = RF_ZERO
    for m, c in x.terms.items():
        seen, loops = set(), 0
        for p in range(n):
            if p in seen:
                continue
            loops += 1
            cur = p
            while cur not in seen:
                seen.add(cur)
                q = m.match[cur]
                seen.add(q)
                cur = q - n if q >= n else q + n
        total = total + c * RationalFn(DELTA ** loops)
    return total


# ---------------------------------------------------------------------------
# networks
# ---------------------------------------------------------------------------

class _Network:
    """Boxes of planar matchings glued along wires.

    A box is a list of ports and a list of (pairs over port indices,
    LaurentPoly coefficient) terms with a common denominator.  Each port lies
    on exactly one wire, and a wire joins exactly two ports.
    """

    def __init__(self):
        self.boxes = []       # [ports, terms, denominator]
        self.wire_of = {}     # port id -> wire id
        self.n_ports = 0
        self.scalar = RF_ONE

    def new_ports(self, k):
        ids = list(range(self.n_ports, self.n_ports + k))
        self.n_ports += k
        return ids

    def add_box(self, ports, terms, den=ONE):
        self.boxes.append((list(ports), terms, den))

    def add_element(self, x: TLElement):
        """Box for a TL element; returns (bottom ports, top ports)."""
        ports = self.new_ports(x.bottom + x.top)
        den = ONE
        for c in x.terms.values():
            den = _lcm(den, c.den)
        terms = []
        for m, c in x.terms.items():
            terms.append((m.pairs(), (c * RationalFn(den)).to_poly()))
        self.add_box(ports, terms, den)
        return ports[:x.bottom], ports[x.bottom:]

    def wire(self, p, q):
        for r in (p, q):
            if r in self.wire_of:
                raise ValueError(f"port {r} wired twice")
        w = len(self.wire_of) // 2
        self.wire_of[p] = self.wire_of[q] = w

    def evaluate(self, budget=DEFAULT_BUDGET) -> RationalFn:
        if len(self.wire_of) != self.n_ports:
            raise ValueError("network has unwired ports")
        order = self._order()
        states = {frozenset(): ONE}
        work = 0
        den = ONE
        for bi in order:
            ports, terms, bden = self.boxes[bi]
            den = den * bden
            labels = [self.wire_of[p] for p in ports]
            work += len(states) * len(terms)
            if work > budget:
                raise TooLarge(f"oracle expansion exceeded the budget of {budget} terms")
            nxt = {}
            for st, sc in states.items():
                for pairs, tc in terms:
                    new, loops = _merge(st, labels, pairs)
                    c = sc * tc
                    if loops:
                        c = c * DELTA ** loops
                    if new in nxt:
                        nxt[new] = nxt[new] + c
                    else:
                        nxt[new] = c
            states = {k: v for k, v in nxt.items() if not v.is_zero()}
            if not states:
                return RF_ZERO
        total = states.get(frozenset(), LaurentPoly.const(0))
        return self.scalar * RationalFn(total, den)

    def _order(self):
        """Breadth-first box order so the open boundary stays small."""
        port_box = {}
        for bi, (ports, _, _) in enumerate(self.boxes):
            for p in ports:
                port_box[p] = bi
        partner = {}
        by_wire = {}
        for p, w in self.wire_of.items():
            by_wire.setdefault(w, []).append(p)
        for a, b in by_wire.values():
            partner[a], partner[b] = b, a
        seen, order = set(), []
        for start in range(len(self.boxes)):
            if start in seen:
                continue
            queue = deque([start])
            seen.add(start)
            while queue:
                bi = queue.popleft()
                order.append(bi)
                for p in self.boxes[bi][0]:
                    nb = port_box[partner[p]]
                    if nb not in seen:
                        seen.add(nb)
                        queue.append(nb)
        return order


def _lcm(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    from .qpoly import lp_div_exact, lp_gcd
    if b.is_constant():
        return a
    g = lp_gcd(a, b)
    return lp_div_exact(a * b, g)


def _merge(state, labels, pairs):
    """Glue a box term onto a state (a set of pairs of open wire labels)."""
    arc = {}
    for a, b in state:
        arc[("s", a)], arc[("s", b)] = ("s", b), ("s", a)
    for i, j in pairs:
        arc[("b", i)], arc[("b", j)] = ("b", j), ("b", i)
    open_labels = {lab for pr in state for lab in pr}
    glue, label_of = {}, {}
    first = {}
    for i, lab in enumerate(labels):
        if lab in open_labels:
            glue[("s", lab)], glue[("b", i)] = ("b", i), ("s", lab)
        elif lab in first:
            j = first.pop(lab)
            glue[("b", i)], glue[("b", j)] = ("b", j), ("b", i)
        else:
            first[lab] = i
    for lab in open_labels:
        if ("s", lab) not in glue:
            label_of[("s", lab)] = lab
    for lab, i in first.items():
        label_of[("b", i)] = lab
    seen = set()
    out = []
    for occ, lab in label_of.items():
        if occ in seen:
            continue
        cur = occ
        seen.add(cur)
        while True:
            cur = arc[cur]
            seen.add(cur)
            if cur in label_of:
                break
            cur = glue[cur]
            seen.add(cur)
        out.append((min(lab, label_of[cur]), max(lab, label_of[cur])))
    loops = 0
    for occ in glue:
        if occ in seen:
            continue
        loops += 1
        cur = occ
        while cur not in seen:
            seen.add(cur)
            g = glue[cur]
            seen.add(g)
            cur = arc[g]
    return frozenset(out), loops


def _ribbon(net: _Network, color: int):
    """JW box for an edge; returns port lists in ccw order at each end."""
    bottom, top = net.add_element(jw(color))
    return bottom[::-1], top


def _wire_vertex(net: _Network, legs):
    """Connect three ccw port lists with the standard trivalent wiring.

    Returns False when the colors are inadmissible.
    """
    cols = [len(p) for p in legs]
    for k in range(3):
        s2 = cols[k] + cols[(k + 1) % 3] - cols[(k + 2) % 3]
        if s2 < 0 or s2 % 2:
            return False
    for k in range(3):
        a, b = legs[k], legs[(k + 1) % 3]
        s = (cols[k] + cols[(k + 1) % 3] - cols[(k + 2) % 3]) // 2
        for t in range(s):
            net.wire(a[cols[k] - 1 - t], b[t])
    return True


def eval_graph_bruteforce(g, budget: int = DEFAULT_BUDGET) -> RationalFn:
    """Evaluate a colored planar trivalent graph strand by strand."""
    net = _Network()
    ends = {}
    for e in g.edges:
        if e.color > 4:
            raise TooLarge(f"edge color {e.color} is beyond the oracle range")
        p0, p1 = _ribbon(net, e.color)
        ends[e.ends[0]], ends[e.ends[1]] = p0, p1
    for v in g.vertices:
        if not _wire_vertex(net, [ends[(v, s)] for s in range(3)]):
            return RF_ZERO
    for c in g.free_loops:
        net.scalar = net.scalar * trace_closure(jw(c))
    return net.evaluate(budget)


def _crossing_grid(net: _Network, slot_ports, m):
    """Cabled crossing: m x m elementary crossings, over-strand on slots 0-2."""
    a = LaurentPoly.monomial(1)
    terms = [([(0, 1), (2, 3)], a), ([(1, 2), (3, 0)], a ** -1)]
    box = {}
    for r in range(m):
        for r2 in range(m):
            ports = net.new_ports(4)   # west, south, east, north
            net.add_box(ports, terms)
            box[(r, r2)] = ports
    for r in range(m):
        net.wire(box[(r, m - 1)][0], slot_ports[0][m - 1 - r])
        for r2 in range(1, m):
            net.wire(box[(r, r2)][2], box[(r, r2 - 1)][0])
        net.wire(box[(r, 0)][2], slot_ports[2][r])
    for r2 in range(m):
        net.wire(box[(0, r2)][1], slot_ports[1][m - 1 - r2])
        for r in range(m - 1):
            net.wire(box[(r, r2)][3], box[(r + 1, r2)][1])
        net.wire(box[(m - 1, r2)][3], slot_ports[3][r2])


def _singular_square(net: _Network, slot_ports, m):
    """Rule element of a singular point: four corners joined by m/2 channels."""
    n = m // 2
    chan = [_ribbon(net, n) for _ in range(4)]   # channel s joins corner s and s+1
    for s in range(4):
        legs = [slot_ports[s], chan[s][0], chan[(s - 1) % 4][1]]
        _wire_vertex(net, legs)


def eval_cabled_bruteforce(d, m: int, budget: int = DEFAULT_BUDGET) -> RationalFn:
    """Bracket of a diagram with every strand cabled m times through f^(m)."""
    from .errors import OddColorOnSingular
    if m < 0:
        raise ValueError("color must be non-negative")
    if m > 4:
        raise TooLarge(f"color {m} is beyond the oracle range")
    if m % 2 and d.count("singular"):
        raise OddColorOnSingular("singular points need an even color")
    net = _Network()
    ends = {}
    for e in d.edges:
        p0, p1 = _ribbon(net, m)
        ends[e.ends[0]], ends[e.ends[1]] = p0, p1
    for node in d.nodes:
        slot_ports = [ends[(node.id, s)] for s in range(4)]
        if node.kind == "crossing":
            _crossing_grid(net, slot_ports, m)
        else:
            _singular_square(net, slot_ports, m)
    net.scalar = trace_closure(jw(m)) ** d.free_circles
    return net.evaluate(budget)


def eval_diagram_bruteforce(d, n: int, budget: int = DEFAULT_BUDGET) -> RationalFn:
    """[d]_{2n} by brute force: every strand cabled 2n times."""
    return eval_cabled_bruteforce(d, 2 * n, budget)
