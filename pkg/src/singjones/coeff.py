"""Closed-form skein coefficients for colored trivalent graphs.

Conventions: ``[n] = (A^{2n} - A^{-2n}) / (A^2 - A^{-2})``, loop value
``Delta_n = (-1)^n [n+1]``, and ``q = A^4``.  Coefficient functions raise
:class:`NotAdmissible` on bad colors, except the 6j and bubble coefficients
which follow the graph convention that an inadmissible vertex gives 0.

All expensive functions are memoized in :data:`CACHE`, which the CLI can
persist to disk.
"""
from __future__ import annotations

import itertools
import json
import threading
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .errors import CacheFormatError, NotAdmissible
from .qpoly import (ONE, RF_ZERO, LaurentPoly, QSeries, RationalFn,
                    q_pochhammer)

CACHE_VERSION = 1


class CoefficientCache:
    """Thread-safe memo for theta/tet/sixj values keyed by color tuples."""

    KINDS = ("theta", "tet", "sixj")

    def __init__(self):
        self._lock = threading.Lock()
        self._data = {k: {} for k in self.KINDS}

    def get(self, kind, key):
        with self._lock:
            return self._data[kind].get(key)

    def put(self, kind, key, value):
        with self._lock:
            self._data[kind][key] = value
        return value

    def clear(self):
        with self._lock:
            for d in self._data.values():
                d.clear()

    def __len__(self):
        return sum(len(d) for d in self._data.values())

    def dump(self, path):
        with self._lock:
            payload = {
                "version": CACHE_VERSION,
                **{k: [[list(key), v.to_json()] for key, v in sorted(d.items())]
                   for k, d in self._data.items()},
            }
        with open(path, "w") as fh:
            json.dump(payload, fh, sort_keys=True)

    def load(self, path):
        """Merge a dumped cache.  Raises CacheFormatError on bad content;
        the in-memory cache is left untouched in that case."""
        try:
            with open(path) as fh:
                payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise CacheFormatError(f"{path}: not JSON ({exc})") from None
        if not isinstance(payload, dict) or payload.get("version") != CACHE_VERSION:
            raise CacheFormatError(f"{path}: unsupported cache version")
        fresh = {k: {} for k in self.KINDS}
        try:
            for kind in self.KINDS:
                for key, val in payload.get(kind, []):
                    fresh[kind][tuple(int(x) for x in key)] = RationalFn.from_json(val)
        except (TypeError, ValueError, KeyError) as exc:
            raise CacheFormatError(f"{path}: malformed entry ({exc})") from None
        with self._lock:
            for kind in self.KINDS:
                self._data[kind].update(fresh[kind])


CACHE = CoefficientCache()


# ---------------------------------------------------------------------------
# quantum integers
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def quantum_int(n: int) -> LaurentPoly:
    """[n] = A^{2n-2} + A^{2n-6} + ... + A^{2-2n}."""
    if n < 0:
        raise ValueError("quantum integers are defined for n >= 0")
    return LaurentPoly({2 * n - 2 - 4 * k: 1 for k in range(n)})


@lru_cache(maxsize=None)
def qfactorial(n: int) -> LaurentPoly:
    out = ONE
    for j in range(2, n + 1):
        out = out * quantum_int(j)
    return out


@lru_cache(maxsize=None)
def delta(n: int) -> LaurentPoly:
    """Value of an unknotted loop carrying the n-th Jones-Wenzl projector."""
    if n < 0:
        raise ValueError("color must be non-negative")
    d = quantum_int(n + 1)
    return -d if n % 2 else d


def pochhammer(n: int) -> LaurentPoly:
    """(q;q)_n as a polynomial in A."""
    return q_pochhammer(n)


def pochhammer_series(n: int, order: int) -> QSeries:
    s = QSeries.one(order)
    for i in range(1, n + 1):
        s = s.times_one_minus(4 * i)
    return s


def _factorial_ratio(num: list[int], den: list[int]) -> RationalFn:
    """prod [k]! over num divided by prod [k]! over den, cancelling
    quantum integers factor by factor before multiplying."""
    cnt = Counter()
    for k in num:
        for j in range(2, k + 1):
            cnt[j] += 1
    for k in den:
        for j in range(2, k + 1):
            cnt[j] -= 1
    top, bot = ONE, ONE
    for j, m in sorted(cnt.items()):
        if m > 0:
            top = top * quantum_int(j) ** m
        elif m < 0:
            bot = bot * quantum_int(j) ** (-m)
    return RationalFn(top, bot)


# ---------------------------------------------------------------------------
# admissibility, theta, lambda
# ---------------------------------------------------------------------------

def admissible(a: int, b: int, c: int) -> bool:
    return (min(a, b, c) >= 0 and (a + b + c) % 2 == 0
            and a + b >= c >= abs(a - b))


@dataclass(frozen=True)
class AdmissibleTriple:
    """Exterior colors a, b, c with interior colors x, y, z:
    x + y = a, x + z = b, y + z = c."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if not admissible(self.a, self.b, self.c):
            raise NotAdmissible(f"({self.a},{self.b},{self.c}) is not admissible")

    @property
    def x(self) -> int:
        return (self.a + self.b - self.c) // 2

    @property
    def y(self) -> int:
        return (self.a + self.c - self.b) // 2

    @property
    def z(self) -> int:
        return (self.b + self.c - self.a) // 2

    @property
    def interior(self) -> tuple[int, int, int]:
        return self.x, self.y, self.z


def interior_colors(a: int, b: int, c: int) -> tuple[int, int, int]:
    return AdmissibleTriple(a, b, c).interior


def theta(a: int, b: int, c: int) -> RationalFn:
    """Theta-graph evaluation via quantum factorials."""
    x, y, z = interior_colors(a, b, c)
    key = tuple(sorted((a, b, c)))
    hit = CACHE.get("theta", key)
    if hit is not None:
        return hit
    s = x + y + z
    val = _factorial_ratio([s + 1, x, y, z], [x + y, x + z, y + z])
    if s % 2:
        val = -val
    return CACHE.put("theta", key, val)


def theta_poch(a: int, b: int, c: int) -> RationalFn:
    """Theta-graph evaluation via q-Pochhammer symbols (q = A^4)."""
    x, y, z = interior_colors(a, b, c)
    s = x + y + z
    num = pochhammer(x) * pochhammer(y) * pochhammer(z) * pochhammer(s + 1)
    den = (LaurentPoly({0: 1, 4: -1}) * pochhammer(x + y)
           * pochhammer(y + z) * pochhammer(x + z))
    sign = -1 if s % 2 else 1
    return RationalFn(num.shift(-2 * s) * sign, den)


def lambda_coef(a: int, b: int, c: int) -> LaurentPoly:
    """Twist eigenvalue of channel ``a`` in the fusion of ``b`` and ``c``:
    (-1)^{(b+c-a)/2} A^{(b'+c'-a')/2} with x' = x(x+2)."""
    if not admissible(a, b, c):
        raise NotAdmissible(f"({a},{b},{c}) is not admissible")
    p = lambda t: t * (t + 2)
    sign = -1 if ((b + c - a) // 2) % 2 else 1
    return LaurentPoly({(p(b) + p(c) - p(a)) // 2: sign})


def fusion_coef(a: int, b: int, i: int) -> RationalFn:
    """Weight Delta_i / theta(a, b, i) of channel i when fusing strands a, b."""
    return RationalFn(delta(i)) / theta(a, b, i)


# ---------------------------------------------------------------------------
# tetrahedron
# ---------------------------------------------------------------------------

# vertex pairs of the edges a, d, e, f, c, b in the arrangement [a d e; f c b]
_TET_EDGES = ((0, 3), (0, 1), (0, 2), (1, 2), (2, 3), (1, 3))


@dataclass(frozen=True)
class TetLabels:
    """Tetrahedron colors in the arrangement [a d e; f c b].

    Vertex triples are (a,d,e), (d,b,f), (e,c,f), (a,b,c); the opposite
    edge pairs are (a,f), (d,c), (e,b).
    """

    a: int
    d: int
    e: int
    f: int
    c: int
    b: int

    @property
    def edges(self) -> tuple[int, ...]:
        return (self.a, self.d, self.e, self.f, self.c, self.b)

    @property
    def triples(self):
        a, d, e, f, c, b = self.edges
        return ((a, d, e), (d, b, f), (e, c, f), (a, b, c))

    @property
    def opposite_pairs(self):
        return ((self.a, self.f), (self.d, self.c), (self.e, self.b))

    def is_admissible(self) -> bool:
        return all(admissible(*t) for t in self.triples)

    @property
    def vertex_sums(self) -> tuple[int, ...]:
        return tuple(sum(t) // 2 for t in self.triples)

    @property
    def face_sums(self) -> tuple[int, ...]:
        # half the sum of the four edges left after removing an opposite pair
        total = sum(self.edges)
        return tuple((total - p - q) // 2 for p, q in self.opposite_pairs)

    def by_vertex_pair(self) -> dict:
        return dict(zip(_TET_EDGES, self.edges))

    @classmethod
    def from_vertex_pairs(cls, lab: dict) -> "TetLabels":
        return cls(*(lab[e] for e in _TET_EDGES))

    def symmetries(self):
        """All 24 relabelings induced by permuting the four vertices."""
        lab = self.by_vertex_pair()
        for perm in itertools.permutations(range(4)):
            moved = {}
            for (i, j), col in lab.items():
                u, v = perm[i], perm[j]
                moved[(min(u, v), max(u, v))] = col
            yield TetLabels.from_vertex_pairs(moved)

    def canonical(self) -> tuple[int, ...]:
        return min(t.edges for t in self.symmetries())


def tet(*labels, use_cache: bool = True) -> RationalFn:
    """Tetrahedron evaluation, ``tet(TetLabels(...))`` or ``tet(a, d, e, f, c, b)``."""
    t = labels[0] if len(labels) == 1 else TetLabels(*labels)
    if not t.is_admissible():
        raise NotAdmissible(f"Tet{list(t.edges)} has an inadmissible vertex")
    key = t.canonical()
    hit = CACHE.get("tet", key) if use_cache else None
    if hit is not None:
        return hit
    av, bf = t.vertex_sums, t.face_sums
    lo, hi = max(av), min(bf)
    pre = _factorial_ratio([bj - ai for ai in av for bj in bf], list(t.edges))
    total = RF_ZERO
    for s in range(lo, hi + 1):
        term = _factorial_ratio([s + 1], [s - ai for ai in av] + [bj - s for bj in bf])
        total = total - term if s % 2 else total + term
    val = pre * total
    return CACHE.put("tet", key, val) if use_cache else val


def sixj(a: int, b: int, i: int, c: int, d: int, j: int) -> RationalFn:
    """Recoupling coefficient {a b i; c d j}.

    Expresses the element with an edge j joining the pair (a, b) to the pair
    (c, d) in the basis whose edge i joins (a, c) to (b, d).
    """
    if not (admissible(a, c, i) and admissible(b, d, i)
            and admissible(a, b, j) and admissible(c, d, j)):
        return RF_ZERO
    key = (a, b, i, c, d, j)
    hit = CACHE.get("sixj", key)
    if hit is not None:
        return hit
    val = RationalFn(delta(i)) * tet(a, i, c, d, j, b) / (theta(a, c, i) * theta(b, d, i))
    return CACHE.put("sixj", key, val)


def bubble_coef(a: int, b: int, c: int, d: int) -> RationalFn:
    """A bubble with sides b, c between strands a and d collapses to
    delta_{a,d} theta(a,b,c)/Delta_a times a single strand."""
    if a != d or not admissible(a, b, c):
        return RF_ZERO
    return theta(a, b, c) / RationalFn(delta(a))


def theta_ratio_check(n: int, i: int) -> bool:
    """Compare theta(2n,2n,2i)/theta(n,n,2i) with its Pochhammer closed form."""
    if not 0 <= i <= n:
        raise ValueError("need 0 <= i <= n")
    lhs = theta(2 * n, 2 * n, 2 * i) / theta(n, n, 2 * i)
    P = pochhammer
    num = P(n) ** 2 * P(2 * n - i) * P(2 * n + i + 1)
    den = P(2 * n) ** 2 * P(n - i) * P(n + i + 1)
    rhs = RationalFn(num.shift(-2 * n) * (-1) ** n, den)
    return lhs == rhs
