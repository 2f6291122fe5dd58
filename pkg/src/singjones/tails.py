"""Tails of sequences of q-polynomials and the closed-form candidates.

Throughout, ``order`` and ``terms`` count whole powers of q: a series of
order N is known through q^N.  Series are stored as :class:`QSeries`, which
indexes quarter powers so that raw bracket values (polynomials in A) fit
without rescaling.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .errors import ZeroPolynomial
from .qpoly import LaurentPoly, QSeries, RationalFn, euler_inf, to_qseries


def _series_order(q_order: int) -> int:
    if q_order < 0:
        raise ValueError("order must be non-negative")
    return 4 * q_order


def _sign(c) -> int:
    return 1 if c > 0 else -1


def normalize_series(p, terms: int | None = None) -> QSeries:
    """Shift ``p`` so its lowest term sits at q^0 with a positive coefficient.

    ``p`` may be a Laurent polynomial or a rational function (expanded as a
    power series from its lowest terms).  ``terms`` is the number of q-powers
    kept; for polynomials it defaults to the whole span.
    """
    if isinstance(p, RationalFn):
        if p.is_zero():
            raise ZeroPolynomial("cannot normalize zero")
        if p.is_poly():
            return normalize_series(p.to_poly(), terms)
        if terms is None:
            raise ValueError("a rational function needs an explicit number of terms")
        order = 4 * terms - 4
        num, den = p.num, p.den
        ns = to_qseries(num.shift(-num.mindeg), order)
        ds = to_qseries(den.shift(-den.mindeg), order)
        s = ns / ds
        return -s if s[0] < 0 else s
    p = LaurentPoly.coerce(p)
    if p.is_zero():
        raise ZeroPolynomial("cannot normalize zero")
    low, c = p.lowest()
    shifted = p.shift(-low)
    order = shifted.maxdeg if terms is None else 4 * terms - 4
    s = to_qseries(shifted, order)
    return -s if c < 0 else s


def _q_terms(s: QSeries) -> int:
    return s.order // 4 + 1


def _first_diff(s: QSeries, t: QSeries):
    """First quarter index where s and t differ within the shared order."""
    n = min(s.order, t.order)
    for k in range(n + 1):
        if s[k] != t[k]:
            return k
    return None


def agree_order(s: QSeries, t: QSeries) -> int:
    """Number of leading q-coefficients on which s and +-t agree.

    Capped at the number of q-coefficients both series retain.
    """
    cap = min(_q_terms(s), _q_terms(t))
    best = 0
    for tt in (t, -t):
        k = _first_diff(s, tt)
        best = max(best, cap if k is None else min(cap, k // 4))
    return best


def first_disagreement(s: QSeries, t: QSeries):
    """Exponent of the first q-power where s and t differ (no sign freedom),
    or None if they agree through the shared order."""
    k = _first_diff(s, t)
    if k is None:
        return None
    return k // 4 if k % 4 == 0 else Fraction(k, 4)


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------

def partition_sum(q_order: int, square: bool = False) -> QSeries:
    """sum_i q^i / (q;q)_i, or sum_i q^(i^2+i) / (q;q)_i^2 with ``square``."""
    order = _series_order(q_order)
    total = QSeries.zeros(order)
    i = 0
    while True:
        e = i * i + i if square else i
        if e > q_order:
            break
        term = QSeries.one(order).shift(4 * e)
        for j in range(1, i + 1):
            term = term.over_one_minus(4 * j)
            if square:
                term = term.over_one_minus(4 * j)
        total = total + term
        i += 1
    return total


def euler(q_order: int) -> QSeries:
    """(q;q)_oo through q^order."""
    return euler_inf(_series_order(q_order))


def tail_closed_first(k: int, order: int) -> QSeries:
    """(q;q)_oo^k sum_i q^i/(q;q)_i through q^order."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return euler(order) ** k * partition_sum(order)


def tail_closed_second(order: int) -> QSeries:
    """(q;q)_oo sum_i q^(i^2+i)/(q;q)_i^2 through q^order."""
    return euler(order) * partition_sum(order, square=True)


def false_theta(a_pow: int, b_pow: int, order: int) -> QSeries:
    """Psi(q^a_pow, q^b_pow) through q^order."""
    if a_pow < 1 or b_pow < 1:
        raise ValueError("powers must be positive")
    terms = {}
    i = 0
    while True:
        plus = a_pow * i * (i + 1) // 2 + b_pow * i * (i - 1) // 2
        minus = a_pow * i * (i - 1) // 2 + b_pow * i * (i + 1) // 2
        if min(plus, minus) > order:
            break
        if plus <= order:
            terms[plus] = terms.get(plus, 0) + 1
        if i >= 1 and minus <= order:
            terms[minus] = terms.get(minus, 0) - 1
        i += 1
    return QSeries.from_q(terms, order)


CANDIDATES = {
    "first": lambda k, order: tail_closed_first(k, order),
    "second": lambda k, order: tail_closed_second(order),
    "psi": lambda k, order: false_theta(3, 1, order),
}


def verify_corollary(order: int) -> dict:
    """Exact pairwise comparison of the two tail closed forms (k = 2) and
    Psi(q^3, q) through q^order.  Reports, does not judge."""
    if order < 1:
        raise ValueError("order must be at least 1")
    series = {
        "second": tail_closed_second(order),
        "first": tail_closed_first(2, order),
        "psi": false_theta(3, 1, order),
    }
    comps = []
    for a, b in (("second", "psi"), ("first", "psi"), ("second", "first")):
        k = first_disagreement(series[a], series[b])
        comps.append({
            "left": a,
            "right": b,
            "agree": k is None,
            "first_disagreement": None if k is None else int(k),
            "left_coeff": None if k is None else int(series[a].q_coeff(k)),
            "right_coeff": None if k is None else int(series[b].q_coeff(k)),
        })
    return {
        "order": order,
        "series": {name: s.q_list() for name, s in series.items()},
        "comparisons": comps,
    }


def render_corollary(rep: dict) -> str:
    lines = [f"series through q^{rep['order']}"]
    for c in rep["comparisons"]:
        if c["agree"]:
            lines.append(f"{c['left']} vs {c['right']}: agree through q^{rep['order']}")
        else:
            k = c["first_disagreement"]
            lines.append(f"{c['left']} vs {c['right']}: first disagreement at q^{k} "
                         f"({c['left_coeff']} vs {c['right_coeff']})")
    return "\n".join(lines)


def head_transform(p: LaurentPoly) -> LaurentPoly:
    """Substitute q -> q^-1."""
    return LaurentPoly.coerce(p).bar()


# ---------------------------------------------------------------------------
# empirical tails
# ---------------------------------------------------------------------------

@dataclass
class TailReport:
    colors: list
    agree_orders: list
    prefix: QSeries
    comparisons: dict = field(default_factory=dict)

    @property
    def prefix_terms(self) -> int:
        return _q_terms(self.prefix)

    def to_json(self) -> dict:
        return {
            "colors": list(self.colors),
            "agree_orders": list(self.agree_orders),
            "prefix": [int(c) if Fraction(c).denominator == 1 else str(c)
                       for c in self.prefix.q_list()],
            "comparisons": self.comparisons,
        }

    def to_text(self) -> str:
        lines = [f"colors: {', '.join(map(str, self.colors))}",
                 f"agree orders: {', '.join(map(str, self.agree_orders))}",
                 f"stabilized prefix: {self.prefix.to_text()}"]
        for name, res in self.comparisons.items():
            lines.append(f"{name}: {res}")
        return "\n".join(lines)


def _compare(prefix: QSeries, cand: QSeries) -> str:
    n = _q_terms(prefix)
    a = agree_order(prefix, cand)
    if a >= n:
        return f"agrees through q^{n - 1}"
    return f"first disagreement at q^{a}"


def empirical_tail(values, terms: int, colors=None, compare=(), k: int = 1) -> TailReport:
    """Normalize a sequence of invariants and extract its stabilized prefix.

    The prefix is the last value truncated to the agree order of the final
    consecutive pair.  ``compare`` names closed forms from
    :data:`CANDIDATES` (``k`` is passed to the first-tail form).
    """
    values = list(values)
    if len(values) < 2:
        raise ValueError("need at least two values")
    series = [normalize_series(v, terms) for v in values]
    orders = [agree_order(s, t) for s, t in zip(series, series[1:])]
    m = min(orders[-1], terms)
    prefix = series[-1].truncate(max(0, 4 * m - 4)) if m else QSeries.zeros(0)
    if m:
        prefix = QSeries.from_q({j: prefix.q_coeff(j) for j in range(m)}, m - 1)
    comps = {}
    for name in compare:
        if name not in CANDIDATES:
            raise ValueError(f"unknown candidate {name!r}")
        comps[name] = _compare(prefix, CANDIDATES[name](k, max(m - 1, 0)))
    return TailReport(list(colors or range(1, len(values) + 1)), orders, prefix, comps)


# ---------------------------------------------------------------------------
# tabulated data
# ---------------------------------------------------------------------------

def six_two_table() -> dict:
    """Normalized colored Jones rows of the knot 6_2 as tabulated in the
    literature: {n: QSeries}, each row known through its last shown power."""
    raw = json.loads(resources.files("singjones.fixtures").joinpath(
        "six_two_table.json").read_text())
    out = {}
    for row in raw["rows"]:
        terms = {int(e): c for e, c in row["terms"]}
        out[int(row["n"])] = QSeries.from_q(terms, int(row["order"]))
    return out
