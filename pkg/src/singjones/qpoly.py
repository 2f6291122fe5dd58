"""Exact arithmetic in the variable A (with q = A^4).

Three value types live here:

* :class:`LaurentPoly` -- sparse Laurent polynomial in A over the rationals.
* :class:`RationalFn` -- quotient of two Laurent polynomials, kept reduced.
* :class:`QSeries` -- power series in q^(1/4) truncated at a fixed order.

Exponents of A are plain integers, so one exponent unit is q^(1/4).  All
objects are immutable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

from sympy.polys.domains import ZZ
from sympy.polys.euclidtools import dup_gcd

from .errors import DivisionByZero, NegativeExponent, NotDivisible

__all__ = [
    "LaurentPoly", "RationalFn", "QSeries", "A", "ONE", "ZERO",
    "lp_mul", "lp_div_exact", "lp_gcd", "rf_reduce", "to_qseries",
    "series_mul", "euler_inf", "q_pochhammer",
]


def _norm(c):
    """Collapse integral Fractions to int so the common case stays fast."""
    if type(c) is int:
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return _norm(Fraction(c))
    raise TypeError(f"coefficient must be rational, got {type(c).__name__}")


def _qdiv(a, b):
    if type(a) is int and type(b) is int and a % b == 0:
        return a // b
    return _norm(Fraction(a) / b)


def _fmt_coeff(c) -> str:
    return str(c)


def _render(terms: Iterable[tuple[int, object]], var: str) -> str:
    out = []
    for e, c in terms:
        neg = c < 0
        mag = -c if neg else c
        body = _fmt_coeff(mag) if e == 0 else f"{_fmt_coeff(mag)}*{var}^{e}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out) if out else "0"


class LaurentPoly:
    """Sparse Laurent polynomial sum(c_e * A^e) with rational coefficients.

    >>> (A + A**-1) * (A - A**-1)
    LaurentPoly('-1*A^-2 + 1*A^2')
    """

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[int, object] | None = None):
        t = {}
        if terms:
            for e, c in terms.items():
                c = _norm(c)
                if c:
                    t[int(e)] = c
        self._t = dict(sorted(t.items()))
        self._hash = None

    @classmethod
    def _raw(cls, t: dict) -> "LaurentPoly":
        # t must already be zero-free with normalized coefficients
        p = cls.__new__(cls)
        p._t = dict(sorted(t.items()))
        p._hash = None
        return p

    @classmethod
    def monomial(cls, e: int, c=1) -> "LaurentPoly":
        return cls({e: c})

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, Rational):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._t)

    def items(self):
        return self._t.items()

    def __iter__(self):
        return iter(self._t.items())

    def __len__(self):
        return len(self._t)

    def coeff(self, e: int):
        return self._t.get(e, 0)

    def is_zero(self) -> bool:
        return not self._t

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    @property
    def mindeg(self) -> int:
        if not self._t:
            raise ValueError("zero polynomial has no degree")
        return next(iter(self._t))

    @property
    def maxdeg(self) -> int:
        if not self._t:
            raise ValueError("zero polynomial has no degree")
        return next(reversed(self._t))

    def lowest(self) -> tuple[int, object]:
        e = self.mindeg
        return e, self._t[e]

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, Rational):
                other = LaurentPoly.const(other)
            else:
                return NotImplemented
        t = dict(self._t)
        for e, c in other._t.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = _norm(v)
            else:
                t.pop(e, None)
        return LaurentPoly._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._t.items()})

    def __sub__(self, other):
        if isinstance(other, Rational):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            return lp_mul(self, other)
        if isinstance(other, Rational):
            other = _norm(other)
            if not other:
                return ZERO
            return LaurentPoly._raw({e: _norm(c * other) for e, c in self._t.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise NotDivisible("only monomials have Laurent inverses")
            (e, c), = self._t.items()
            return LaurentPoly({-e * (-k): Fraction(1) / Fraction(c) ** (-k)})
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by A^k."""
        return LaurentPoly._raw({e + k: c for e, c in self._t.items()})

    def bar(self) -> "LaurentPoly":
        """Substitute A -> A^-1."""
        return LaurentPoly._raw({-e: c for e, c in self._t.items()})

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._t == other._t
        if isinstance(other, Rational):
            return self._t == ({0: _norm(other)} if other else {})
        if isinstance(other, RationalFn):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._t.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly('{self.to_text()}')"

    def __str__(self):
        return self.to_text()

    # -- rendering --------------------------------------------------------
    def to_text(self) -> str:
        return _render(self._t.items(), "A")

    def q_integral(self) -> bool:
        return all(e % 4 == 0 for e in self._t)

    def to_q_text(self) -> str:
        if not self.q_integral():
            raise ValueError("exponents are not multiples of 4; cannot render in q")
        return _render(((e // 4, c) for e, c in self._t.items()), "q")

    def to_json(self) -> list:
        out = []
        for e, c in self._t.items():
            f = Fraction(c)
            out.append([e, f.numerator, f.denominator])
        return out

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        return cls({int(e): Fraction(int(n), int(d)) for e, n, d in data})

    # -- dense helpers ----------------------------------------------------
    def _dense(self, low: int | None = None) -> list:
        """Coefficients highest-first, from maxdeg down to `low`."""
        lo = self.mindeg if low is None else low
        hi = self.maxdeg
        out = [0] * (hi - lo + 1)
        for e, c in self._t.items():
            out[hi - e] = c
        return out

    @classmethod
    def _from_dense(cls, coeffs: list, low: int) -> "LaurentPoly":
        n = len(coeffs)
        return cls({low + n - 1 - i: c for i, c in enumerate(coeffs) if c})

    def content(self):
        """Positive rational g with self/g primitive over the integers."""
        fs = [Fraction(c) for c in self._t.values()]
        num = math.gcd(*(f.numerator for f in fs))
        den = math.lcm(*(f.denominator for f in fs))
        return Fraction(num, den)


A = LaurentPoly({1: 1})
ONE = LaurentPoly({0: 1})
ZERO = LaurentPoly()


def lp_mul(p: LaurentPoly, r: LaurentPoly) -> LaurentPoly:
    """Exact product of two Laurent polynomials."""
    if not p._t or not r._t:
        return ZERO
    if len(p._t) < len(r._t):
        p, r = r, p
    t: dict = {}
    get = t.get
    ritems = list(r._t.items())
    for e1, c1 in p._t.items():
        for e2, c2 in ritems:
            k = e1 + e2
            t[k] = get(k, 0) + c1 * c2
    return LaurentPoly._raw({e: _norm(c) for e, c in t.items() if c})


def _long_div(num: list, den: list) -> tuple[list, list]:
    """Polynomial long division on highest-first coefficient lists."""
    num = list(num)
    lead = den[0]
    dl = len(den)
    sparse = [(j, c) for j, c in enumerate(den) if j and c]
    quo = []
    for i in range(len(num) - dl + 1):
        c = num[i]
        if c:
            c = _qdiv(c, lead)
            for j, dj in sparse:
                num[i + j] -= c * dj
        quo.append(c)
    rem = num[len(num) - dl + 1:] if dl > 1 else []
    return quo, rem


def lp_div_exact(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """Return s with s*d == p, or raise NotDivisible."""
    if d.is_zero():
        raise DivisionByZero("division by the zero polynomial")
    if p.is_zero():
        return ZERO
    if d.is_monomial():
        (e, c), = d._t.items()
        return LaurentPoly._raw({k - e: _qdiv(v, c) for k, v in p._t.items()})
    # units of the Laurent ring are monomials: strip them and divide polynomials
    pl, dl = p.mindeg, d.mindeg
    pn, dn = p._dense(), d._dense()
    if len(pn) < len(dn):
        raise NotDivisible(f"({p}) is not divisible by ({d})")
    quo, rem = _long_div(pn, dn)
    if any(rem):
        raise NotDivisible(f"({p}) is not divisible by ({d})")
    return LaurentPoly._from_dense(quo, pl - dl)


def _primitive_int_dense(p: LaurentPoly) -> list:
    g = p.content()
    return [int(Fraction(c) / g) for c in p._dense()]


def lp_gcd(p: LaurentPoly, r: LaurentPoly) -> LaurentPoly:
    """Greatest common divisor up to units, normalized to an integer
    primitive polynomial with lowest exponent 0 and positive lowest term."""
    if p.is_zero() and r.is_zero():
        return ZERO
    if p.is_zero() or r.is_zero():
        g = r if p.is_zero() else p
        g = g.shift(-g.mindeg)
        g = g * (1 / g.content())
    else:
        h = dup_gcd([ZZ(c) for c in _primitive_int_dense(p)],
                    [ZZ(c) for c in _primitive_int_dense(r)], ZZ)
        g = LaurentPoly._from_dense([int(c) for c in h], 0)
        g = g.shift(-g.mindeg)
    if g.lowest()[1] < 0:
        g = -g
    return g


class RationalFn:
    """Quotient num/den of Laurent polynomials in canonical form.

    Canonical form: numerator and denominator share no non-unit factor, the
    denominator has lowest exponent 0, integer coefficients with content 1
    and a positive lowest coefficient.  Zero is 0/1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _canonical=False):
        num = LaurentPoly.coerce(num)
        den = ONE if den is None else LaurentPoly.coerce(den)
        if not _canonical:
            num, den = _canon(num, den)
        self.num = num
        self.den = den

    @classmethod
    def coerce(cls, x) -> "RationalFn":
        if isinstance(x, RationalFn):
            return x
        return cls(LaurentPoly.coerce(x), ONE, _canonical=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den == ONE

    def to_poly(self) -> LaurentPoly:
        if not self.is_poly():
            raise NotDivisible(f"{self} is not a Laurent polynomial")
        return self.num

    def __add__(self, other):
        other = _rf(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den == other.den:
            return RationalFn(self.num + other.num, self.den)
        g = lp_gcd(self.den, other.den)
        d1 = lp_div_exact(self.den, g)
        d2 = lp_div_exact(other.den, g)
        return RationalFn(self.num * d2 + other.num * d1, d1 * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        other = _rf(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _rf(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero() or other.num.is_zero():
            return RF_ZERO
        if self.den == ONE and other.den == ONE:
            return RationalFn(self.num * other.num, ONE, _canonical=True)
        return RationalFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFn":
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero")
        return RationalFn(self.den, self.num)

    def __truediv__(self, other):
        other = _rf(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _rf(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFn(self.num ** k, self.den ** k, _canonical=True)

    def bar(self) -> "RationalFn":
        return RationalFn(self.num.bar(), self.den.bar())

    def __eq__(self, other):
        other = _rf(other)
        if other is NotImplemented:
            return other
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFn('{self.to_text()}')"

    def __str__(self):
        return self.to_text()

    def to_text(self) -> str:
        if self.den == ONE:
            return self.num.to_text()
        return f"({self.num.to_text()}) / ({self.den.to_text()})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> "RationalFn":
        return cls(LaurentPoly.from_json(data["num"]), LaurentPoly.from_json(data["den"]))


def _rf(x):
    if isinstance(x, RationalFn):
        return x
    if isinstance(x, (LaurentPoly, Rational)):
        return RationalFn.coerce(x)
    return NotImplemented


def _canon(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if den.is_zero():
        raise DivisionByZero("zero denominator")
    if num.is_zero():
        return ZERO, ONE
    s = den.mindeg
    if s:
        den = den.shift(-s)
        num = num.shift(-s)
    if not den.is_constant():
        g = lp_gcd(num, den)
        if not g.is_constant():
            num = lp_div_exact(num, g)
            den = lp_div_exact(den, g)
    scale = den.content()
    if den.lowest()[1] < 0:
        scale = -scale
    if scale != 1:
        den = den * (1 / scale)
        num = num * (1 / scale)
    return num, den


def rf_reduce(f: RationalFn | tuple) -> RationalFn:
    """Canonical form of num/den (accepts a RationalFn or a (num, den) pair)."""
    if isinstance(f, RationalFn):
        return RationalFn(f.num, f.den)
    num, den = f
    return RationalFn(num, den)


RF_ZERO = RationalFn(ZERO, ONE, _canonical=True)
RF_ONE = RationalFn(ONE, ONE, _canonical=True)


# ---------------------------------------------------------------------------
# truncated power series in q^(1/4)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QSeries:
    """Power series sum(c_k * q^(k/4), k = 0..order) modulo q^((order+1)/4).

    ``order`` and indices count quarter powers of q, i.e. powers of A.
    """

    order: int
    coeffs: tuple

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be non-negative")
        cs = tuple(_norm(c) for c in self.coeffs)
        if len(cs) != self.order + 1:
            raise ValueError(f"expected {self.order + 1} coefficients, got {len(cs)}")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def zeros(cls, order: int) -> "QSeries":
        return cls(order, (0,) * (order + 1))

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls(order, (1,) + (0,) * order)

    @classmethod
    def from_terms(cls, terms: Mapping[int, object], order: int) -> "QSeries":
        """Series from {quarter-index: coefficient}; indices above order are dropped."""
        cs = [0] * (order + 1)
        for e, c in terms.items():
            if e < 0:
                raise NegativeExponent(f"negative exponent {e}")
            if e <= order:
                cs[e] += c
        return cls(order, tuple(cs))

    @classmethod
    def from_q(cls, terms: Mapping[int, object], q_order: int) -> "QSeries":
        """Series from {q-exponent: coefficient}, truncated after q^q_order."""
        return cls.from_terms({4 * m: c for m, c in terms.items()}, 4 * q_order)

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k <= self.order else 0

    def q_coeff(self, m: int):
        return self[4 * m]

    @property
    def q_terms(self) -> int:
        """Number of whole q-power coefficients retained (q^0 .. q^(order//4))."""
        return self.order // 4 + 1

    def q_list(self) -> list:
        return [self.coeffs[4 * m] for m in range(self.q_terms)]

    def is_q_integral(self) -> bool:
        return all(c == 0 for k, c in enumerate(self.coeffs) if k % 4)

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise ValueError("cannot raise the order of a truncated series")
        return QSeries(order, self.coeffs[:order + 1])

    def _align(self, other: "QSeries"):
        n = min(self.order, other.order)
        return n, self.coeffs[:n + 1], other.coeffs[:n + 1]

    def __add__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        n, a, b = self._align(other)
        return QSeries(n, tuple(x + y for x, y in zip(a, b)))

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        n, a, b = self._align(other)
        return QSeries(n, tuple(x - y for x, y in zip(a, b)))

    def __neg__(self):
        return QSeries(self.order, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return series_mul(self, other)
        if isinstance(other, Rational):
            return QSeries(self.order, tuple(c * other for c in self.coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = QSeries.one(self.order)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int) -> "QSeries":
        """Multiply by q^(k/4), k >= 0, keeping the order."""
        if k < 0:
            raise NegativeExponent("series shift must be non-negative")
        cs = ((0,) * k + self.coeffs)[:self.order + 1]
        return QSeries(self.order, cs)

    def times_one_minus(self, k: int) -> "QSeries":
        """Multiply by (1 - q^(k/4))."""
        cs = list(self.coeffs)
        for i in range(self.order, k - 1, -1):
            cs[i] -= cs[i - k]
        return QSeries(self.order, tuple(cs))

    def over_one_minus(self, k: int) -> "QSeries":
        """Divide by (1 - q^(k/4)), k >= 1."""
        if k < 1:
            raise DivisionByZero("1 - q^0 is zero")
        cs = list(self.coeffs)
        for i in range(k, self.order + 1):
            cs[i] += cs[i - k]
        return QSeries(self.order, tuple(cs))

    def inverse(self) -> "QSeries":
        c0 = self.coeffs[0]
        if not c0:
            raise DivisionByZero("series with zero constant term is not invertible")
        inv0 = Fraction(1) / Fraction(c0)
        nz = [(k, c) for k, c in enumerate(self.coeffs) if k and c]
        out = [0] * (self.order + 1)
        out[0] = _norm(inv0)
        for i in range(1, self.order + 1):
            s = 0
            for k, c in nz:
                if k > i:
                    break
                s += c * out[i - k]
            out[i] = _norm(-s * inv0)
        return QSeries(self.order, tuple(out))

    def __truediv__(self, other):
        if isinstance(other, QSeries):
            return self * other.inverse()
        if isinstance(other, Rational):
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def nonzero(self) -> list[tuple[int, object]]:
        return [(k, c) for k, c in enumerate(self.coeffs) if c]

    def to_text(self) -> str:
        if self.is_q_integral():
            body = _render(((k // 4, c) for k, c in self.nonzero()), "q")
            return f"{body} + O(q^{self.order // 4 + 1})"
        body = _render(self.nonzero(), "q^(1/4)")
        return f"{body} + O(q^({self.order + 1}/4))"

    def to_json(self) -> dict:
        return {"order": self.order,
                "terms": [[k, Fraction(c).numerator, Fraction(c).denominator]
                          for k, c in self.nonzero()]}

    def __str__(self):
        return self.to_text()


def to_qseries(p: LaurentPoly, order: int) -> QSeries:
    """Reindex a Laurent polynomial with no negative exponents as a series."""
    for e in p._t:
        if e < 0:
            raise NegativeExponent(f"A^{e} has a negative exponent; normalize first")
    return QSeries.from_terms(p._t, order)


def series_mul(s: QSeries, t: QSeries) -> QSeries:
    """Truncated Cauchy product at min(s.order, t.order)."""
    n = min(s.order, t.order)
    a = [(k, c) for k, c in enumerate(s.coeffs[:n + 1]) if c]
    b = [(k, c) for k, c in enumerate(t.coeffs[:n + 1]) if c]
    if len(a) > len(b):
        a, b = b, a
    out = [0] * (n + 1)
    for i, x in a:
        lim = n - i
        for j, y in b:
            if j > lim:
                break
            out[i + j] += x * y
    return QSeries(n, tuple(out))


def euler_inf(order: int) -> QSeries:
    """(q;q)_oo truncated at quarter-order ``order``."""
    if order < 0:
        raise ValueError("order must be non-negative")
    s = QSeries.one(order)
    # factors (1 - q^m) with 4m > order leave the retained coefficients alone
    for m in range(1, -(-order // 4) + 2):
        s = s.times_one_minus(4 * m)
    return s


def q_pochhammer(n: int) -> LaurentPoly:
    """(q;q)_n = prod_{i=1..n} (1 - q^i) as a polynomial in A (q = A^4)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    p = ONE
    for i in range(1, n + 1):
        p = p * LaurentPoly({0: 1, 4 * i: -1})
    return p
