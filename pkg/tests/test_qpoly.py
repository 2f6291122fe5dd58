from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from singjones.errors import DivisionByZero, NegativeExponent, NotDivisible
from singjones.qpoly import (A, ONE, ZERO, LaurentPoly, QSeries, RationalFn, euler_inf,
                             lp_div_exact, lp_gcd, lp_mul, q_pochhammer, rf_reduce,
                             series_mul, to_qseries)

coeffs = st.integers(-5, 5) | st.fractions(min_value=-3, max_value=3, max_denominator=4)
polys = st.dictionaries(st.integers(-12, 12), coeffs, max_size=6).map(LaurentPoly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


def P(d):
    return LaurentPoly(d)


class TestLaurentPoly:
    def test_no_zero_terms_stored(self):
        p = P({1: 1, 2: 0, -3: Fraction(0)})
        assert p.terms == {1: 1}
        assert P({}).is_zero() and P({}) == ZERO

    def test_difference_of_squares(self):
        assert lp_mul(A + A ** -1, A - A ** -1) == A ** 2 - A ** -2

    def test_loop_value_squared(self):
        d = -(A ** 2) - A ** -2
        assert d * d == A ** 4 + 2 + A ** -4

    def test_identity_product(self):
        p = P({3: 2, -1: Fraction(1, 3)})
        assert lp_mul(ONE, p) == p

    def test_exact_division_examples(self):
        assert lp_div_exact(A ** 4 - A ** -4, A ** 2 - A ** -2) == A ** 2 + A ** -2
        assert lp_div_exact(A ** 2 - A ** -2, A - A ** -1) == A + A ** -1
        with pytest.raises(NotDivisible):
            lp_div_exact(A ** 2 + 1, A - 1)
        with pytest.raises(DivisionByZero):
            lp_div_exact(A, ZERO)

    def test_rendering(self):
        p = P({-4: 1, 0: -2, 8: Fraction(1, 2)})
        assert p.to_text() == "1*A^-4 - 2 + 1/2*A^8"
        assert p.to_q_text() == "1*q^-1 - 2 + 1/2*q^2"
        assert ZERO.to_text() == "0"
        assert LaurentPoly.from_json(p.to_json()) == p
        with pytest.raises(ValueError):
            A.to_q_text()

    @given(polys, polys, polys)
    def test_ring_axioms(self, p, r, s):
        assert (p * r) * s == p * (r * s)
        assert p * (r + s) == p * r + p * s
        assert p * r == r * p
        assert p + (-p) == ZERO

    @given(polys, nonzero_polys)
    def test_division_inverts_multiplication(self, p, d):
        assert lp_div_exact(lp_mul(p, d), d) == p

    @given(nonzero_polys, nonzero_polys, nonzero_polys)
    def test_gcd_contains_common_factor(self, p, r, g):
        h = lp_gcd(p * g, r * g)
        lp_div_exact(p * g, h)
        lp_div_exact(r * g, h)
        lp_div_exact(h, g.shift(-g.mindeg) * (Fraction(1) / g.lowest()[1]))

    @given(polys)
    def test_bar_is_involution(self, p):
        assert p.bar().bar() == p


class TestRationalFn:
    def test_reduce_examples(self):
        f = rf_reduce((A ** 4 - A ** -4, A ** 2 - A ** -2))
        assert f.num == A ** 2 + A ** -2 and f.den == ONE
        z = rf_reduce((ZERO, A + 1))
        assert z.num == ZERO and z.den == ONE
        p = A ** 3 + 2
        one = rf_reduce((p, p))
        assert one.num == ONE and one.den == ONE
        with pytest.raises(DivisionByZero):
            RationalFn(ONE, ZERO)

    def test_canonical_denominator(self):
        f = RationalFn(A, -(A ** 3) - 2 * A ** 7)
        assert f.den.mindeg == 0 and f.den.lowest()[1] > 0

    @given(polys, nonzero_polys, polys, nonzero_polys)
    def test_field_operations(self, a, b, c, d):
        x, y = RationalFn(a, b), RationalFn(c, d)
        assert (x + y) - y == x
        assert x * y == y * x
        if not y.is_zero():
            assert (x / y) * y == x

    @given(nonzero_polys, nonzero_polys)
    def test_equal_values_have_equal_form(self, a, b):
        f, g = RationalFn(a * b, b * b), RationalFn(a, b)
        assert (f.num, f.den) == (g.num, g.den)


class TestQSeries:
    def test_to_qseries(self):
        assert to_qseries(1 + A ** 4, 8).coeffs == (1, 0, 0, 0, 1, 0, 0, 0, 0)
        s = to_qseries(A ** 2, 4)
        assert s[2] == 1 and not s.is_q_integral()
        with pytest.raises(NegativeExponent):
            to_qseries(A ** -2, 8)

    def test_series_mul_examples(self):
        one_minus_q = QSeries.from_q({0: 1, 1: -1}, 3)
        geo = QSeries.from_q({0: 1, 1: 1, 2: 1, 3: 1}, 3)
        assert series_mul(one_minus_q, geo) == QSeries.from_q({0: 1}, 3) - QSeries.zeros(12)
        s = QSeries.from_q({0: 1, 1: -1}, 3) * QSeries.from_q({0: 1, 2: -1}, 3)
        assert s == to_qseries(q_pochhammer(2), 12)
        assert series_mul(s, QSeries.one(12)) == s

    def test_truncation_to_min_order(self):
        s = QSeries.one(8) + QSeries.one(4)
        assert s.order == 4

    def test_euler_examples(self):
        assert euler_inf(28) == QSeries.from_q({0: 1, 1: -1, 2: -1, 5: 1, 7: 1}, 7)
        assert euler_inf(0) == QSeries.one(0)
        e = euler_inf(48)
        assert e.q_list() == [1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]

    @pytest.mark.parametrize("order", [0, 5, 17, 40, 64])
    def test_euler_matches_literal_product(self, order):
        s = QSeries.one(order)
        for m in range(1, order + 1):
            s = s * QSeries.from_terms({0: 1, 4 * m: -1}, order)
        assert euler_inf(order) == s

    @given(st.dictionaries(st.integers(0, 20), st.integers(-3, 3), max_size=5),
           st.dictionaries(st.integers(0, 20), st.integers(-3, 3), max_size=5),
           st.integers(0, 24))
    def test_series_mul_matches_polynomial_product(self, a, b, order):
        p, r = LaurentPoly(a), LaurentPoly(b)
        assert to_qseries(p * r, order) == series_mul(to_qseries(p, order), to_qseries(r, order))

    @given(st.dictionaries(st.integers(1, 20), st.integers(-3, 3), max_size=5))
    def test_inverse(self, a):
        s = to_qseries(1 + LaurentPoly(a), 24)
        assert s * s.inverse() == QSeries.one(24)

    def test_rendering(self):
        s = QSeries.from_q({0: 1, 2: -3}, 3)
        assert s.to_text() == "1 - 3*q^2 + O(q^4)"
