import itertools
import json

import pytest
from hypothesis import given, strategies as st

from singjones import coeff
from singjones.coeff import (CACHE, AdmissibleTriple, TetLabels, admissible, bubble_coef, delta,
                             lambda_coef, pochhammer, pochhammer_series, quantum_int, sixj, tet,
                             theta, theta_poch, theta_ratio_check)
from singjones.errors import CacheFormatError, NotAdmissible
from singjones.qpoly import A, ONE, ZERO, LaurentPoly, QSeries, RationalFn, lp_div_exact


def R(x):
    return RationalFn.coerce(x)


def triples(limit):
    for a, b, c in itertools.product(range(limit + 1), repeat=3):
        if admissible(a, b, c):
            yield a, b, c


def test_quantum_integers():
    assert quantum_int(0) == ZERO
    assert quantum_int(1) == ONE
    assert quantum_int(2) == A ** 2 + A ** -2
    assert quantum_int(3) == A ** 4 + 1 + A ** -4


@pytest.mark.parametrize("n", range(0, 51))
def test_delta_matches_quotient_form(n):
    num = A ** (2 * (n + 1)) - A ** (-2 * (n + 1))
    expected = lp_div_exact(num, A ** 2 - A ** -2) * (-1) ** n
    assert delta(n) == expected


def test_delta_examples():
    assert delta(0) == ONE
    assert delta(1) == -(A ** 2) - A ** -2
    assert delta(2) == A ** 4 + 1 + A ** -4


def test_pochhammer():
    q = A ** 4
    assert pochhammer(0) == ONE
    assert pochhammer(1) == 1 - q
    assert pochhammer(3) == (1 - q) * (1 - q ** 2) * (1 - q ** 3)
    assert pochhammer_series(3, 40) == QSeries.from_terms(pochhammer(3).terms, 40)


def test_admissibility():
    assert admissible(1, 1, 2)
    assert not admissible(1, 1, 1)
    assert not admissible(1, 2, 5)
    t = AdmissibleTriple(3, 5, 4)
    assert (t.x + t.y, t.x + t.z, t.y + t.z) == (3, 5, 4)
    with pytest.raises(NotAdmissible):
        AdmissibleTriple(1, 1, 1)


def test_theta_examples():
    for a in range(6):
        assert theta(a, a, 0) == delta(a)
    assert theta(1, 1, 2) == A ** 4 + 1 + A ** -4
    q = quantum_int
    assert theta(2, 2, 2) == -R(q(4) * q(3)) / R(q(2) ** 2)
    with pytest.raises(NotAdmissible):
        theta(1, 1, 1)
    with pytest.raises(NotAdmissible):
        theta_poch(1, 1, 1)


def test_theta_is_not_always_laurent():
    # theta(2,2,2) = -[4][3]/[2]^2 has a genuine denominator
    assert not theta(2, 2, 2).is_poly()


@pytest.mark.parametrize("abc", list(triples(6)))
def test_theta_symmetric_and_dual_form(abc):
    a, b, c = abc
    v = theta(a, b, c)
    for p in itertools.permutations(abc):
        assert theta(*p) == v
    assert theta_poch(a, b, c) == v


def test_lambda_examples():
    assert lambda_coef(0, 1, 1) == -(A ** 3)
    assert lambda_coef(2, 1, 1) == A ** -1
    assert lambda_coef(0, 2, 2) == A ** 8
    assert lambda_coef(2, 2, 2) == -(A ** 4)
    for a in range(6):
        # the full twist on an a-colored strand sits in channel 0 of (a, a)
        assert lambda_coef(0, a, a) == LaurentPoly.monomial(a * (a + 2), (-1) ** a)
        assert lambda_coef(a, a, 0) == ONE
    with pytest.raises(NotAdmissible):
        lambda_coef(1, 1, 1)


def test_tet_paper_special_case():
    assert tet(2, 1, 1, 1, 2, 2) == theta(2, 2, 2)


@pytest.mark.parametrize("n", range(1, 5))
def test_tet_special_families(n):
    for i in range(n + 1):
        v = tet(2 * i, n, n, n, 2 * n, 2 * n)
        assert v == theta(2 * n, 2 * n, 2 * i)
        assert tet(2 * i, 2 * n, 2 * n, n, n, n) == v


def _tet_labels(limit):
    for lab in itertools.product(range(limit + 1), repeat=6):
        t = TetLabels(*lab)
        if t.is_admissible():
            yield t


def test_tet_symmetries_small():
    CACHE.clear()
    for t in list(_tet_labels(3))[::7]:
        v = tet(t, use_cache=False)
        for s in t.symmetries():
            assert tet(s, use_cache=False) == v


def test_tet_degenerate_reduces_to_theta():
    # a zero label forces two pairs of equal colors
    for a, b, c in triples(5):
        # Tet[a d e; f c b] with d = 0: then e = a and f = b
        assert tet(a, 0, a, b, c, b) == theta(a, b, c)


def test_tet_requires_admissible():
    with pytest.raises(NotAdmissible):
        tet(1, 1, 1, 1, 1, 1)


def test_sixj_involution_smallest():
    for j in (0, 2):
        for jp in (0, 2):
            s = sum((sixj(1, 1, i, 1, 1, j) * sixj(1, 1, jp, 1, 1, i) for i in (0, 2)), R(0))
            assert s == R(int(j == jp))


def test_sixj_cupcap_expansion():
    # cup-cap = f2-channel + (1/Delta_1) * (through strands)
    assert sixj(1, 1, 2, 1, 1, 0) == R(1)
    assert sixj(1, 1, 0, 1, 1, 0) == R(1) / R(delta(1))


def test_sixj_inadmissible_zero():
    assert sixj(1, 1, 1, 1, 1, 0).is_zero()
    assert sixj(1, 2, 0, 1, 1, 0).is_zero()


@pytest.mark.parametrize("abcd", [x for x in itertools.product(range(4), repeat=4)
                                  if sum(x) % 2 == 0][::5])
def test_sixj_involution(abcd):
    a, b, c, d = abcd
    js = [j for j in range(8) if admissible(a, b, j) and admissible(c, d, j)]
    is_ = [i for i in range(8) if admissible(a, c, i) and admissible(b, d, i)]
    for j in js:
        for jp in js:
            s = R(0)
            for i in is_:
                s = s + sixj(a, b, i, c, d, j) * sixj(a, c, jp, b, d, i)
            assert s == R(int(j == jp))


def test_bubble():
    assert bubble_coef(1, 1, 2, 2).is_zero()
    assert bubble_coef(2, 1, 1, 2) == R(1)
    assert bubble_coef(3, 2, 3, 3) == theta(3, 2, 3) / R(delta(3))


@pytest.mark.parametrize("n", range(0, 7))
def test_theta_ratio(n):
    for i in range(n + 1):
        assert theta_ratio_check(n, i)


class TestCache:
    def test_roundtrip(self, tmp_path):
        CACHE.clear()
        v = (theta(3, 3, 2), tet(2, 2, 2, 2, 2, 2), sixj(2, 2, 2, 2, 2, 2))
        path = tmp_path / "c.json"
        CACHE.dump(path)
        CACHE.clear()
        CACHE.load(path)
        assert len(CACHE) >= 3
        assert (theta(3, 3, 2), tet(2, 2, 2, 2, 2, 2), sixj(2, 2, 2, 2, 2, 2)) == v

    def test_corrupt_file_rejected_without_side_effects(self, tmp_path):
        CACHE.clear()
        theta(2, 2, 2)
        before = len(CACHE)
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        with pytest.raises(CacheFormatError):
            CACHE.load(bad)
        bad.write_text(json.dumps({"version": 99}))
        with pytest.raises(CacheFormatError):
            CACHE.load(bad)
        bad.write_text(json.dumps({"version": 1, "theta": [[[1, 2], "x"]]}))
        with pytest.raises(CacheFormatError):
            CACHE.load(bad)
        assert len(CACHE) == before

    def test_empty_cache_is_noop(self, tmp_path):
        CACHE.clear()
        path = tmp_path / "e.json"
        CACHE.dump(path)
        CACHE.load(path)
        assert len(CACHE) == 0
        assert theta(1, 1, 2) == A ** 4 + 1 + A ** -4


@given(st.integers(0, 8), st.integers(0, 8), st.integers(0, 8))
def test_theta_positive_properties(a, b, c):
    if admissible(a, b, c):
        assert theta(a, b, c) == theta(b, c, a)
    else:
        with pytest.raises(NotAdmissible):
            theta(a, b, c)
