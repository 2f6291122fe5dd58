import pytest

from singjones.coeff import delta, lambda_coef, theta
from singjones.errors import InternalNotDivisible
from singjones.evaluate import colored_jones
from singjones.families import STParams, st_bracket, st_diagram, st_fusion_coeff, st_invariant
from singjones.qpoly import A, RationalFn


def R(x):
    return RationalFn.coerce(x)


def test_params_validated():
    STParams(1, 0, 0)
    for bad in [(0, 0, 1), (1, -1, 1), (1, 0, -1)]:
        with pytest.raises(ValueError):
            STParams(*bad)
    with pytest.raises(ValueError):
        st_invariant(0, 0, 1)


@pytest.mark.parametrize("k,l", [(1, 0), (2, 3), (5, 1)])
def test_color_zero_is_one(k, l):
    assert st_invariant(k, l, 0) == R(1)


def test_st1_at_one():
    expected = (R(delta(2)) / R(delta(1)) + theta(2, 2, 2)) / R(delta(2))
    assert st_invariant(1, 0, 1) == expected


def test_st11_at_one():
    assert lambda_coef(0, 2, 2) == A ** 8
    assert lambda_coef(2, 2, 2) == -(A ** 4)
    t0 = R(delta(2)) / R(delta(1)) * R(A ** 8)
    t1 = theta(2, 2, 2) * R(-(A ** 4))
    assert st_invariant(1, 1, 1) == (t0 + t1) / R(delta(2))


def test_fusion_coeff_examples():
    for n in range(4):
        for i in range(n + 1):
            assert st_fusion_coeff(n, i, 1) == R(delta(2 * i)) / theta(n, n, 2 * i)
    assert st_fusion_coeff(1, 1, 2) == theta(2, 2, 2) * R(delta(2)) / theta(1, 1, 2) ** 2
    with pytest.raises(ValueError):
        st_fusion_coeff(1, 2, 1)


def test_fusion_coeff_sums_to_bracket():
    for k in (1, 2, 3):
        for n in range(4):
            s = R(0)
            for i in range(n + 1):
                s = s + st_fusion_coeff(n, i, k) * theta(2 * n, 2 * n, 2 * i)
            assert s == st_bracket(k, 0, n)


def test_not_always_polynomial():
    # the normalized value is a genuine rational function in general
    v = st_invariant(1, 0, 1)
    assert not v.is_poly()
    with pytest.raises(InternalNotDivisible):
        st_invariant(1, 0, 1, strict=True)


def test_diagram_shape():
    d = st_diagram(3, 2)
    assert d.count("singular") == 3 and d.count("crossing") == 2
    with pytest.raises(ValueError):
        st_diagram(0, 1)


@pytest.mark.parametrize("k,l", [(1, 0), (2, 1), (3, 2)])
def test_matches_evaluator(k, l):
    d = st_diagram(k, l)
    for n in (1, 2):
        assert colored_jones(d, 2 * n, normalized=True) == st_invariant(k, l, n)
