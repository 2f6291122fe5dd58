import itertools

import pytest

from singjones import coeff
from singjones.coeff import TetLabels, admissible
from singjones.diagram import braid_closure, circle_graph, tetrahedron_graph, theta_graph, unknot
from singjones.errors import BoundaryMismatch, TooLarge
from singjones.families import st_invariant
from singjones.qpoly import A, RationalFn
from singjones.tl_oracle import (DELTA, PlanarMatching, TLElement, eval_cabled_bruteforce,
                                 eval_diagram_bruteforce, eval_graph_bruteforce, hook, identity,
                                 jw, tensor, tl_compose, trace_closure)


def R(x):
    return RationalFn.coerce(x)


def test_loop_value():
    assert DELTA == -(A ** 2) - A ** -2


def test_planarity_enforced():
    # strands 0->3 and 1->2 would cross
    with pytest.raises(ValueError):
        PlanarMatching.from_pairs(2, 2, [(0, 3), (1, 2)])


def test_hook_relations():
    e1 = hook(2, 1)
    assert tl_compose(e1, e1) == e1.scale(DELTA)
    e1, e2 = hook(3, 1), hook(3, 2)
    assert e1 * e2 * e1 == e1
    assert identity(3) * e2 == e2 and e2 * identity(3) == e2


def test_boundary_mismatch():
    with pytest.raises(BoundaryMismatch):
        tl_compose(identity(2), identity(3))
    with pytest.raises(BoundaryMismatch):
        identity(2) + identity(3)


def test_jw_small():
    assert jw(1) == identity(1)
    expected = identity(2) + hook(2, 1).scale(R(1) / R(A ** 2 + A ** -2))
    assert jw(2) == expected


@pytest.mark.parametrize("n", range(1, 5))
def test_jw_properties(n):
    f = jw(n)
    assert f * f == f
    for i in range(1, n):
        assert (hook(n, i) * f).is_zero()
        assert (f * hook(n, i)).is_zero()
    assert trace_closure(f) == coeff.delta(n)


@pytest.mark.parametrize("m,n", [(m, n) for m in range(5) for n in range(5) if 1 <= m + n <= 4])
def test_jw_absorption(m, n):
    big = jw(m + n)
    assert tensor(jw(m), jw(n)) * big == big
    assert big * tensor(jw(m), jw(n)) == big


def test_circle_graphs():
    for n in range(5):
        assert eval_graph_bruteforce(circle_graph(n)) == coeff.delta(n)


@pytest.mark.parametrize("abc", [t for t in itertools.product(range(4), repeat=3)
                                 if admissible(*t)])
def test_theta_graphs(abc):
    assert eval_graph_bruteforce(theta_graph(*abc)) == coeff.theta(*abc)


def test_inadmissible_graph_is_zero():
    assert eval_graph_bruteforce(theta_graph(1, 1, 3)).is_zero()


def test_tetrahedron_spot_checks_at_three():
    for lab in [(0, 1, 1, 2, 3, 3), (2, 2, 2, 3, 3, 3), (3, 3, 2, 3, 3, 2)]:
        t = TetLabels(*lab)
        assert t.is_admissible()
        assert eval_graph_bruteforce(tetrahedron_graph(t)) == coeff.tet(t)


def test_budget():
    with pytest.raises(TooLarge):
        eval_graph_bruteforce(tetrahedron_graph(TetLabels(2, 2, 2, 2, 2, 2)), budget=10)
    with pytest.raises(TooLarge):
        eval_cabled_bruteforce(unknot(), 5)


def test_diagram_examples():
    for n in (1, 2):
        assert eval_diagram_bruteforce(unknot(), n) == coeff.delta(2 * n)
    kink = eval_diagram_bruteforce(braid_closure(2, [(0, "+")]), 1)
    ratio = kink / R(coeff.delta(2))
    assert ratio.is_poly() and ratio.to_poly().is_monomial()
    st1 = eval_diagram_bruteforce(braid_closure(2, [(0, "s")]), 1)
    assert st1 == st_invariant(1, 0, 1) * R(coeff.delta(2))
    assert st1 == R(coeff.delta(2)) / R(coeff.delta(1)) + coeff.theta(2, 2, 2)


def test_single_crossing_expansion_convention():
    # closing one crossing: the A-smoothing leaves one loop, the other two
    k = eval_cabled_bruteforce(braid_closure(2, [(0, "+")]), 1)
    assert k == R(A * DELTA + A ** -1 * DELTA ** 2)
    assert k == R(-(A ** -3) * DELTA)
