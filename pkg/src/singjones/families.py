"""The singular torus family ST(k, l).

ST(k, l) is the closure of a two-strand braid with k singular points
followed by l classical crossings.  Fusing the two strands at color 2n
diagonalizes both kinds of generator, which gives a one-line sum over the
fusion channel 2i.
"""
from __future__ import annotations

from dataclasses import dataclass

from .coeff import delta, lambda_coef, theta
from .diagram import SingularDiagram, braid_closure
from .errors import InternalNotDivisible
from .qpoly import RF_ZERO, RationalFn


@dataclass(frozen=True)
class STParams:
    k: int
    l: int
    n: int

    def __post_init__(self):
        if self.k < 1 or self.l < 0 or self.n < 0:
            raise ValueError(f"need k >= 1, l >= 0, n >= 0 (got {self})")


def st_fusion_coeff(n: int, i: int, k: int) -> RationalFn:
    """R(n, i, k) = theta(2n,2n,2i)^(k-1) Delta_{2i} / theta(n,n,2i)^k."""
    if not 0 <= i <= n or k < 1:
        raise ValueError("need 0 <= i <= n and k >= 1")
    return (theta(2 * n, 2 * n, 2 * i) ** (k - 1) * RationalFn(delta(2 * i))
            / theta(n, n, 2 * i) ** k)


def st_bracket(k: int, l: int, n: int) -> RationalFn:
    """Unnormalized [ST(k, l)]_{2n}."""
    STParams(k, l, n)
    total = RF_ZERO
    for i in range(n + 1):
        lam = RationalFn(lambda_coef(2 * i, 2 * n, 2 * n)) ** l
        total = total + st_fusion_coeff(n, i, k) * theta(2 * n, 2 * n, 2 * i) * lam
    return total


def st_invariant(k: int, l: int, n: int, strict: bool = False) -> RationalFn:
    """[ST(k, l)]_{2n} / Delta_{2n}.

    The quotient is a Laurent polynomial for many parameters but not in
    general (ST(1, 0) at n = 1 is -[3]/[2]); with ``strict`` a non-polynomial
    result raises :class:`InternalNotDivisible`.
    """
    val = st_bracket(k, l, n) / RationalFn(delta(2 * n))
    if strict and not val.is_poly():
        raise InternalNotDivisible(f"ST({k},{l}) at n={n} is not a Laurent polynomial")
    return val


def st_diagram(k: int, l: int) -> SingularDiagram:
    """Two-strand braid closure: k singular points, then l positive crossings."""
    if k < 1 or l < 0:
        raise ValueError("need k >= 1 and l >= 0")
    return braid_closure(2, [(0, "s")] * k + [(0, "+")] * l)
