"""Colored invariants of the singular torus knots ST(k, l).

Computes the closed form for a few small members of the family and checks
each against the general graph-reduction evaluator run on the braid-closure
diagram.  Run with ``python demos/singular_torus.py``.
"""
from singjones.cli import value_text
from singjones.evaluate import colored_jones
from singjones.families import st_diagram, st_invariant

for k, l in [(1, 0), (2, 0), (1, 1), (3, 2)]:
    d = st_diagram(k, l)
    print(f"ST({k},{l}): {d.count('singular')} singular points, "
          f"{d.count('crossing')} crossings")
    for n in (1, 2):
        closed = st_invariant(k, l, n)
        graph = colored_jones(d, 2 * n, normalized=True)
        tag = "ok" if closed == graph else "MISMATCH"
        print(f"  color {2 * n}: {value_text(closed)}   [{tag}]")

# The normalized value need not be a Laurent polynomial.
v = st_invariant(1, 0, 1)
print("\nST(1,0) at color 2 is polynomial?", v.is_poly())
