"""Tails of ST_k and the false theta function Psi(q^3, q).

Extracts the empirical tails of ST_1, ST_2 and ST_3 from colors 1..8, compares
them against the closed-form candidates, and prints the three-way comparison
of the two closed forms for k = 2 with Psi(q^3, q).
"""
from singjones.families import st_invariant
from singjones.tails import empirical_tail, render_corollary, verify_corollary

for k in (1, 2, 3):
    vals = [st_invariant(k, 0, n) for n in range(1, 9)]
    rep = empirical_tail(vals, 12, colors=range(1, 9), compare=["first", "second", "psi"], k=k)
    print(f"ST_{k}")
    print("  " + rep.to_text().replace("\n", "\n  "))

print()
print(render_corollary(verify_corollary(100)))
