"""The knot 6_2: colored Jones values and how their low ends stabilize.

The diagram comes from the standard PD code.  Values are normalized by the
unknot and corrected for framing, then shifted so the series starts at q^0.
"""
from singjones.diagram import load_fixture
from singjones.evaluate import colored_jones
from singjones.qpoly import LaurentPoly
from singjones.tails import agree_order, empirical_tail, normalize_series, six_two_table

knot = load_fixture("six_two")
print("crossings:", len(knot.nodes), " writhe:", knot.writhe())

computed = {}
for strands in (1, 2):
    v = colored_jones(knot, strands, normalized=True, writhe_correct=True)
    computed[strands + 1] = normalize_series(v)
    print(f"row {strands + 1}: {computed[strands + 1].to_text()}")

table = six_two_table()
for n, s in computed.items():
    print(f"row {n} matches the table through q^{table[n].q_terms - 1}:",
          s.truncate(table[n].order) == table[n])

print("\nagree orders between consecutive table rows:",
      [agree_order(table[n], table[n + 1]) for n in range(2, 8)])
rows = [LaurentPoly({4 * e: c for e, c in enumerate(table[n].q_list())}) for n in sorted(table)]
print("stabilized prefix:", empirical_tail(rows, 10).prefix.to_text())
