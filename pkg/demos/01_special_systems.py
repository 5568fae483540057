"""Dimensions of surfaces singular along general lines, and where they go wrong.

Run: python3 demos/01_special_systems.py
"""
import numpy as np

from fatlines import field as ff
from fatlines.interpolation import (
    FatFlatSystem, analyze, condition_rows, conditions_count, sample_lines, virtual_dimension,
)

# Order-m vanishing along one line costs m(m+1)(3d+5-2m)/6 linear conditions on degree-d forms.
for m in (1, 2, 3):
    print(f"m={m}:", [conditions_count(m, d) for d in range(m, m + 6)])

# The condition rows for one random line over F_32003
line = sample_lines(1, seed=1)[0]
rows = condition_rows(line, 3, 8)
print("rows for order 3 in degree 8:", rows.shape, "rank", ff.rank(rows))

# Naive count versus reality: the virtual dimension subtracts conditions
# as if they were independent, and the matrix rank tells the truth.
for label in ["L_4(1^6)", "L_4(2^3)", "L_8(3^4)", "L_10(3^4)", "L_12(3^6,2)"]:
    rep = analyze(FatFlatSystem.from_label(label))
    tag = "special" if rep.special else "fine"
    print(f"{label:<13} virtual {rep.virtual:>4}  actual {rep.consensus_actual:>3}  ({tag})")

# Degree 20, five lines of order 6 and one simple line: a 1876 x 1771 elimination per seed.
big = FatFlatSystem(20, (6, 6, 6, 6, 6, 1))
print(big, "has", big.num_conditions, "conditions on", big.num_monomials, "monomials")
rep = analyze(big, seeds=(1,))
print("  virtual", virtual_dimension(big), "actual", rep.consensus_actual)

# Semicontinuity: a random configuration can only be more special than the
# general one, so agreement across seeds is the evidence we report.
print(rep.caveat)
