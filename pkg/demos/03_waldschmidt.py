"""Initial degrees of symbolic powers and the Waldschmidt constant of six lines.

Run: python3 demos/03_waldschmidt.py
"""
from fractions import Fraction

from fatlines.waldschmidt import (
    alpha_symbolic, bound_report, conjectured_value, known_table, lower_bound_witness,
)

# alpha(I^(m)) / m decreases toward the constant
for s in (3, 4, 6):
    ratios = [Fraction(alpha_symbolic(s, m, seeds=(1, 2)), m) for m in (1, 2, 3)]
    print(f"s={s}:", ", ".join(str(r) for r in ratios), " known:", known_table()[s])

# Six lines: degree-12 surfaces of type L_12(4,3^5) give 72/19 from above,
# Todd's map rules out anything cheaper.
rep = bound_report(6, m_max=1, seeds=(1, 2))
print("upper:", rep.upper_bound, "from", rep.upper_bound_source)
print("lower:", rep.lower_bound, "from", rep.lower_bound_source)
for m in (1, 2, 10):
    print(f"  witness m={m}:", lower_bound_witness(m))

# More lines: only conjectural values
print("s=7:", conjectured_value(7))
for s in (8, 10, 20):
    t = conjectured_value(s)
    print(f"s={s}: {t:.10f}  residual {abs(t**3 - 3*s*t + 2*s):.1e}")
