"""Cremona maps on divisor classes, and why they predict special systems.

Run: python3 demos/02_cremona_lattice.py
"""
from fatlines.divisors import (
    apply_map, cubo_cubic, lines, parse_class, proper_transform_symmetric, self_cube, todd, triple_product,
)
from fatlines.interpolation import FatFlatSystem, analyze

cubo = cubo_cubic()
H, E, T = cubo.H(), cubo.E_sum(), cubo.T_sum()

# The cubo-cubic map sends H to the cubics through the four lines; cubes are kept.
print("(3H - E - T)^3 =", self_cube(3 * H - E - T))
print("(2H - E + E1 - T)^3 =", self_cube(2 * H - E + cubo.E(1) - T))

# Sextics through four lines map to degree 10 with triple lines.
six = parse_class("6;1,1,1,1", cubo)
ten = apply_map("cubo", six)
print(six, "->", ten)
print("and back:", apply_map("cubo", ten))

# Equal dimensions on both sides, so L_10(3^4) is larger than its count suggests.
for sys in (FatFlatSystem(6, (1,) * 4), FatFlatSystem(10, (3,) * 4)):
    rep = analyze(sys, seeds=(1, 2))
    print(f"{sys}: expected {rep.expected}, actual {rep.consensus_actual}")

# Todd's map on six lines: a whole family of symmetric classes in closed form
tm = todd()
for a in (3, 4, 5, 19):
    print(f"{a}H - E ->", proper_transform_symmetric("todd", a, [1] * 6))

# Degree 71 with order 19 on six lines maps to a negative degree, so it is empty.
print("71;19^6 ->", apply_map("todd", parse_class("71;19^6", tm)))

# A triple product on the blowup of seven lines
L7 = lines(7)
kn = parse_class("8;2^6,1", L7)
n = parse_class("12;3^6,2", L7)
print("K_N^2 =", triple_product(kn, kn, n))
