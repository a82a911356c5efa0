#!/usr/bin/env python3
# Painted flags: the R_K / R_m split, invariant complex structures as
# parabolic sign choices, the center of k, walls and chamber membership.

from fractions import Fraction

from flagke import (
    LieAlgebraSpec,
    build_flag,
    build_root_system,
    chamber_position,
    default_complex_structure,
    ricci_invariant,
    validate_complex_structure,
    wall_roots,
)
from flagke.flag import InvariantComplexStructure
from flagke.rootsys import CartanVector, Root

a2 = build_root_system(LieAlgebraSpec.parse("A2"))

# painting node 0 puts {a1, -a1} into K; four roots remain transverse
flag = build_flag(a2, [0])
print("painted {0}: |R_K| =", len(flag.r_k), " |R_m| =", len(flag.r_m))
print("center of k is", flag.center_dim, "dimensional:", [b.values for b in flag.center_basis])

# the default structure takes the standard positive half; it is parabolic
full = build_flag(a2, [])
j = default_complex_structure(full)
print("default R_m+ on the full flag:", [r.coords for r in j.positive])

# a non-parabolic sign choice is rejected with the violating pair
bad = InvariantComplexStructure((Root((1, 0)), Root((0, 1)), Root((-1, -1))))
print("bad choice verdict:", validate_complex_structure(full, bad).violations[0])

# the Ricci element: sum of coroots over R_m+, always chamber-interior
zk = ricci_invariant(full, j)
print("Z_kappa =", zk.values, "->", chamber_position(full, j, zk).position)
print("-Z_kappa ->", chamber_position(full, j, -zk).position)

# walls are the R_m roots vanishing on a vector; regular means no walls
x = CartanVector((Fraction(1), Fraction(0)))
print("walls at (1,0):", [r.coords for r in wall_roots(full, x)])
print("position of (1,0):", chamber_position(full, j, x).position)
