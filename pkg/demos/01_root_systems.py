#!/usr/bin/env python3
# Exact root systems: roots in simple-root coordinates, the Gram matrix of
# the positive-definite Cartan form, and coroots as exact linear solves.

from fractions import Fraction

from flagke import LieAlgebraSpec, build_root_system, coroot_vector, evaluate, killing
from flagke.rootsys import CartanVector

# build a rank-2 system and look at its data
a2 = build_root_system(LieAlgebraSpec.parse("A2"))
print("A2 roots:", [r.coords for r in a2.positive_roots], "and their negatives")
print("Gram matrix M = sum of root outer products:", a2.gram)
print("exact inverse:", a2.gram_inverse)

# the coroot H_alpha satisfies E(H_alpha, .) = alpha(.); here M^{-1} alpha
alpha1 = a2.simple_roots()[0]
h1 = coroot_vector(a2, alpha1)
print("H_alpha1 =", h1.values)            # (1/3, -1/6)
print("alpha1(H_alpha1) =", evaluate(alpha1, h1))

# the form E agrees with the brute-force sum over roots, exactly
h = CartanVector((Fraction(2, 7), Fraction(-1, 3)))
brute = sum(evaluate(b, h) * evaluate(b, h) for b in a2.roots)
print("E(H,H):", killing(a2, h, h), "== brute force:", brute)

# products are block diagonal; evaluation never mixes components
prod = build_root_system(LieAlgebraSpec.parse("A1xG2"))
print("A1xG2 has", len(prod.roots), "roots; Gram:", prod.gram)

# exceptional systems come from the same construction
for text in ("G2", "F4", "E6", "E7", "E8"):
    system = build_root_system(LieAlgebraSpec.parse(text))
    print(text, "->", len(system.roots), "roots")
