"""
Schur polynomials two ways
==========================

Evaluate s_λ with the bialternant quotient and with the tableau sum, and
look at the basic properties.
"""

from fractions import Fraction

from tpschur import schur_bialternant, schur_tableaux, vandermonde, enumerate_partitions

x = [Fraction(1), Fraction(2), Fraction(5, 2)]
print("V(x) =", vandermonde(x))

for lam in enumerate_partitions(max_size=3, max_length=3):
    b = schur_bialternant(lam, x)
    t = schur_tableaux(lam, x)
    print(f"s_{tuple(lam)}(x) = {b}  (tableaux: {t})")

# more parts than variables gives zero
print("s_(1,1,1,1)(x) =", schur_bialternant((1, 1, 1, 1), x))

# repeated nodes: only the tableau sum is defined
print("s_(2,1)(3, 3) =", schur_tableaux((2, 1), [3, 3]))
