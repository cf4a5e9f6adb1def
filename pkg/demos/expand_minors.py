"""
Initial minors as Schur series
==============================

A minor of a collocation matrix at consecutive rows and leading columns
expands in Schur polynomials of the window nodes, weighted by Wronskian
minors at 0. For polynomials the sum is finite; for analytic functions it
converges geometrically.
"""

from fractions import Fraction as F

from tpschur import Kernel, dilation_system, expand_minor, expand_minor_polynomial, polynomial_system

# a polynomial basis: the finite sum is exact
p = polynomial_system([[1, 2, 0], [0, 1, 1], [1, 0, 3]])
e = expand_minor_polynomial(p, [F(1, 3), F(1, 2), F(2)], 3, 2)
print("polynomial minor:", e.value_direct, "series:", e.value_series)

# the geometric kernel 1/(1 - a x): error shrinks by about max a_j x_i per grade
g = dilation_system("geometric", [1, 2])
e = expand_minor(g, [F(1, 10), F(1, 5)], 2, 2, max_size=12)
for k, err in e.convergence_curve():
    print(f"K={k:2d}  error={float(err):.3e}")

# exp needs floating point for the collocation values
hp = Kernel("float", 256)
e = expand_minor(dilation_system("exp", [1, 2, 3]), [F(1, 10), F(1, 5), F(3, 10)], 3, 3, max_size=30, kernel=hp)
print("exp 3x3 minor:", e.value_direct, "error", e.abs_error)
