"""
Bidiagonal factorization
========================

Neville elimination writes a nonsingular TP matrix as a product of
nonnegative bidiagonal factors and a positive diagonal.
"""

from fractions import Fraction as F

from tpschur import bd_factorize, collocate, dilation_system

M = collocate(dilation_system("geometric", [1, 2, 3]), [F(1, 10), F(1, 5), F(3, 10)]).entries
f = bd_factorize(M)

print("pivots:", [str(p) for p in f.pivots])
print("lower:", {k: str(v) for k, v in f.lower.items()})
print("upper:", {k: str(v) for k, v in f.upper.items()})
print("all nonnegative:", f.is_nonnegative())
print("reconstructs exactly:", f.reconstruct() == M)
