"""
Cauchy-type identities
======================

Each analytic f gives Σ (F_λ/C_λ) s_λ(a) s_λ(x) = det[f(a_j x_i)] / (V(a) V(x)).
The geometric kernel recovers the classical Cauchy identity; 1/(1 - x²) and
1/(1 + x²) give sums over a restricted class of partitions.
"""

from fractions import Fraction as F

from tpschur import Kernel, verify_identity

a = [F(1, 4), F(1, 2)]
x = [F(1, 4), F(1, 2)]

for identity in ("classic", "even_minus", "even_plus"):
    r = verify_identity(None, identity, a, x, 40)
    print(f"{identity:10s} rhs={r.rhs_closed}  error at K=40: {float(r.final_error):.2e}  "
          f"ratio {r.decay_ratio:.3f}")

# no closed form: the determinant side is the reference
r = verify_identity("cosh", "generic", [F(1), F(2)], [F(1, 3), F(1, 2)], 30, kernel=Kernel("float", 256))
print("cosh      ", r.rhs_determinant, "error", r.final_error)

print(r.to_csv()[:80])
