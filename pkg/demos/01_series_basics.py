"""
Truncated q-series and eta quotients
====================================

Every series carries an explicit window [min_exp, prec): coefficients below
q**prec are exact, anything beyond is unknown.
"""

from tspp5 import LaurentSeries, U5
from tspp5.etaq import X, XI, euler_e, expand, phi_neg

# Euler's product E(q) = (q; q)_inf, straight from the pentagonal numbers
E = euler_e(30)
print(E)

# its inverse generates the partition numbers
p = E.invert()
print("p(0..14) =", p.coefficients(0, 15))

# windows shrink honestly: a series known below q^10 times q^-3 is known below q^7
f = LaurentSeries([1, 1, 2, 3, 5, 8, 13, 21, 34, 55], 0, 10)
print((f * LaurentSeries.monomial(-3, 20)).prec)

# the two eta quotients everything else is built from
x = expand(X, 12)
xi = expand(XI, 12)
print("X  =", x)
print("xi =", xi)  # starts at q^-4

# U5 keeps every fifth coefficient: U5(xi) is exactly 5X
lhs = U5(expand(XI, 505))
print(lhs.agrees_with(expand(X, 100) * 5), lhs.prec)

# theta function phi(-q) = 1 - 2q + 2q^4 - 2q^9 + ...
print(phi_neg(20))

# reduction mod 5^k is a ring map, so it commutes with products
a, b = expand(X, 50), phi_neg(50)
print((a * b).reduce_mod(125) == a.reduce_mod(125) * b.reduce_mod(125))
