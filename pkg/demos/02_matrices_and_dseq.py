"""
From U5 images to the a/b matrices and the d-sequences
======================================================

U5(X**i) and U5(xi * X**i) are polynomials in X.  Their coefficient rows
form the matrices a and b; five rows of each determine everything else
through a 15-term recurrence.
"""

from tspp5 import padic, ubasis
from tspp5.dseq import d_sequence, d_sequence_via_t, verify_thd

# recompute the first rows from q-expansions and compare with the printed ones
A, B = ubasis.compute_base_rows()
PA, PB = ubasis.appendix_rows()
print("rows 1-5 reproduced:", A == PA and B == PB)
print("a(1, .) =", A.row(1))

# the recurrence taps come from the elementary symmetric functions of the
# five U5 branches, obtained by Newton's identities
sigmas = ubasis.newton_sigmas()
for t, s in enumerate(sigmas, 1):
    print(f"sigma_{t} =", s)

# extend by recurrence and spot-check row 6 against a direct computation
A7 = A.extended(7)
direct = ubasis.x_basis_decompose(ubasis.u_of_x_power(6, 360), 30)
print("row 6 by recurrence matches:", direct == A7.row(6))

# d-sequences: d_1 = (5, 0, ...), then alternate a and b
d3 = d_sequence(3)
print("d_3(1), d_3(2) =", d3[1], d3[2])
d5 = d_sequence(5)
print("d_5 support:", d5.support, " same via t-matrix:", d5 == d_sequence_via_t(5))

# every entry of d_3 is divisible by at least 5^(2 + floor((5j-5)/6))
print([padic.val5(d3[j]) - padic.bound_d(2, j) for j in range(1, 11)])

# the series D_2 = U5(U5(xi)) really is sum_j d_2(j) X^j
print(verify_thd(2, 60).status)
