"""
Smith normal form against the gcd of minors
===========================================
"""

import random

from jplus.linalg import IntMatrix, cokernel, gcd_minors, smith_normal_form

M = IntMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
res = smith_normal_form(M)
print("d =", res.d)
print("U =", res.U.to_rows())
print("V =", res.V.to_rows())
print("U M V == diag(d):", res.U @ M @ res.V == IntMatrix.diag(res.d, 3, 3))
print("gcd of minors:", gcd_minors(M))
print("cokernel:", cokernel(M))

# a random batch: the two computations must agree every time
rng = random.Random(1)
bad = 0
for _ in range(200):
    m, n = rng.randint(1, 6), rng.randint(1, 6)
    A = IntMatrix(m, n, tuple(rng.randint(-10, 10) for _ in range(m * n)))
    r = smith_normal_form(A)
    bad += r.nonzero != gcd_minors(A) or r.U @ A @ r.V != IntMatrix.diag(r.d, m, n)
print("200 random matrices, mismatches:", bad)

# big entries stay exact
B = IntMatrix.from_rows([[2 ** 100, 3 ** 60], [6 ** 40, 5 ** 30]])
print(smith_normal_form(B).d)
