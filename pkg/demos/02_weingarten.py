"""Exact Haar integrals through Gram and Weingarten matrices.

Run: python3 demos/02_weingarten.py
"""
from haarlab import haar as H
from haarlab import partitions as P
from haarlab.haar import GroupSpec
from haarlab.rmt import EnsembleSpec, monomial_average

# Gram matrix N^{|pi v nu|} over the pairings of four points, and its inverse.
data = H.weingarten(P.PAIRINGS, 4, 3)
print("Gram:", data.gram)
print("Weingarten:", data.weingarten)

# The fourth moment of one entry of a random orthogonal matrix.
for N in range(2, 7):
    print(N, H.integrate(GroupSpec("ON", N), "u11^4"))

# Check against Monte-Carlo sampling of O(3).
est, err = monomial_average(EnsembleSpec("haar_orthogonal", N=3, seed=1), [(1, 1, False)] * 4, 50000)
print(f"Monte-Carlo: {est:.4f} +- {err:.4f}  (exact 1/5)")

# Free versus classical spheres differ already at the fourth moment.
for N in (2, 4, 8):
    print(N, H.free_sphere_integral("real", N, "x1^4"), H.sphere_integral_real(N, [4]))

# Truncated characters of S_N: the fixed points among the first s letters.
law = H.sn_truncated_law(8, 4)
print("S_8, s=4:", [(k, str(w)) for k, w in law.atoms])
