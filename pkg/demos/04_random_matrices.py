"""Wigner, Wishart and block-transposed Wishart spectra against their limits.

Run: python3 demos/04_random_matrices.py
"""
from haarlab import laws as L
from haarlab import rmt as R
from haarlab.rmt import EnsembleSpec

wig = R.eigen_histogram(EnsembleSpec("wigner", N=256, seed=0), "by_sqrtN", draws=20)
print("Wigner vs semicircle:", R.compare(wig, L.semicircle(1), tol=0.05)["l1"])

wis = R.eigen_histogram(EnsembleSpec("wishart", N=128, M=256, seed=0), "by_N", draws=20, max_moment=3)
rep = R.compare(wis, L.named_moments("marchenko_pastur", 3, 2))
for row in rep["moments"]:
    print(f"k={row['k']} est={row['est']:.3f} target={row['target']:.0f} z={row['z']:+.2f}")

# The partial transpose of a square Wishart matrix is close to a shifted semicircle.
blk = R.eigen_histogram(EnsembleSpec("block_wishart", d=30, n=10, m=10, seed=0), "by_dm", draws=5)
print("block Wishart: mean", round(blk.mean(), 3), "variance", round(blk.variance(), 3))
print("L1 to shifted semicircle:", R.histogram_l1(blk.eigenvalues, L.shifted_semicircle(1)))
