"""Moments, cumulants and densities of the named limit laws.

Run: python3 demos/03_laws.py
"""
import numpy as np

from haarlab import laws as L

# Poisson moments are Bell-type numbers and all classical cumulants equal t.
m = L.named_moments("poisson", 6, 2)
print("Poisson(2) moments:", [str(x) for x in m.values])
print("cumulants:", [str(x) for x in L.moments_to_cumulants(m).values])

# Marchenko-Pastur has all free cumulants equal to t.
mp = L.named_moments("marchenko_pastur", 6, 3)
print("MP(3) free cumulants:", [str(x) for x in L.r_transform_series(mp)])

# Binomials converge to Poisson.
for n in (10, 100, 1000):
    print(n, L.total_variation(L.plt_iterate(1, n), L.poisson_atoms(1)))

# Recover the semicircle density from its Cauchy transform.
law = L.semicircle(1)
x = np.linspace(-2.5, 2.5, 11)
dens, spread = L.stieltjes_invert(law.cauchy, x)
for xi, d, e in zip(x, dens, law.density(x)):
    print(f"{xi:5.2f} {d:.4f} {e:.4f}")
