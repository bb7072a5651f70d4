"""Loops, spectral measures and circular measures of ADE graphs.

Run: python3 demos/05_graphs.py
"""
from haarlab import graphs as G

for name in ("A(5)", "D(5)", "E6", "Atilde(6)"):
    g = G.ade(name)
    print(name, [G.loop_count(g, k) for k in range(0, 11, 2)])

# The 2n-cycle gives the uniform measure on 2n-th roots of unity.
eps = G.circular_measure(G.ade("Atilde(6)"))
for q, w in eps.atoms:
    print(f"{complex(q):.3f}  {w:.4f}")

# Compare the A and D families with their cyclotomic closed forms.
for name in ("A(4)", "Atilde(8)", "D(6)", "Dtilde(6)"):
    rep = G.ade_circular_check(name)
    print(name, rep["target"], f"{rep['max_deviation']:.1e}")
