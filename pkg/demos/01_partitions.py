"""Set partitions, the refinement lattice and its Mobius function.

Run: python3 demos/01_partitions.py
"""
from haarlab import partitions as P

# The five partitions of three points, finest first.
for p in P.enumerate_partitions(P.ALL_P, 3):
    print(f"{str(p):12s} blocks={p.num_blocks}")

# Bell versus Catalan: crossing partitions appear from k = 4 on.
for k in range(1, 8):
    print(k, P.count("bell", k), P.count("catalan", k))

# mu(0, 1) on P(k) alternates in sign and grows like a factorial.
print([P.mobius(P.singletons(k), P.one_block(k)) for k in range(1, 7)])

# Colored categories: matching pairings of o*o* connect a white point to a black one.
print([str(p) for p in P.enumerate_partitions(P.MATCHING_PAIRINGS, "o*o*")])

# The kernel of an index tuple and the join of two partitions.
a, b = P.kernel([1, 1, 2, 3]), P.kernel([1, 2, 2, 3])
print(a, b, "join:", P.join(a, b))
