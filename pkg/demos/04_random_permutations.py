# Cycle statistics of uniform permutations, exact for small n and sampled for n = 19.
# Run: python demos/04_random_permutations.py

import numpy as np

from nilgraph.perm import parse_cycles
from nilgraph.randperm import (
    cycle_length_frequencies,
    joint_cycle_stats_exact,
    nonadjacency_fraction,
    partition_distribution,
    prime_order_degree_report,
)

st = joint_cycle_stats_exact(6)
print(f"S6: 1 and 2 share a cycle in {st.same_cycle_count} of {st.total}")
print("    (a, b) counts otherwise:", sorted(set(st.pair_counts.values())))

d = partition_distribution(4, 7)
for key, p in d.probabilities().items():
    print(f"  {key}: {p}")

freq = cycle_length_frequencies(6, 60_000, np.random.default_rng(1))
print("\nlength of the cycle through 1 in S6:", dict(sorted(freq.items())))

rep = prime_order_degree_report(4)
for row in rep.rows:
    print(f"S4 {str(row.representative):>12}: nilpotent fraction {row.fraction}")

for text in ["(1 2)", "(1 2 3)", "(1 2)(3 4)"]:
    est = nonadjacency_fraction(parse_cycles(text, 19), 5000, 42)
    lo, hi = est.interval()
    print(f"S19 {text:>12}: {est.estimate:.4f}  [{lo:.4f}, {hi:.4f}]")
