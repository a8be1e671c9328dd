# Nilpotent partner counts and the divisibility ledgers that pin down the
# hypercenter of any group sharing the graph of S_n or A_n.
# Run: python demos/03_counting_and_ledgers.py

from nilgraph.counting import (
    certify_trivial_hypercenter,
    check_degree_bounds,
    count_nilpotent_partners_distinct,
    h,
    prime_partitions,
    prime_sum_decompose,
)

print("cycle types of S9 with distinct prime (or 1) parts:")
for t in prime_partitions(9):
    print(f"  {str(t):>8}: {count_nilpotent_partners_distinct(t)} nilpotent partners")

print("\n", certify_trivial_hypercenter(10).to_text(), sep="")

print("\nsums of distinct primes >= 5:")
for m in (28, 89, 90, 1000):
    print(f"  {m} = {' + '.join(map(str, prime_sum_decompose(m)))}")

print("\nh(19, 2) =", h(19, 2), " bound 5*19*18/48 =", 5 * 19 * 18 / 48)
# the bounds only start to hold at 19
bad = [r.n for r in check_degree_bounds(range(3, 201)) if not r.all_ok]
print("n in 3..200 where some degree bound fails:", bad)
