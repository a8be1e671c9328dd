"""End-to-end acceptance checks, one test per criterion.

Each test records its outcome and wall time; a summary line per criterion is
printed at the end of the pytest run.
"""
import functools
import itertools
import math
import time
from fractions import Fraction

import networkx as nx
import pytest
from sympy import isprime, primerange

from conftest import ACCEPTANCE
from nilgraph import counting, embedder, randperm
from nilgraph.checks import all_graphs
from nilgraph.graph import (
    build_nilgraph,
    degree,
    diameter,
    hamiltonian,
    induced_subgraph,
    is_complete_multipartite,
    isolated_vertices,
    nonnilpotent_graph,
    verify_quotient_blowup,
)
from nilgraph.group import builtin_groups, hypercenter, make_group, nilpotent_partners, pair_nilpotent_perm
from nilgraph.perm import CycleType, Permutation, all_permutations, parse_cycles


def criterion(num, name, limit):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            start = time.perf_counter()
            ok = False
            try:
                fn(*args, **kwargs)
                ok = True
            finally:
                secs = time.perf_counter() - start
                within = secs < limit
                ACCEPTANCE[num] = (name, ok and within, secs, limit)
                print(f"criterion {num}: {'PASS' if ok and within else 'FAIL'} {name} in {secs:.2f}s")
            assert secs < limit, f"took {secs:.1f}s, limit {limit}s"

        return run

    return wrap


def _nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


@criterion(1, "degree of (1 2)(3 4) in the graph of S4 is 8", 1)
def test_degree_eight():
    G = make_group("S4")
    R = nonnilpotent_graph(G)
    v = R.ids.index(G.index[parse_cycles("(1 2)(3 4)", 4)])
    assert degree(R, v) == 8


@criterion(2, "D9 and GD(C3xC3) give isomorphic complete multipartite graphs", 1)
def test_order_eighteen_pair():
    graphs = []
    for spec in ("D9", "GD(C3xC3)"):
        G = make_group(spec)
        assert G.order == 18
        R = nonnilpotent_graph(G)
        parts = is_complete_multipartite(R)
        assert sorted(len(p) for p in parts) == [1] * 9 + [8]
        graphs.append(R)
    assert nx.is_isomorphic(_nx(graphs[0]), _nx(graphs[1]))


@criterion(3, "isolated vertices are the hypercenter and the graph is a quotient blow-up", 60)
def test_hypercenter_blowup():
    groups = builtin_groups(200, nonnilpotent_only=True)
    assert len(groups) > 50
    for G in groups:
        assert set(isolated_vertices(build_nilgraph(G))) == set(hypercenter(G).members), G.label
        assert verify_quotient_blowup(G).ok, G.label


@criterion(4, "distinct-prime cycle types have exactly prod(p_i) nilpotent partners, n <= 7", 600)
def test_distinct_prime_counts():
    for n in range(1, 8):
        G = make_group(f"S{n}")
        pool = list(all_permutations(n))
        for t in counting.prime_partitions(n):
            s = CycleType(t.parts).representative()
            want = math.prod(t.parts)
            assert int(nilpotent_partners(G, G.index[s]).sum()) == want
            # second, table-free path over every tau in S_n
            assert sum(pair_nilpotent_perm(s, tau) for tau in pool) == want


@criterion(5, "two-twos classes: (16, 4) at n = 4 and (48, 12) at n = 7", 600)
def test_two_twos_counts():
    for n, odd, want in ((4, (), (16, 4)), (7, (3,), (48, 12))):
        s = CycleType((2, 2) + odd).representative()
        S, A = make_group(f"S{n}"), make_group(f"A{n}")
        got = (int(nilpotent_partners(S, S.index[s]).sum()), int(nilpotent_partners(A, A.index[s]).sum()))
        assert got == want == counting.count_nilpotent_partners_two_twos(odd)
        evens = [p for p in all_permutations(n) if p.sign() == 1]
        assert sum(pair_nilpotent_perm(s, t) for t in evens) == want[1]


@criterion(6, "prime-sum decompositions for 28..5000 and the exceptional set {18, 19, 25, 31}", 10)
def test_prime_sums():
    for m in range(28, 5001):
        ps = counting.prime_sum_decompose(m)
        assert sum(ps) == m and len(set(ps)) == len(ps) and all(isprime(p) and p >= 5 for p in ps), m
    odd = list(primerange(5, 28))
    reachable = {sum(c) for r in range(len(odd) + 1) for c in itertools.combinations(odd, r)}
    assert [n for n in range(15, 32) if n - 4 not in reachable] == [18, 19, 25, 31]


@criterion(7, "trivial hypercenter certified for S3..S40 and A4..A40 with the quoted ledger lines", 5)
def test_ledgers():
    for n in range(3, 41):
        assert counting.certify_trivial_hypercenter(n, "S").conclusion == 1, n
    for n in range(4, 41):
        assert counting.certify_trivial_hypercenter(n, "A").conclusion == 1, n
    assert counting.certify_trivial_hypercenter(10).divides(20)
    assert counting.certify_trivial_hypercenter(9).divides(14)
    assert counting.certify_trivial_hypercenter(25).divides(17 * 8)


@criterion(8, "degree-bound arithmetic for 19 <= n <= 200", 1)
def test_bound_arithmetic():
    assert counting.h(19, 2) == 33 and 48 * 33 <= 5 * 19 * 18
    for n in range(19, 201):
        if n >= 21:
            assert 48 * counting.h(n, 2) <= 5 * n * (n - 1), n
        for p in primerange(3, n + 1):
            assert 12 * counting.h(n, p) <= n * (n - 1), (n, p)
        assert 2 * (math.floor(math.log2(n)) + 1) < n


@criterion(9, "1 and 2 share a cycle for n!/2 permutations; each (a, b) pair occurs (n-2)! times", 5)
def test_joint_cycles():
    for n in range(2, 9):
        st = randperm.joint_cycle_stats_exact(n)
        assert 2 * st.same_cycle_count == math.factorial(n)
        assert set(st.pair_counts) == {(a, b) for a in range(1, n) for b in range(1, n) if a + b <= n}
        assert set(st.pair_counts.values()) == {math.factorial(n - 2)}


@criterion(10, "induced set-partition law does not depend on n; 7/24 at k = 4", 10)
def test_partition_invariance():
    for k in range(1, 5):
        base = randperm.partition_distribution(k, k).probabilities()
        for n in range(k + 1, 9):
            assert randperm.partition_distribution(k, n).probabilities() == base, (k, n)
    p = randperm.partition_distribution(4, 8).probability([(0, 0, 1, 1), (0, 0, 0, 0)])
    assert p == Fraction(7, 24)


@criterion(11, "no cycle-ratio violations for prime-order sigma in S_n, n <= 6", 120)
def test_cycle_ratios():
    for n in range(2, 7):
        for p in primerange(2, n + 1):
            assert randperm.nilcycle_ratio_check(n, p) == [], (n, p)


@criterion(12, "prime-order degrees exact for n <= 7; Monte Carlo in S19 below 1/2", 300)
def test_degree_substitute():
    for n in range(2, 8):
        rep = randperm.prime_order_degree_report(n)
        assert rep.rows
        if n == 4:
            assert not rep.holds
    assert randperm.nilpotent_fraction_exact(parse_cycles("(1 2)(3 4)", 4)) == Fraction(2, 3)
    reps = [
        "(1 2)",
        "(1 2)(3 4)",
        "(1 2)(3 4)(5 6)(7 8)(9 10)(11 12)(13 14)(15 16)(17 18)",
        "(1 2 3)",
        "(1 2 3)(4 5 6)(7 8 9)(10 11 12)(13 14 15)(16 17 18)",
        "(1 2 3 4 5)",
        "(1 2 3 4 5 6 7)",
        "(1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 18 19)",
    ]
    for i, text in enumerate(reps):
        est = randperm.nonadjacency_fraction(parse_cycles(text, 19), 10_000, 1900 + i)
        assert est.interval(3)[1] < 0.5, text


@criterion(13, "every graph on <= 3 vertices embeds end to end; transcripts for <= 6 vertices", 120)
def test_embedding():
    materialized = 0
    for k in range(1, 7):
        for X in all_graphs(k):
            tower, ws = embedder.embed_graph(X)
            assert embedder.verify_embedding(X, tower, ws).ok, X.edges()
            if k <= 3 and tower.order <= 10**4:
                G = embedder.materialize(tower, 10**4)
                Y = induced_subgraph(build_nilgraph(G), embedder.witness_ids(G, tower, ws))
                assert Y.same_adjacency(X), X.edges()
                materialized += 1
    assert materialized >= 5


@criterion(14, "diameter at most 3 for built-in groups; Hamiltonian cycles in S3 and S4", 120)
def test_diameter_and_cycles():
    for G in builtin_groups(200, nonnilpotent_only=True):
        d = diameter(nonnilpotent_graph(G))
        assert d <= 3, (G.label, d)
    for spec in ("S3", "S4"):
        R = nonnilpotent_graph(make_group(spec))
        cyc = hamiltonian(R).cycle
        assert cyc is not None and sorted(cyc) == list(range(R.n))
        assert all(R.adjacent(cyc[i], cyc[(i + 1) % R.n]) for i in range(R.n))
