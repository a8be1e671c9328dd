"""Named verification suites.

Each suite recomputes one family of facts from scratch and returns a
:class:`SuiteResult` holding a pass flag, a human-readable trace, and a
JSON-ready payload.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from sympy import primerange

from . import counting, embedder, randperm
from .graph import (
    Graph,
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
from .group import (
    BudgetError,
    builtin_groups,
    hypercenter,
    make_group,
    nilpotent_partners,
)
from .perm import CycleType, Permutation, parse_cycles

__all__ = ["SuiteResult", "SUITES", "run_suite", "all_graphs"]


@dataclass
class SuiteResult:
    name: str
    ok: bool = True
    lines: list[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def check(self, cond: bool, line: str) -> bool:
        self.lines.append(("ok    " if cond else "FAIL  ") + line)
        self.ok = self.ok and bool(cond)
        return bool(cond)

    def to_text(self) -> str:
        return "\n".join([f"suite {self.name}"] + self.lines + ["PASS" if self.ok else "FAIL"])

    def to_dict(self) -> dict:
        return {"suite": self.name, "ok": self.ok, "lines": self.lines, "data": self.data}


def degree_example(**_) -> SuiteResult:
    r = SuiteResult("degree-example")
    G = make_group("S4")
    R = nonnilpotent_graph(G)
    v = R.ids.index(G.index[parse_cycles("(1 2)(3 4)", 4)])
    d = degree(R, v)
    r.data = {"vertices": R.n, "degree": d}
    r.check(R.n == 23, f"graph of S4 has {R.n} vertices")
    r.check(d == 8, f"deg (1 2)(3 4) = {d}")
    return r


def multipartite(**_) -> SuiteResult:
    r = SuiteResult("multipartite")
    shapes = {}
    for spec in ("D9", "GD(C3xC3)"):
        G = make_group(spec)
        parts = is_complete_multipartite(nonnilpotent_graph(G))
        sizes = sorted((len(p) for p in parts), reverse=True) if parts else None
        shapes[spec] = sizes
        r.check(G.order == 18, f"|{spec}| = {G.order}")
        r.check(sizes == [8] + [1] * 9, f"{spec}: part sizes {sizes}")
    r.check(shapes["D9"] == shapes["GD(C3xC3)"], "same complete multipartite shape, hence isomorphic")
    r.data = shapes
    return r


def hypercenter_blowup(max_order: int = 200, **_) -> SuiteResult:
    r = SuiteResult("hypercenter")
    rows = []
    for G in builtin_groups(max_order, nonnilpotent_only=True):
        full = build_nilgraph(G)
        iso = set(isolated_vertices(full))
        Z = set(hypercenter(G).members)
        bc = verify_quotient_blowup(G)
        rows.append({"group": G.label, "order": G.order, "hypercenter": len(Z), "blowup": bc.ok})
        r.check(iso == Z, f"{G.label}: isolated vertices = hypercenter ({len(Z)})")
        r.check(bc.ok, f"{G.label}: graph is the {bc.c}-fold blow-up of the quotient graph")
    r.data = {"groups": rows}
    return r


def partner_counts(n: int = 7, **_) -> SuiteResult:
    r = SuiteResult("partner-counts")
    rows = []
    for m in range(1, n + 1):
        G = make_group(f"S{m}")
        for t in counting.prime_partitions(m):
            s = CycleType(t.parts).representative()
            got = int(nilpotent_partners(G, G.index[s]).sum())
            want = counting.count_nilpotent_partners_distinct(t)
            rows.append({"n": m, "type": str(t), "count": got, "formula": want})
            r.check(got == want, f"S{m} type {t}: {got} partners, product {want}")
    for m in (4, 7):
        if m > n:
            continue
        odd = tuple(counting._two_twos_classes(m)[0])
        s = CycleType((2, 2) + odd + (1,) * (m - 4 - sum(odd))).representative()
        S, A = make_group(f"S{m}"), make_group(f"A{m}")
        got = (int(nilpotent_partners(S, S.index[s]).sum()), int(nilpotent_partners(A, A.index[s]).sum()))
        want = counting.count_nilpotent_partners_two_twos(odd)
        rows.append({"n": m, "type": "2+2" + "".join(f"+{p}" for p in odd), "count": list(got), "formula": list(want)})
        r.check(got == want, f"two-twos class in S{m}/A{m}: {got}, formula {want}")
    r.data = {"rows": rows}
    return r


def prime_sums(limit: int = 5000, **_) -> SuiteResult:
    r = SuiteResult("prime-sums")
    bad = []
    for m in range(28, limit + 1):
        ps = counting.prime_sum_decompose(m)
        if sum(ps) != m or len(set(ps)) != len(ps) or min(ps) < 5:
            bad.append(m)
    r.check(not bad, f"valid decompositions for 28..{limit}" + (f"; failures {bad[:10]}" if bad else ""))
    table = counting.distinct_prime_sums(27, primerange(5, 28))
    missing = [n for n in range(15, 32) if (n - 4) not in table]
    r.check(missing == [18, 19, 25, 31], f"n in 15..31 with n-4 not a sum of distinct primes > 3: {missing}")
    r.data = {"failures": bad, "exceptional": missing}
    return r


def ledgers(n_max: int = 40, **_) -> SuiteResult:
    r = SuiteResult("ledgers")
    failed = []
    for kind, lo in (("S", 3), ("A", 4)):
        for n in range(lo, n_max + 1):
            led = counting.certify_trivial_hypercenter(n, kind)
            if not led.certified:
                failed.append(f"{kind}{n}")
    r.check(not failed, f"trivial hypercenter certified for S3..S{n_max} and A4..A{n_max}" + (f"; failures {failed}" if failed else ""))
    f = math.factorial
    for n, value in ((10, 20), (9, 14), (25, 17 * 8)):
        led = counting.certify_trivial_hypercenter(n, "S")
        r.check(led.divides(value), f"S{n} ledger contains z | {value}")
    r.check(counting.certify_trivial_hypercenter(10).divides(f(10) - 21), "S10 ledger contains z | 10! - 21")
    r.data = {"failures": failed}
    return r


def degree_bounds(n_max: int = 200, **_) -> SuiteResult:
    r = SuiteResult("degree-bounds")
    r.check(counting.h(19, 2) == 33 and 48 * 33 <= 5 * 19 * 18, f"h(19, 2) = {counting.h(19, 2)} <= 5*19*18/48")
    rows = counting.check_degree_bounds(range(19, n_max + 1))
    r.check(all(x.two_ok for x in rows if x.n >= 21), f"h(n, 2) <= 5n(n-1)/48 for 21 <= n <= {n_max}")
    r.check(all(x.odd_prime_ok for x in rows), f"h(n, p) <= n(n-1)/12 for odd p <= n, 19 <= n <= {n_max}")
    r.check(all(x.transposition_ok for x in rows), f"(floor(log2 n) + 1)/n < 1/2 for 19 <= n <= {n_max}")
    r.data = {"h19_2": counting.h(19, 2)}
    return r


def joint_cycles(n: int = 8, **_) -> SuiteResult:
    r = SuiteResult("joint-cycles")
    for m in range(2, n + 1):
        st = randperm.joint_cycle_stats_exact(m)
        expected = {(a, b) for a in range(1, m) for b in range(1, m) if a + b <= m}
        r.check(2 * st.same_cycle_count == st.total, f"n={m}: 1 and 2 share a cycle in {st.same_cycle_count} of {st.total}")
        r.check(
            set(st.pair_counts) == expected and all(c == math.factorial(m - 2) for c in st.pair_counts.values()),
            f"n={m}: every (a, b) with a + b <= n occurs {math.factorial(m - 2)} times",
        )
        r.data[str(m)] = {"same_cycle": st.same_cycle_count, "pairs": len(st.pair_counts)}
    return r


def partition_invariance(n: int = 8, **_) -> SuiteResult:
    r = SuiteResult("partition-invariance")
    for k in range(1, 5):
        base = randperm.partition_distribution(k, k).probabilities()
        same = all(randperm.partition_distribution(k, m).probabilities() == base for m in range(k + 1, n + 1))
        r.check(same, f"k={k}: distribution identical for {k} <= n <= {n}")
    d = randperm.partition_distribution(4, 4)
    p = d.probability([(0, 0, 1, 1), (0, 0, 0, 0)])
    r.check(p == Fraction(7, 24), f"P(1~2 and 3~4) at k=4 is {p}")
    maps_ok = True
    for m in range(2, min(n, 7) + 1):
        fib = np.bincount(
            [_lex_rank(randperm.deletion_map(Permutation(s))) for s in itertools.permutations(range(m))]
        )
        maps_ok &= len(fib) == math.factorial(m - 1) and bool((fib == m).all())
    r.check(maps_ok, f"deleting the last point is exactly n-to-1 for n <= {min(n, 7)}")
    return r


def _lex_rank(s: Permutation) -> int:
    """Lexicographic rank of a permutation."""
    n = s.n
    rank = 0
    rest = list(range(n))
    for i, x in enumerate(s.images):
        k = rest.index(x)
        rank += k * math.factorial(n - 1 - i)
        rest.pop(k)
    return rank


def cycle_ratios(n: int = 6, p: int | None = None, **_) -> SuiteResult:
    r = SuiteResult("cycle-ratios")
    for m in range(2, n + 1):
        for q in ([p] if p else primerange(2, m + 1)):
            if q > m:
                continue
            v = randperm.nilcycle_ratio_check(m, q)
            r.check(not v, f"S{m}, order {q}: {len(v)} violations")
    return r


def prime_order_degrees(n: int = 7, **_) -> SuiteResult:
    r = SuiteResult("prime-order-degrees")
    for m in range(2, n + 1):
        rep = randperm.prime_order_degree_report(m)
        worst = min(rep.rows, key=lambda x: x.degree)
        r.lines.append(
            f"info  S{m}: minimum degree {worst.degree} of {worst.total} at type {worst.cycle_type.parts}, "
            f"nilpotent fraction {worst.fraction}"
        )
        r.data[str(m)] = {"min_degree": worst.degree, "holds": rep.holds}
    S4 = make_group("S4")
    s = parse_cycles("(1 2)(3 4)", 4)
    frac = Fraction(int(nilpotent_partners(S4, S4.index[s]).sum()), 24)
    r.check(frac == Fraction(2, 3), f"S4: (1 2)(3 4) has nilpotent fraction {frac} > 1/2")
    return r


def all_graphs(k: int):
    """Every labelled simple graph on ``k`` vertices."""
    pairs = list(itertools.combinations(range(k), 2))
    for mask in range(1 << len(pairs)):
        edges = [e for b, e in enumerate(pairs) if mask >> b & 1]
        yield Graph.from_edges([str(i + 1) for i in range(k)], edges, name=f"k{k}m{mask}")


def embedding(k_full: int = 3, k_transcript: int = 6, budget: int = 10**4, **_) -> SuiteResult:
    r = SuiteResult("embedding")
    count = {"transcripts": 0, "materialized": 0}
    for k in range(1, k_transcript + 1):
        bad = 0
        for X in all_graphs(k):
            tower, ws = embedder.embed_graph(X)
            tr = embedder.verify_embedding(X, tower, ws)
            count["transcripts"] += 1
            bad += not tr.ok
            if k <= k_full and tower.order <= budget:
                G = embedder.materialize(tower, budget)
                Y = induced_subgraph(build_nilgraph(G), embedder.witness_ids(G, tower, ws))
                count["materialized"] += 1
                r.check(Y.same_adjacency(X), f"k={k} edges {X.edges()}: |G| = {G.order}, induced subgraph matches")
        r.check(bad == 0, f"k={k}: {2 ** (k * (k - 1) // 2) - bad} of {2 ** (k * (k - 1) // 2)} transcripts verified")
    r.data = count
    return r


def diameters(max_order: int = 200, **_) -> SuiteResult:
    r = SuiteResult("diameter")
    worst = 0
    for G in builtin_groups(max_order, nonnilpotent_only=True):
        d = diameter(nonnilpotent_graph(G))
        worst = max(worst, d)
        r.check(d <= 3, f"{G.label}: diameter {d}")
    for spec in ("S3", "S4"):
        hc = hamiltonian(nonnilpotent_graph(make_group(spec)))
        r.check(hc.cycle is not None, f"{spec}: Hamiltonian cycle {hc.status}")
    r.data = {"max_diameter": worst}
    return r


SUITES = {
    "degree-example": degree_example,
    "multipartite": multipartite,
    "hypercenter": hypercenter_blowup,
    "partner-counts": partner_counts,
    "prime-sums": prime_sums,
    "ledgers": ledgers,
    "degree-bounds": degree_bounds,
    "joint-cycles": joint_cycles,
    "partition-invariance": partition_invariance,
    "cycle-ratios": cycle_ratios,
    "prime-order-degrees": prime_order_degrees,
    "embedding": embedding,
    "diameter": diameters,
}


def run_suite(name: str, **params) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    params = {k: v for k, v in params.items() if v is not None}
    try:
        return SUITES[name](**params)
    except BudgetError as e:
        res = SuiteResult(name)
        res.check(False, str(e))
        return res
