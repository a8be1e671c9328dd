"""Cycle statistics of uniformly random permutations, exact and sampled."""
from __future__ import annotations

import itertools
import json
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from sympy import primerange

from .group import make_group, nilpotent_partners, pair_nilpotent_perm
from .perm import CycleType, Permutation, cycle_len, order

__all__ = [
    "sample_permutation",
    "JointCycleStats",
    "joint_cycle_stats_exact",
    "PartitionDistribution",
    "restricted_growth",
    "partition_distribution",
    "deletion_map",
    "nilcycle_ratio_check",
    "MonteCarloEstimate",
    "nonadjacency_fraction",
    "nilpotent_fraction_exact",
    "prime_order_cycle_types",
    "PrimeOrderDegree",
    "DegreeReport",
    "prime_order_degree_report",
]

EXACT_LIMIT = 10


def _rng(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def sample_permutation(n: int, rng) -> Permutation:
    """Uniform permutation of {1..n} (Fisher-Yates via ``Generator.permutation``)."""
    if n < 1:
        raise ValueError("n must be positive")
    return Permutation(tuple(int(i) for i in _rng(rng).permutation(n)))


def _cycle_ids(images: tuple[int, ...]) -> tuple[list[int], list[int]]:
    """Per point: id of its cycle and that cycle's length."""
    n = len(images)
    cid = [-1] * n
    clen = [0] * n
    c = 0
    for s in range(n):
        if cid[s] >= 0:
            continue
        cyc = [s]
        j = images[s]
        while j != s:
            cyc.append(j)
            j = images[j]
        for pt in cyc:
            cid[pt] = c
            clen[pt] = len(cyc)
        c += 1
    return cid, clen


@dataclass
class JointCycleStats:
    n: int
    same_cycle_count: int
    pair_counts: dict[tuple[int, int], int]
    total: int

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "same_cycle": self.same_cycle_count,
                "pairs": [[a, b, c] for (a, b), c in sorted(self.pair_counts.items())],
            }
        )


def joint_cycle_stats_exact(n: int) -> JointCycleStats:
    """Over all of ``S_n``: how often 1 and 2 share a cycle, and otherwise the
    joint distribution of the lengths of their cycles."""
    if n < 2:
        raise ValueError("need n >= 2")
    if n > EXACT_LIMIT:
        raise ValueError(f"exact enumeration limited to n <= {EXACT_LIMIT}")
    same = 0
    pairs: Counter = Counter()
    total = 0
    for images in itertools.permutations(range(n)):
        total += 1
        cid, clen = _cycle_ids(images)
        if cid[0] == cid[1]:
            same += 1
        else:
            pairs[(clen[0], clen[1])] += 1
    return JointCycleStats(n, same, dict(pairs), total)


def restricted_growth(labels) -> tuple[int, ...]:
    """Canonical form of a set partition given by per-point block labels."""
    seen: dict = {}
    return tuple(seen.setdefault(x, len(seen)) for x in labels)


@dataclass
class PartitionDistribution:
    k: int
    n: int
    counts: dict[tuple[int, ...], int]
    total: int

    def probabilities(self) -> dict[tuple[int, ...], Fraction]:
        return {key: Fraction(c, self.total) for key, c in sorted(self.counts.items())}

    def probability(self, keys) -> Fraction:
        return sum((Fraction(self.counts.get(k, 0), self.total) for k in keys), Fraction(0))


def partition_distribution(k: int, n: int, mode: str = "exact", samples: int = 10_000, rng=None) -> PartitionDistribution:
    """Distribution of the set partition of {1..k} into cycles of a uniform ``τ ∈ S_n``."""
    if k > n:
        raise ValueError("k must not exceed n")
    counts: Counter = Counter()
    if mode == "exact":
        if n > EXACT_LIMIT:
            raise ValueError(f"exact enumeration limited to n <= {EXACT_LIMIT}")
        total = 0
        for images in itertools.permutations(range(n)):
            cid, _ = _cycle_ids(images)
            counts[restricted_growth(cid[:k])] += 1
            total += 1
    elif mode == "monte_carlo":
        gen = _rng(rng)
        total = samples
        for _ in range(samples):
            cid, _ = _cycle_ids(tuple(gen.permutation(n)))
            counts[restricted_growth(cid[:k])] += 1
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return PartitionDistribution(k, n, dict(counts), total)


def deletion_map(s: Permutation) -> Permutation:
    """Delete the largest point from the cycles of ``s`` and close the gap."""
    n = s.n
    if n < 2:
        raise ValueError("need n >= 2")
    last = n - 1
    out = []
    for j in range(last):
        img = s.images[j]
        out.append(s.images[last] if img == last else img)
    return Permutation(tuple(out))


def _is_rational_power(a: int, b: int, p: int) -> bool:
    g = math.gcd(a, b)
    a, b = a // g, b // g
    for x in (a, b):
        while x % p == 0:
            x //= p
        if x != 1:
            return False
    return a == 1 or b == 1


def nilcycle_ratio_check(n: int, p: int) -> list[tuple[Permutation, Permutation, int, int]]:
    """All ``(σ, τ, i, j)`` with ``σ`` of order ``p``, ``<σ, τ>`` nilpotent, ``i ≠ j``
    in one cycle of ``σ`` and ``c(τ,i)/c(τ,j)`` not a power of ``p``.

    The expected result is empty.
    """
    if n > 7:
        raise ValueError("exhaustive check limited to n <= 7")
    G = make_group(f"S{n}")
    violations = []
    orders = G.element_orders
    for x in np.nonzero(orders == p)[0]:
        s = G.elements[x]
        partners = np.nonzero(nilpotent_partners(G, int(x)))[0]
        cycles = [c for c in s.cycles() if len(c) > 1]
        for y in partners:
            t = G.elements[y]
            _, clen = _cycle_ids(t.images)
            for cyc in cycles:
                for i, j in itertools.permutations(cyc, 2):
                    if not _is_rational_power(clen[i], clen[j], p):
                        violations.append((s, t, i + 1, j + 1))
    return violations


@dataclass
class MonteCarloEstimate:
    successes: int
    samples: int

    @property
    def estimate(self) -> float:
        return self.successes / self.samples

    @property
    def stderr(self) -> float:
        q = self.estimate
        return math.sqrt(q * (1 - q) / self.samples)

    def interval(self, sigmas: float = 3.0) -> tuple[float, float]:
        """Wilson score interval; unlike the plain normal interval it stays
        informative when no (or every) sample succeeds."""
        n, q, z2 = self.samples, self.estimate, sigmas * sigmas
        centre = (q + z2 / (2 * n)) / (1 + z2 / n)
        half = sigmas * math.sqrt(q * (1 - q) / n + z2 / (4 * n * n)) / (1 + z2 / n)
        return centre - half, centre + half


def _check_prime_order(s: Permutation) -> int:
    o = order(s)
    if o < 2 or any(o % q == 0 for q in primerange(2, o)):
        raise ValueError(f"{s} does not have prime order")
    return o


BLOCK = 1000


def nonadjacency_fraction(s: Permutation, samples: int, rng, workers: int = 1) -> MonteCarloEstimate:
    """Estimate of ``P(<s, τ> nilpotent)`` for uniform ``τ``.

    Samples are drawn in fixed blocks of ``BLOCK``, each from its own child of
    ``rng``'s seed sequence, so the result does not depend on ``workers``.
    """
    _check_prime_order(s)
    seed = rng if isinstance(rng, np.random.SeedSequence) else np.random.SeedSequence(rng)
    sizes = [BLOCK] * (samples // BLOCK) + ([samples % BLOCK] if samples % BLOCK else [])
    jobs = [(s, size, child) for size, child in zip(sizes, seed.spawn(len(sizes)))]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers) as ex:
            hits = list(ex.map(_count_block, jobs))
    else:
        hits = [_count_block(j) for j in jobs]
    return MonteCarloEstimate(sum(hits), samples)


def _count_block(job) -> int:
    s, size, seq = job
    gen = np.random.default_rng(seq)
    return sum(pair_nilpotent_perm(s, sample_permutation(s.n, gen)) for _ in range(size))


def nilpotent_fraction_exact(s: Permutation) -> Fraction:
    """Exact ``P(<s, τ> nilpotent)`` over all ``τ ∈ S_n``."""
    G = make_group(f"S{s.n}")
    return Fraction(int(nilpotent_partners(G, G.index[s]).sum()), G.order)


def prime_order_cycle_types(n: int) -> list[CycleType]:
    """Cycle types of the permutations of prime order in ``S_n``."""
    out = []
    for p in primerange(2, n + 1):
        for m in range(1, n // p + 1):
            out.append(CycleType((p,) * m + (1,) * (n - p * m)))
    return out


@dataclass
class PrimeOrderDegree:
    cycle_type: CycleType
    representative: Permutation
    nilpotent_count: int
    degree: int  # in the graph on all of S_n
    total: int

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.nilpotent_count, self.total)

    @property
    def at_least_half(self) -> bool:
        return 2 * self.degree >= self.total


@dataclass
class DegreeReport:
    n: int
    rows: list[PrimeOrderDegree] = field(default_factory=list)

    @property
    def min_degree(self) -> int:
        return min(r.degree for r in self.rows)

    @property
    def holds(self) -> bool:
        return all(r.at_least_half for r in self.rows)


def prime_order_degree_report(n: int) -> DegreeReport:
    """Exact degree of every prime-order cycle type in the graph of ``S_n``."""
    G = make_group(f"S{n}")
    rep = DegreeReport(n)
    for t in prime_order_cycle_types(n):
        s = t.representative()
        c = int(nilpotent_partners(G, G.index[s]).sum())
        rep.rows.append(PrimeOrderDegree(t, s, c, G.order - c, G.order))
    return rep


def cycle_length_frequencies(n: int, samples: int, rng) -> Counter:
    """Sampled distribution of ``c(τ, 1)``."""
    gen = _rng(rng)
    return Counter(cycle_len(sample_permutation(n, gen), 1) for _ in range(samples))
