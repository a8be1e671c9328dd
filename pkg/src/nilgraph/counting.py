"""Exact counts of nilpotent partners, prime-sum decompositions, the ``h(n, p)``
pair count, and divisibility ledgers certifying a trivial hypercenter.

Everything here is exact integer arithmetic.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from sympy import isprime, primerange

__all__ = [
    "PrimePartition",
    "prime_partitions",
    "count_nilpotent_partners_distinct",
    "count_nilpotent_partners_two_twos",
    "prime_sum_decompose",
    "distinct_prime_sums",
    "h",
    "DegreeBoundRow",
    "check_degree_bounds",
    "LedgerFact",
    "DivisibilityLedger",
    "certify_trivial_hypercenter",
    "prime_or_successor_bound",
]


@dataclass(frozen=True)
class PrimePartition:
    """Distinct parts, each 1 or a prime, summing to ``n``."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(sorted(self.parts, reverse=True))
        if len(set(parts)) != len(parts):
            raise ValueError(f"parts must be distinct: {parts}")
        if any(p != 1 and not isprime(p) for p in parts):
            raise ValueError(f"parts must be 1 or prime: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def even(self) -> bool:
        """Whether permutations of this cycle type are even (no part equal to 2)."""
        return 2 not in self.parts

    def __str__(self) -> str:
        return "+".join(map(str, self.parts))


def prime_partitions(n: int) -> list[PrimePartition]:
    """All partitions of ``n`` into distinct parts from {1} and the primes."""
    candidates = [1] + list(primerange(2, n + 1))
    out = []

    def walk(i: int, remaining: int, chosen: list[int]):
        if remaining == 0:
            out.append(PrimePartition(tuple(chosen)))
            return
        for j in range(i, len(candidates)):
            c = candidates[j]
            if c > remaining:
                break
            walk(j + 1, remaining - c, chosen + [c])

    walk(0, n, [])
    return sorted(out, key=lambda t: t.parts)


def count_nilpotent_partners_distinct(t: PrimePartition) -> int:
    return math.prod(t.parts)


def count_nilpotent_partners_two_twos(odd_primes) -> tuple[int, int]:
    """Partners of a permutation with cycle lengths 2, 2, p_1, ..., p_k: (in S_n, in A_n)."""
    odd_primes = list(odd_primes)
    if len(set(odd_primes)) != len(odd_primes):
        raise ValueError("primes must be distinct")
    if any(p == 2 or not isprime(p) for p in odd_primes):
        raise ValueError("primes must be odd primes")
    prod = math.prod(odd_primes)
    return 16 * prod, 4 * prod


# ---------------------------------------------------------------------------
# sums of distinct primes


def distinct_prime_sums(limit: int, primes) -> dict[int, tuple[int, ...]]:
    """Subset-sum table: for each ``m <= limit`` reachable as a sum of distinct
    ``primes``, one such set (lexicographically first in scan order)."""
    best: dict[int, tuple[int, ...]] = {0: ()}
    for p in sorted(primes):
        for m in sorted(best, reverse=True):
            s = m + p
            if s <= limit and s not in best:
                best[s] = best[m] + (p,)
    return best


@lru_cache(maxsize=None)
def _base_table() -> dict[int, tuple[int, ...]]:
    table = distinct_prime_sums(89, primerange(5, 32))
    missing = [m for m in range(28, 90) if m not in table]
    if missing:  # pragma: no cover - checked by the test suite
        raise RuntimeError(f"base table incomplete: {missing}")
    return {m: tuple(sorted(table[m], reverse=True)) for m in range(28, 90)}


def _largest_prime_in(lo: Fraction, hi: int) -> int:
    p = hi - 1
    while p >= lo:
        if isprime(p):
            return p
        p -= 1
    raise RuntimeError(f"no prime in [{lo}, {hi})")  # pragma: no cover


def prime_sum_decompose(m: int) -> list[int]:
    """Distinct primes, all at least 5, summing to ``m >= 28``, in decreasing order.

    Values up to 89 come from a subset-sum table over the primes 5..31; larger
    values peel off the largest prime in ``[(m - 27)/2, m - 27)`` and recurse.
    """
    if m < 28:
        raise ValueError(f"{m} < 28 has no guaranteed decomposition")
    out = []
    while m >= 90:
        p = _largest_prime_in(Fraction(m - 27, 2), m - 27)
        out.append(p)
        m -= p
    return out + list(_base_table()[m])


# ---------------------------------------------------------------------------
# degree-bound arithmetic


def h(n: int, p: int) -> int:
    """``floor(n/2) + 2 * sum_k floor(n / (p^k + 1))``."""
    total = n // 2
    q = p
    while q + 1 <= n:
        total += 2 * (n // (q + 1))
        q *= p
    return total


@dataclass
class DegreeBoundRow:
    n: int
    odd_prime_ok: bool  # h(n, p) <= n(n-1)/12 for every odd prime p <= n
    worst_odd_prime: int | None
    crude_odd_bound_ok: bool  # 3n/2 <= n(n-1)/12
    h2: int
    two_ok: bool  # h(n, 2) <= 5n(n-1)/48
    crude_two_bound_ok: bool  # 31n/15 <= 5n(n-1)/48
    transposition_ok: bool  # (floor(log2 n) + 1)/n < 1/2

    @property
    def all_ok(self) -> bool:
        return self.odd_prime_ok and self.two_ok and self.transposition_ok


def check_degree_bounds(n_range) -> list[DegreeBoundRow]:
    """Evaluate the three prime-order case bounds for every ``n`` in ``n_range``.

    Failures are reported in the rows, never raised.
    """
    rows = []
    for n in n_range:
        limit = n * (n - 1)
        worst, odd_ok = None, True
        for p in primerange(3, n + 1):
            if 12 * h(n, p) > limit:
                odd_ok = False
                worst = p
                break
        if odd_ok and n >= 3:
            worst = max(primerange(3, n + 1), key=lambda p: h(n, p))
        h2 = h(n, 2)
        rows.append(
            DegreeBoundRow(
                n=n,
                odd_prime_ok=odd_ok,
                worst_odd_prime=worst,
                crude_odd_bound_ok=18 * n <= limit,
                h2=h2,
                two_ok=48 * h2 <= 5 * limit,
                crude_two_bound_ok=31 * 48 * n <= 75 * limit,
                transposition_ok=2 * n.bit_length() < n,
            )
        )
    return rows


# ---------------------------------------------------------------------------
# divisibility ledgers


@dataclass
class LedgerFact:
    source: str
    statement: str
    value: int  # z divides this


@dataclass
class DivisibilityLedger:
    n: int
    kind: str
    order: int
    classes: list[tuple[str, int]] = field(default_factory=list)  # (class, partner count)
    facts: list[LedgerFact] = field(default_factory=list)
    gcd: int = 0
    conclusion: int = 0

    @property
    def certified(self) -> bool:
        return self.conclusion == 1

    def divides(self, value: int) -> bool:
        """Whether some ledger line states ``z | value``."""
        return any(f.value == value for f in self.facts)

    def to_text(self) -> str:
        group = f"{self.kind}{self.n}"
        lines = [f"ledger for {group}, |G| = {self.order}, z = |Z*(H)| for any H with the same graph"]
        for f in self.facts:
            lines.append(f"  [{f.source}] {f.statement}")
        lines.append(f"  gcd of all facts = {self.gcd}")
        lines.append(f"  after removing prime factors <= {self.n} (z is coprime to |G|): {self.conclusion}")
        lines.append("  z = 1" if self.certified else f"  NOT certified: z divides {self.conclusion}")
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "kind": self.kind,
                "order": str(self.order),
                "facts": [
                    {"source": f.source, "statement": f.statement, "value": str(f.value)}
                    for f in self.facts
                ],
                "gcd": str(self.gcd),
                "conclusion": str(self.conclusion),
                "certified": self.certified,
            }
        )


def _two_twos_classes(n: int) -> list[tuple[int, ...]]:
    """Sets of distinct odd primes summing to ``n - 4``."""
    m = n - 4
    if m < 0:
        return []
    odd = list(primerange(3, m + 1))
    out = []

    def walk(i, remaining, chosen):
        if remaining == 0:
            out.append(tuple(chosen))
            return
        for j in range(i, len(odd)):
            if odd[j] > remaining:
                break
            walk(j + 1, remaining - odd[j], chosen + [odd[j]])

    walk(0, m, [])
    return out


def certify_trivial_hypercenter(n: int, kind: str = "S") -> DivisibilityLedger:
    """Collect divisibility constraints on ``|Z*(H)|`` for any ``H`` whose
    non-nilpotent graph matches that of ``S_n`` (kind ``"S"``) or ``A_n`` (``"A"``).

    Each counted permutation class with ``c`` nilpotent partners has degree
    ``|G| - c``; the vertex count is ``|G| - 1``.  ``z`` divides all of these
    and hence all their differences.
    """
    if kind not in ("S", "A"):
        raise ValueError("kind must be 'S' or 'A'")
    if n < (3 if kind == "S" else 4):
        raise ValueError(f"{kind}{n} is outside the certified range")
    order = math.factorial(n) if kind == "S" else math.factorial(n) // 2
    led = DivisibilityLedger(n=n, kind=kind, order=order)

    for t in prime_partitions(n):
        if kind == "A" and not t.even:
            continue
        led.classes.append((str(t), count_nilpotent_partners_distinct(t)))
    for ps in _two_twos_classes(n):
        s_count, a_count = count_nilpotent_partners_two_twos(ps)
        name = "+".join(map(str, (2, 2) + ps))
        led.classes.append((name, s_count if kind == "S" else a_count))

    led.facts.append(LedgerFact("vertex count", f"z | |G| - 1 = {order - 1}", order - 1))
    for name, c in led.classes:
        led.facts.append(LedgerFact(name, f"z | |G| - {c} (degree of cycle type {name})", order - c))
    for name, c in led.classes:
        if c != 1:
            led.facts.append(
                LedgerFact(f"{name} vs vertex count", f"z | {c} - 1 = {c - 1}", abs(c - 1))
            )
    for (n1, c1), (n2, c2) in combinations(led.classes, 2):
        if c1 != c2:
            hi, lo = max(c1, c2), min(c1, c2)
            led.facts.append(
                LedgerFact(f"{n1} vs {n2}", f"z | {hi} - {lo} = {hi - lo}", hi - lo)
            )

    g = 0
    for f in led.facts:
        g = math.gcd(g, f.value)
    led.gcd = g
    for p in primerange(2, n + 1):
        while g % p == 0:
            g //= p
    led.conclusion = g
    return led


def prime_or_successor_bound(n: int) -> int | None:
    """For ``n = p`` or ``n = p + 1`` with ``p`` an odd prime, the value ``p - 1`` that ``z`` divides."""
    for p in (n, n - 1):
        if p > 2 and isprime(p):
            return p - 1
    return None
