"""Permutations of {1..n} and their cycle structure.

Points are 1-based in every public signature and in cycle notation; the
image tuple stored on a :class:`Permutation` is 0-based.
"""
from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from sympy import factorint, isprime

__all__ = [
    "Permutation",
    "CycleType",
    "identity",
    "compose",
    "inverse",
    "cycle_type",
    "cycle_len",
    "order",
    "prime_part",
    "centralizer_order",
    "support",
    "parse_cycles",
    "format_cycles",
]


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n}; ``images[i]`` is the 0-based image of point ``i+1``."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {self.images!r}")
        object.__setattr__(self, "images", images)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise IndexError(f"point {i} outside 1..{self.n}")
        return self.images[i - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __pow__(self, k: int) -> "Permutation":
        out = list(range(self.n))
        for cyc in self.cycles(include_fixed=False):
            m = len(cyc)
            s = k % m
            for pos, pt in enumerate(cyc):
                out[pt] = cyc[(pos + s) % m]
        return Permutation(tuple(out))

    def inverse(self) -> "Permutation":
        return inverse(self)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self, include_fixed: bool = True) -> list[tuple[int, ...]]:
        """Disjoint cycles as tuples of 0-based points, each starting at its minimum."""
        return [c for c in self._cycles if include_fixed or len(c) > 1]

    @cached_property
    def _cycles(self) -> tuple[tuple[int, ...], ...]:
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc = []
            j = start
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return tuple(out)

    def sign(self) -> int:
        parity = sum(len(c) - 1 for c in self._cycles) % 2
        return -1 if parity else 1

    def __str__(self) -> str:
        return format_cycles(self)

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)!r}, n={self.n})"


@dataclass(frozen=True)
class CycleType:
    """Multiset of cycle lengths, stored as a non-increasing partition of ``n``."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(sorted((int(p) for p in self.parts), reverse=True))
        if any(p < 1 for p in parts):
            raise ValueError("cycle lengths must be positive")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def from_counts(cls, counts: dict[int, int]) -> "CycleType":
        parts = []
        for k, a in counts.items():
            if a < 0:
                raise ValueError("negative multiplicity")
            parts.extend([k] * a)
        return cls(tuple(parts))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def counts(self) -> dict[int, int]:
        return dict(sorted(Counter(self.parts).items()))

    def representative(self) -> Permutation:
        """The permutation whose cycles fill consecutive points in order of ``parts``."""
        images = []
        start = 0
        for k in self.parts:
            images.extend(start + (i + 1) % k for i in range(k))
            start += k
        return Permutation(tuple(images))


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(n)))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p ∘ q``: apply ``q`` first, then ``p``."""
    if p.n != q.n:
        raise ValueError(f"degree mismatch: {p.n} != {q.n}")
    pi = p.images
    return Permutation(tuple(pi[j] for j in q.images))


def inverse(p: Permutation) -> Permutation:
    out = [0] * p.n
    for i, j in enumerate(p.images):
        out[j] = i
    return Permutation(tuple(out))


def cycle_type(p: Permutation) -> CycleType:
    return CycleType(tuple(len(c) for c in p.cycles()))


def cycle_len(p: Permutation, i: int) -> int:
    """Length of the cycle of ``p`` through the 1-based point ``i``."""
    if not 1 <= i <= p.n:
        raise IndexError(f"point {i} outside 1..{p.n}")
    j, k = p.images[i - 1], 1
    while j != i - 1:
        j = p.images[j]
        k += 1
    return k


def order(p: Permutation) -> int:
    return math.lcm(*(len(c) for c in p.cycles()), 1)


def prime_part(p: Permutation, q: int) -> Permutation:
    """The ``q``-component of ``p``: the power of ``p`` of ``q``-power order such
    that the components for all primes commute and multiply back to ``p``."""
    if not isprime(q):
        raise ValueError(f"{q} is not prime")
    m = order(p)
    qe = q ** factorint(m).get(q, 0)
    r = m // qe
    return p ** (r * pow(r, -1, qe) % m) if qe > 1 else identity(p.n)


def centralizer_order(t: CycleType) -> int:
    return math.prod(k**a * math.factorial(a) for k, a in t.counts.items())


def support(p: Permutation) -> set[int]:
    return {i + 1 for i, j in enumerate(p.images) if i != j}


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int | None = None) -> Permutation:
    """Parse cycle notation such as ``"(1 2)(3 4)"``; ``"()"`` is the identity.

    Without ``n`` the degree is the largest point mentioned.
    """
    text = text.strip()
    if not text or _CYCLE_RE.sub("", text).strip():
        raise ValueError(f"malformed cycle notation: {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(text):
        body = body.replace(",", " ").split()
        try:
            cycles.append([int(tok) for tok in body])
        except ValueError:
            raise ValueError(f"malformed cycle notation: {text!r}") from None
    top = max((max(c) for c in cycles if c), default=0)
    if n is None:
        n = top
    if top > n or any(pt < 1 for c in cycles for pt in c):
        raise ValueError(f"point outside 1..{n} in {text!r}")
    images = list(range(n))
    touched: set[int] = set()
    for c in cycles:
        if touched.intersection(c) or len(set(c)) != len(c):
            raise ValueError(f"cycles are not disjoint in {text!r}")
        touched.update(c)
        for a, b in zip(c, c[1:] + c[:1]):
            images[a - 1] = b - 1
    return Permutation(tuple(images))


def format_cycles(p: Permutation) -> str:
    cycles = p.cycles(include_fixed=False)
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cycles)


def all_permutations(n: int) -> Iterator[Permutation]:
    from itertools import permutations

    for images in permutations(range(n)):
        yield Permutation(images)


def from_images(images: Iterable[int]) -> Permutation:
    """Build from 1-based images, e.g. ``from_images([2, 1, 3])`` is (1 2)."""
    return Permutation(tuple(i - 1 for i in images))
