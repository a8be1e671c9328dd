"""Realize any simple graph as an induced subgraph of a non-nilpotent graph.

The group is a tower ``G_t = Z_{p_t}^{d_t} ⋊ G_{t-1}`` over ``G_1 = Z_2``.  At
each step the new witness ``x_t`` must commute with the earlier witnesses of
non-adjacent vertices and fail to commute with those of adjacent ones.

Structure used throughout: on ``G_t`` the coordinate-sum maps ``ψ_r`` (sum of
the level-``r`` vector mod ``p_r``) are homomorphisms, and together they are the
abelianization ``G_t → ∏ Z_{p_r}``.  The kernel ``H`` for step ``t`` is the
joint kernel of ``ψ_r`` over the adjacent earlier levels ``r``, so
``G_{t-1}/H ≅ Z_d`` with ``d = ∏ p_r``.  Its cosets are indexed by the CRT
residue ``c ∈ Z_d``; an element acts on the ``d`` coordinates of level ``t``
by rotation through ``Σ ψ_r(g) · step_r``.

Level vectors are never stored densely.  A :class:`LayeredElement` keeps, per
level, a sparse combination ``Σ coeff · rot_shift(w_t)`` of rotated copies of
the level's witness vector ``w_t``; dense vectors appear only in
:func:`materialize`.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np
from sympy import nextprime

from .graph import Graph, build_nilgraph, induced_subgraph, nonnilpotent_graph
from .group import (
    BudgetError,
    FiniteGroup,
    commutator_subgroup,
    make_group,
)
from .perm import Permutation

__all__ = [
    "TowerLevel",
    "Tower",
    "LayeredElement",
    "embed_graph",
    "identity",
    "multiply",
    "inverse",
    "commutator",
    "power",
    "is_identity",
    "level_sums",
    "CommutatorEntry",
    "EmbeddingTranscript",
    "verify_embedding",
    "materialize",
    "symmetric_embedding",
    "commutator_stability",
]

DENSE_EXPORT_LIMIT = 4096
_CHUNK = 1 << 20


@dataclass(frozen=True)
class TowerLevel:
    t: int  # 1-based level index, equal to the vertex number
    p: int
    dim: int
    neighbors: tuple[int, ...]  # earlier levels acting non-trivially
    steps: tuple[int, ...]  # rotation per unit of ψ_r, aligned with neighbors
    witness_last: int  # last witness coordinate: dim, or dim + 1 if that sum vanishes

    def witness_values(self, idx: np.ndarray) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        return np.where(idx == self.dim - 1, self.witness_last, idx + 1)

    def witness(self) -> list[int]:
        return list(range(1, self.dim)) + [self.witness_last]

    @property
    def witness_sum(self) -> int:
        return ((self.dim - 1) * self.dim // 2 + self.witness_last) % self.p

    def action_permutation(self, r: int) -> list[int]:
        """Coordinate permutation (0-based images) induced by a unit of ``ψ_r``."""
        s = self.steps[self.neighbors.index(r)]
        return [(i + s) % self.dim for i in range(self.dim)]

    def shift(self, sums: Sequence[int]) -> int:
        """Rotation applied to this level by an element with level sums ``sums``."""
        return sum(sums[r - 1] * s for r, s in zip(self.neighbors, self.steps)) % self.dim

    def to_dict(self) -> dict:
        out = {
            "t": self.t,
            "p": self.p,
            "alpha": self.dim,
            "neighbors": list(self.neighbors),
            "steps": list(self.steps),
            "witness_last": self.witness_last,
        }
        if self.dim <= DENSE_EXPORT_LIMIT:
            out["action"] = [
                {"level": r, "permutation": self.action_permutation(r)} for r in self.neighbors
            ]
            out["witness"] = self.witness()
        return out


@dataclass
class Tower:
    levels: list[TowerLevel]

    @property
    def k(self) -> int:
        return len(self.levels)

    @property
    def primes(self) -> list[int]:
        return [lv.p for lv in self.levels]

    @property
    def order(self) -> int:
        return math.prod(lv.p**lv.dim for lv in self.levels)

    @cached_property
    def plan(self) -> list[tuple[int, int, int, tuple[tuple[int, int], ...]]]:
        """Per level: ``(p, dim, witness_sum, ((acting level index, step), ...))``."""
        return [
            (lv.p, lv.dim, lv.witness_sum, tuple((r - 1, st) for r, st in zip(lv.neighbors, lv.steps)))
            for lv in self.levels
        ]

    def prefix(self, s: int) -> "Tower":
        return Tower(self.levels[:s])

    def to_json(self) -> str:
        return json.dumps({"levels": [lv.to_dict() for lv in self.levels]})

    @classmethod
    def from_json(cls, text: str) -> "Tower":
        data = json.loads(text)
        return cls(
            [
                TowerLevel(
                    t=d["t"],
                    p=d["p"],
                    dim=d["alpha"],
                    neighbors=tuple(d["neighbors"]),
                    steps=tuple(d["steps"]),
                    witness_last=d["witness_last"],
                )
                for d in data["levels"]
            ]
        )


@dataclass(frozen=True)
class LayeredElement:
    """Per level, innermost first: sorted ``(shift, coeff)`` terms of ``Σ coeff · rot_shift(w_t)``."""

    levels: tuple[tuple[tuple[int, int], ...], ...]


def _level(terms: dict[int, int], p: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((s, c % p) for s, c in terms.items() if c % p))


def _check(a: LayeredElement, tower: Tower):
    if len(a.levels) != tower.k:
        raise ValueError(f"element has {len(a.levels)} levels, tower has {tower.k}")


def identity(tower: Tower) -> LayeredElement:
    return LayeredElement(tuple(() for _ in tower.levels))


def witness(tower: Tower, t: int) -> LayeredElement:
    return LayeredElement(tuple(((0, 1),) if lv.t == t else () for lv in tower.levels))


def level_sums(a: LayeredElement, tower: Tower) -> list[int]:
    """``ψ_r(a)`` for every level ``r``."""
    _check(a, tower)
    return [
        sum(c for _, c in terms) * ws % p if terms else 0
        for terms, (p, _, ws, _) in zip(a.levels, tower.plan)
    ]


def _shift(sums: list[int], dim: int, acting) -> int:
    return sum(sums[r] * step for r, step in acting) % dim if acting else 0


def multiply(a: LayeredElement, b: LayeredElement, tower: Tower) -> LayeredElement:
    _check(b, tower)
    sums = level_sums(a, tower)
    out = []
    for ta, tb, (p, dim, _, acting) in zip(a.levels, b.levels, tower.plan):
        if not tb:
            out.append(ta)
            continue
        s = _shift(sums, dim, acting)
        if not ta and not s:
            out.append(tb)
            continue
        acc = dict(ta)
        for sh, c in tb:
            key = (sh + s) % dim
            acc[key] = acc.get(key, 0) + c
        out.append(_level(acc, p))
    return LayeredElement(tuple(out))


def inverse(a: LayeredElement, tower: Tower) -> LayeredElement:
    sums = level_sums(a, tower)
    out = []
    for ta, (p, dim, _, acting) in zip(a.levels, tower.plan):
        if ta:
            s = _shift(sums, dim, acting)
            out.append(_level({(sh - s) % dim: -c for sh, c in ta}, p))
        else:
            out.append(())
    return LayeredElement(tuple(out))


def commutator(a: LayeredElement, b: LayeredElement, tower: Tower) -> LayeredElement:
    """``a^-1 b^-1 a b``."""
    left = multiply(inverse(a, tower), inverse(b, tower), tower)
    return multiply(left, multiply(a, b, tower), tower)


def power(a: LayeredElement, k: int, tower: Tower) -> LayeredElement:
    if k < 0:
        a, k = inverse(a, tower), -k
    out, base = identity(tower), a
    while k:
        if k & 1:
            out = multiply(out, base, tower)
        base = multiply(base, base, tower)
        k >>= 1
    return out


def _coords(terms, lv: TowerLevel, idx: np.ndarray) -> np.ndarray:
    acc = np.zeros(len(idx), dtype=np.int64)
    for sh, c in terms:
        acc = (acc + c * lv.witness_values((idx - sh) % lv.dim)) % lv.p
    return acc


def nonzero_coordinate(terms, lv: TowerLevel) -> tuple[int, int] | None:
    """First ``(index, value)`` where the level vector is non-zero, or ``None``."""
    if not terms:
        return None
    # chunks grow geometrically: non-zero vectors usually show it early
    start, size = 0, 64
    while start < lv.dim:
        idx = np.arange(start, min(start + size, lv.dim), dtype=np.int64)
        vals = _coords(terms, lv, idx)
        nz = np.flatnonzero(vals)
        if nz.size:
            return int(idx[nz[0]]), int(vals[nz[0]])
        start += size
        size = min(2 * size, _CHUNK)
    return None


def is_identity(a: LayeredElement, tower: Tower) -> bool:
    _check(a, tower)
    return all(nonzero_coordinate(terms, lv) is None for terms, lv in zip(a.levels, tower.levels))


def dense(a: LayeredElement, tower: Tower) -> tuple[tuple[int, ...], ...]:
    out = []
    for terms, lv in zip(a.levels, tower.levels):
        out.append(tuple(int(v) for v in _coords(terms, lv, np.arange(lv.dim))))
    return tuple(out)


# ---------------------------------------------------------------------------
# construction


def embed_graph(X: Graph) -> tuple[Tower, list[LayeredElement]]:
    """Build the tower for ``X`` (vertex ``i`` of ``X`` ↔ level ``i + 1``) and its witnesses."""
    k = X.n
    if k < 1:
        raise ValueError("graph must have at least one vertex")
    levels = [TowerLevel(t=1, p=2, dim=1, neighbors=(), steps=(), witness_last=1)]
    used = {2}
    for t in range(2, k + 1):
        nbrs = tuple(r for r in range(1, t) if X.adjacent(r - 1, t - 1))
        mods = [levels[r - 1].p for r in nbrs]
        d = math.prod(mods)
        steps = []
        for m in mods:
            rest = d // m
            steps.append(rest * pow(rest, -1, m) % d)
        p = nextprime(d + 1)
        while p in used:
            p = nextprime(p)
        used.add(p)
        total = d * (d + 1) // 2
        last = d if total % p else d + 1
        levels.append(TowerLevel(t, p, d, nbrs, tuple(steps), last))
    tower = Tower(levels)
    return tower, [witness(tower, t) for t in range(1, k + 1)]


# ---------------------------------------------------------------------------
# verification


@dataclass
class CommutatorEntry:
    i: int
    j: int
    adjacent: bool
    trivial: bool
    nonzero_at: tuple[int, int, int] | None  # (level, coordinate, value) when non-trivial
    sums_vanish: bool

    @property
    def ok(self) -> bool:
        return self.trivial != self.adjacent and self.sums_vanish


@dataclass
class EmbeddingTranscript:
    orders: list[tuple[int, int, bool]] = field(default_factory=list)  # (vertex, prime, order == prime)
    distinct_primes: bool = True
    commutators: list[CommutatorEntry] = field(default_factory=list)
    nonmembership: list[tuple[int, int, bool]] = field(default_factory=list)  # (vertex, ψ_t(x_t), != 0)

    @property
    def ok(self) -> bool:
        return (
            self.distinct_primes
            and all(o for *_, o in self.orders)
            and all(c.ok for c in self.commutators)
            and all(o for *_, o in self.nonmembership)
        )

    def to_text(self) -> str:
        lines = ["orders:"]
        for v, p, ok in self.orders:
            lines.append(f"  x{v}: order {p} {'ok' if ok else 'FAIL'}")
        lines.append(f"primes distinct: {self.distinct_primes}")
        lines.append("commutators:")
        for c in self.commutators:
            state = "trivial" if c.trivial else f"non-trivial at {c.nonzero_at}"
            edge = "edge" if c.adjacent else "no edge"
            lines.append(f"  [x{c.i}, x{c.j}] {state}; {edge}; {'ok' if c.ok else 'FAIL'}")
        lines.append("outside the commutator subgroup (coordinate sum of own level):")
        for v, s, ok in self.nonmembership:
            lines.append(f"  x{v}: sum {s} {'ok' if ok else 'FAIL'}")
        lines.append("verified" if self.ok else "FAILED")
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps(
            {
                "ok": self.ok,
                "orders": [{"vertex": v, "prime": p, "ok": ok} for v, p, ok in self.orders],
                "distinct_primes": self.distinct_primes,
                "commutators": [
                    {
                        "i": c.i,
                        "j": c.j,
                        "adjacent": c.adjacent,
                        "trivial": c.trivial,
                        "nonzero_at": c.nonzero_at,
                        "ok": c.ok,
                    }
                    for c in self.commutators
                ],
                "nonmembership": [{"vertex": v, "sum": s, "ok": ok} for v, s, ok in self.nonmembership],
            }
        )


def verify_embedding(X: Graph, tower: Tower, witnesses: Sequence[LayeredElement]) -> EmbeddingTranscript:
    """Check orders, the commutation pattern against ``X``, and that each witness
    has a non-zero coordinate sum on its own level (so lies outside the
    sum-zero normal subgroup that contains the commutator subgroup)."""
    tr = EmbeddingTranscript()
    tr.distinct_primes = len(set(tower.primes)) == tower.k
    for v, (x, lv) in enumerate(zip(witnesses, tower.levels), start=1):
        ok = not is_identity(x, tower) and is_identity(power(x, lv.p, tower), tower)
        tr.orders.append((v, lv.p, ok))
    for i, j in itertools.combinations(range(len(witnesses)), 2):
        c = commutator(witnesses[i], witnesses[j], tower)
        where = None
        for terms, lv in zip(c.levels, tower.levels):
            hit = nonzero_coordinate(terms, lv)
            if hit is not None:
                where = (lv.t, *hit)
                break
        tr.commutators.append(
            CommutatorEntry(
                i + 1,
                j + 1,
                X.adjacent(i, j),
                where is None,
                where,
                not any(level_sums(c, tower)),
            )
        )
    for v, x in enumerate(witnesses, start=1):
        s = level_sums(x, tower)[v - 1]
        tr.nonmembership.append((v, s, s != 0))
    return tr


# ---------------------------------------------------------------------------
# explicit groups


def materialize(tower: Tower, budget: int = 10**4) -> FiniteGroup:
    """The tower group with explicit elements (tuples of dense level vectors)."""
    size = tower.order
    if size > budget:
        raise BudgetError(f"tower group has order {size} > budget {budget}")
    levels = tower.levels
    elements = list(
        itertools.product(*[itertools.product(range(lv.p), repeat=lv.dim) for lv in levels])
    )

    def op(a, b):
        sums = [sum(v) % lv.p for v, lv in zip(a, levels)]
        out = []
        for va, vb, lv in zip(a, b, levels):
            s = lv.shift(sums)
            out.append(tuple((va[j] + vb[(j - s) % lv.dim]) % lv.p for j in range(lv.dim)))
        return tuple(out)

    def fmt(a):
        return "[" + "|".join(",".join(map(str, v)) for v in a) + "]"

    def build() -> np.ndarray:
        n = len(elements)
        digits = [np.array([list(e[t]) for e in elements], dtype=np.int64).reshape(n, lv.dim) for t, lv in enumerate(levels)]
        weights = []
        w = 1
        for lv in reversed(levels):
            weights.append(w * lv.p ** np.arange(lv.dim - 1, -1, -1, dtype=np.int64))
            w *= lv.p**lv.dim
        weights.reverse()
        sums = np.stack([dg.sum(axis=1) % lv.p for dg, lv in zip(digits, levels)], axis=1)
        table = np.empty((n, n), dtype=np.int64)
        for a in range(n):
            sa = sums[a].tolist()
            code = np.zeros(n, dtype=np.int64)
            for dg, lv, wt in zip(digits, levels, weights):
                prod = (dg[a] + np.roll(dg, lv.shift(sa), axis=1)) % lv.p
                code += prod @ wt
            table[a] = code
        return table

    return FiniteGroup(f"tower{tower.primes}", elements, op, fmt=fmt, table_builder=build)


def witness_ids(G: FiniteGroup, tower: Tower, witnesses: Sequence[LayeredElement]) -> list[int]:
    return [G.index[dense(x, tower)] for x in witnesses]


def symmetric_embedding(
    G: FiniteGroup, ids: Sequence[int], budget: int = 10**4
) -> tuple[FiniteGroup, list[int]] | None:
    """Left-regular image of ``G`` inside ``S_m`` with ``m = max(|G|, 3)``.

    Returns the symmetric group and the ids of the images of ``ids``, or
    ``None`` when ``m!`` exceeds ``budget``.
    """
    m = max(G.order, 3)
    if math.factorial(m) > budget:
        return None
    S = make_group(f"S{m}")
    t = G.table
    out = []
    for x in ids:
        images = [int(v) for v in t[x]] + list(range(G.order, m))
        out.append(S.index[Permutation(tuple(images))])
    return S, out


def commutator_stability(
    tower: Tower, witnesses: Sequence[LayeredElement], budget: int = 10**4
) -> list[tuple[int, int, bool]]:
    """For every materializable prefix ``G_s``: ``(s, r, x_r ∉ G_s')`` for all ``r <= s``."""
    out = []
    for s in range(1, tower.k + 1):
        sub = tower.prefix(s)
        if sub.order > budget:
            break
        G = materialize(sub, budget)
        D = commutator_subgroup(G)
        ws = [LayeredElement(x.levels[:s]) for x in witnesses[:s]]
        for r, gid in enumerate(witness_ids(G, sub, ws), start=1):
            out.append((s, r, gid not in D))
    return out


def realized_subgraph(X: Graph, budget: int = 10**4) -> Graph:
    """Construct, materialize, and read back the subgraph induced on the witnesses."""
    tower, ws = embed_graph(X)
    G = materialize(tower, budget)
    return induced_subgraph(build_nilgraph(G), witness_ids(G, tower, ws))


def realized_in_symmetric(X: Graph, budget: int = 10**4) -> Graph | None:
    """Like :func:`realized_subgraph`, read inside the non-nilpotent graph of the
    ambient symmetric group, or ``None`` when that group is over budget."""
    tower, ws = embed_graph(X)
    G = materialize(tower, budget)
    emb = symmetric_embedding(G, witness_ids(G, tower, ws), budget)
    if emb is None:
        return None
    S, ids = emb
    R = nonnilpotent_graph(S)
    where = {gid: v for v, gid in enumerate(R.ids)}
    if any(i not in where for i in ids):
        raise AssertionError("a witness is isolated in the ambient graph")
    return induced_subgraph(R, [where[i] for i in ids])
