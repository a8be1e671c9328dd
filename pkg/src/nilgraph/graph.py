"""Non-nilpotent graphs and the graph utilities used to study them.

Adjacency is stored bit-packed: row ``v`` is a Python ``int`` whose bit ``u``
is set iff ``u ~ v``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .group import (
    FiniteGroup,
    hypercenter,
    is_nilpotent,
    nilpotent_partners,
    quotient,
)

__all__ = [
    "Graph",
    "build_nilgraph",
    "nonnilpotent_graph",
    "remove_isolated",
    "isolated_vertices",
    "blow_up",
    "BlowupCheck",
    "verify_quotient_blowup",
    "degree",
    "degree_sequence",
    "is_complete_multipartite",
    "diameter",
    "HamiltonianResult",
    "hamiltonian",
    "induced_subgraph",
    "to_dot",
    "to_json",
    "from_json",
    "parse_edge_list",
    "format_edge_list",
]


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _row_to_int(row: np.ndarray) -> int:
    return int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")


class Graph:
    """Simple undirected graph with labelled vertices.

    ``ids`` optionally records, per vertex, the id of the group element the
    vertex came from.
    """

    def __init__(
        self,
        labels: Sequence[str],
        rows: Sequence[int],
        name: str = "",
        ids: Sequence[int] | None = None,
    ):
        self.labels = list(labels)
        self.rows = list(rows)
        self.name = name
        self.ids = None if ids is None else list(ids)
        n = len(self.labels)
        if len(self.rows) != n:
            raise ValueError("one adjacency row per vertex is required")
        full = (1 << n) - 1
        for v, r in enumerate(self.rows):
            if r & ~full or (r >> v) & 1:
                raise ValueError(f"row {v} has a loop or an out-of-range bit")
            for u in _bits(r):
                if not (self.rows[u] >> v) & 1:
                    raise ValueError(f"adjacency not symmetric at ({u}, {v})")
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    @classmethod
    def from_edges(cls, labels: Sequence[str], edges: Iterable[tuple[int, int]], name: str = "") -> "Graph":
        rows = [0] * len(labels)
        for i, j in edges:
            if i == j:
                raise ValueError("loops are not allowed")
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls(labels, rows, name)

    @classmethod
    def from_matrix(cls, labels: Sequence[str], matrix: np.ndarray, name: str = "", ids=None) -> "Graph":
        matrix = np.asarray(matrix, dtype=bool)
        return cls(labels, [_row_to_int(r) for r in matrix], name, ids)

    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def vertex(self, v: int | str) -> int:
        if isinstance(v, str):
            if v not in self._index:
                raise KeyError(f"unknown vertex {v!r}")
            return self._index[v]
        if not 0 <= v < self.n:
            raise KeyError(f"unknown vertex {v!r}")
        return int(v)

    def adjacent(self, u: int | str, v: int | str) -> bool:
        return bool((self.rows[self.vertex(u)] >> self.vertex(v)) & 1)

    def neighbors(self, v: int | str) -> list[int]:
        return list(_bits(self.rows[self.vertex(v)]))

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, r in enumerate(self.rows) for j in _bits(r >> (i + 1) << (i + 1))]

    @property
    def n_edges(self) -> int:
        return sum(self.degrees()) // 2

    def matrix(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=bool)
        for i, j in self.edges():
            m[i, j] = m[j, i] = True
        return m

    def same_adjacency(self, other: "Graph") -> bool:
        """Equal under the identity correspondence of vertex positions."""
        return self.rows == other.rows

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.labels == other.labels and self.rows == other.rows

    def __repr__(self) -> str:
        return f"<Graph {self.name!r}: {self.n} vertices, {self.n_edges} edges>"


def build_nilgraph(G: FiniteGroup) -> Graph:
    """The graph on all of ``G`` joining ``x, y`` iff ``<x, y>`` is not nilpotent."""
    rows = []
    for x in range(G.order):
        row = ~nilpotent_partners(G, x)
        row[x] = False
        rows.append(_row_to_int(row))
    return Graph(G.labels, rows, name=G.label, ids=range(G.order))


def nonnilpotent_graph(G: FiniteGroup) -> Graph:
    return remove_isolated(build_nilgraph(G))


def isolated_vertices(g: Graph) -> list[int]:
    return [v for v, r in enumerate(g.rows) if not r]


def induced_subgraph(g: Graph, vs: Sequence[int | str]) -> Graph:
    idx = [g.vertex(v) for v in vs]
    if len(set(idx)) != len(idx):
        raise ValueError("duplicate vertex")
    pos = {v: k for k, v in enumerate(idx)}
    rows = []
    for v in idx:
        r = 0
        for u in _bits(g.rows[v]):
            if u in pos:
                r |= 1 << pos[u]
        rows.append(r)
    ids = None if g.ids is None else [g.ids[v] for v in idx]
    return Graph([g.labels[v] for v in idx], rows, g.name, ids)


def remove_isolated(g: Graph) -> Graph:
    return induced_subgraph(g, [v for v, r in enumerate(g.rows) if r])


def blow_up(X: Graph, c: int) -> Graph:
    """Replace each vertex by ``c`` independent copies joined like the original."""
    if c < 1:
        raise ValueError("blow-up order must be positive")
    labels = [f"{lab}_{i + 1}" for lab in X.labels for i in range(c)]
    block = (1 << c) - 1
    rows = []
    for r in X.rows:
        expanded = 0
        for u in _bits(r):
            expanded |= block << (u * c)
        rows.extend([expanded] * c)
    return Graph(labels, rows, f"{c}*{X.name}")


@dataclass
class BlowupCheck:
    ok: bool
    c: int
    mapping: dict[int, int]  # vertex of the graph of G -> vertex of the graph of G/Z*
    graph: Graph
    quotient_graph: Graph


def verify_quotient_blowup(G: FiniteGroup) -> BlowupCheck:
    """Check that projecting onto ``G/Z*(G)`` is a ``|Z*(G)|``-to-1 adjacency-preserving map."""
    if is_nilpotent(G):
        raise ValueError(f"{G.label} is nilpotent; its non-nilpotent graph is empty")
    Z = hypercenter(G)
    R = nonnilpotent_graph(G)
    Q, proj = quotient(G, Z)
    RQ = nonnilpotent_graph(Q)
    where = {qid: v for v, qid in enumerate(RQ.ids)}
    ok = True
    mapping: dict[int, int] = {}
    for v, gid in enumerate(R.ids):
        q = where.get(int(proj[gid]))
        if q is None:
            ok = False
            break
        mapping[v] = q
    if ok:
        fibres = np.bincount(list(mapping.values()), minlength=RQ.n)
        m = np.array([mapping[v] for v in range(R.n)], dtype=np.int64)
        ok = bool((fibres == Z.order).all()) and bool(
            (R.matrix() == RQ.matrix()[np.ix_(m, m)]).all()
        )
    return BlowupCheck(ok, Z.order, mapping, R, RQ)


def degree(g: Graph, v: int | str) -> int:
    return g.rows[g.vertex(v)].bit_count()


def degree_sequence(g: Graph) -> list[int]:
    return sorted(g.degrees())


def is_complete_multipartite(g: Graph) -> list[list[int]] | None:
    """Parts of ``g`` as a complete multipartite graph, or ``None`` if it is not one.

    Non-adjacency (with each vertex related to itself) must be an equivalence
    relation; its classes are the parts.
    """
    full = (1 << g.n) - 1
    classes: dict[int, list[int]] = {}
    for v, r in enumerate(g.rows):
        classes.setdefault(~r & full, []).append(v)
    for cls, members in classes.items():
        if sum(1 << v for v in members) != cls:
            return None
    return sorted(classes.values())


def diameter(g: Graph) -> float:
    """Largest BFS distance; ``math.inf`` when disconnected, 0 for fewer than two vertices."""
    full = (1 << g.n) - 1
    best = 0
    for s in range(g.n):
        seen = frontier = 1 << s
        dist = 0
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= g.rows[v]
            nxt &= ~seen
            if nxt:
                dist += 1
                seen |= nxt
            frontier = nxt
        if seen != full:
            return math.inf
        best = max(best, dist)
    return best


@dataclass
class HamiltonianResult:
    cycle: list[int] | None
    dirac: bool
    status: str  # "found", "none", "dirac" (not searched, Dirac holds) or "unknown"


def hamiltonian(g: Graph, budget: int = 24) -> HamiltonianResult:
    """Backtracking search for a Hamiltonian cycle on at most ``budget`` vertices.

    Larger graphs are not searched; the result then only reports whether the
    Dirac condition (minimum degree at least half the order) holds.
    """
    n = g.n
    dirac = n >= 3 and min(g.degrees()) * 2 >= n
    if n > budget:
        return HamiltonianResult(None, dirac, "dirac" if dirac else "unknown")
    if n < 3:
        return HamiltonianResult(None, dirac, "none")
    rows = g.rows
    path = [0]

    def extend(visited: int) -> bool:
        v = path[-1]
        if len(path) == n:
            return bool(rows[v] & 1)
        cand = list(_bits(rows[v] & ~visited))
        # fewest onward options first
        cand.sort(key=lambda u: (rows[u] & ~visited).bit_count())
        for u in cand:
            path.append(u)
            if extend(visited | (1 << u)):
                return True
            path.pop()
        return False

    if extend(1):
        return HamiltonianResult(path, dirac, "found")
    return HamiltonianResult(None, dirac, "none")


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: Graph) -> str:
    lines = ["graph nilgraph {"]
    for v in isolated_vertices(g):
        lines.append(f"  {_dot_quote(g.labels[v])};")
    for i, j in g.edges():
        lines.append(f"  {_dot_quote(g.labels[i])} -- {_dot_quote(g.labels[j])};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(g: Graph) -> str:
    return json.dumps(
        {
            "group": g.name,
            "n_vertices": g.n,
            "vertices": g.labels,
            "edges": [list(e) for e in sorted(g.edges())],
        }
    )


def from_json(text: str) -> Graph:
    data = json.loads(text)
    labels = [str(v) for v in data["vertices"]]
    if data.get("n_vertices", len(labels)) != len(labels):
        raise ValueError("n_vertices does not match the vertex list")
    return Graph.from_edges(labels, [tuple(e) for e in data["edges"]], data.get("group", ""))


def parse_edge_list(text: str) -> Graph:
    """``k`` on the first line, then one ``i j`` pair (1-based) per line."""
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty edge list")
    k = int(lines[0])
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line {ln!r}")
        i, j = (int(x) for x in parts)
        if not (1 <= i <= k and 1 <= j <= k) or i == j:
            raise ValueError(f"bad edge {i} {j} for {k} vertices")
        edges.append((i - 1, j - 1))
    return Graph.from_edges([str(i + 1) for i in range(k)], edges)


def format_edge_list(g: Graph) -> str:
    return "\n".join([str(g.n)] + [f"{i + 1} {j + 1}" for i, j in g.edges()]) + "\n"
