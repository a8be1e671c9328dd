"""Explicit finite groups and the nilpotency machinery built on them.

Every group is a list of element values with a multiplication on values and,
up to ``TABLE_LIMIT`` elements, a numpy Cayley table on element ids.  The id of
the identity is always 0.  Groups are immutable once built; derived data
(tables, element orders, prime parts, Sylow subgroups) is computed lazily and
cached.
"""
from __future__ import annotations

import itertools
import math
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np
from sympy import factorint

from .perm import Permutation, compose, format_cycles
from .perm import order as perm_order
from .perm import prime_part as perm_prime_part

__all__ = [
    "BudgetError",
    "GroupSpecError",
    "FiniteGroup",
    "Subgroup",
    "make_group",
    "group_order",
    "symmetric_group",
    "alternating_group",
    "cyclic_group",
    "dihedral_group",
    "direct_product",
    "semidirect_product",
    "generalized_dihedral",
    "permutation_group",
    "generated_subgroup",
    "center",
    "upper_central_series",
    "hypercenter",
    "commutator_subgroup",
    "quotient",
    "is_nilpotent",
    "pair_nilpotent",
    "pair_nilpotent_perm",
    "nilpotent_partners",
    "sylow_subgroups",
    "builtin_specs",
    "builtin_groups",
]

DEFAULT_BUDGET = 10**6
TABLE_LIMIT = 10_000


class BudgetError(RuntimeError):
    """A requested enumeration would exceed its configured size budget."""


class GroupSpecError(ValueError):
    """A group spec string does not match the accepted grammar."""


def _component_exponent(m: int, p: int) -> int:
    """``e`` with ``x**e`` the ``p``-component of any ``x`` of order ``m``."""
    pe = 1
    while m % (pe * p) == 0:
        pe *= p
    if pe == 1:
        return 0
    r = m // pe
    return r * pow(r, -1, pe) % m


def _is_prime_power(m: int, p: int) -> bool:
    while m % p == 0:
        m //= p
    return m == 1


class FiniteGroup:
    """An enumerated finite group.

    ``op`` multiplies element values; ``table_builder`` (optional) returns the
    full Cayley table as an integer array faster than the generic double loop.
    """

    def __init__(
        self,
        label: str,
        elements: Sequence[Hashable],
        op: Callable[[Hashable, Hashable], Hashable],
        *,
        fmt: Callable[[Hashable], str] = str,
        table_builder: Callable[[], np.ndarray] | None = None,
    ):
        self.label = label
        self.elements = list(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate group elements")
        self._op = op
        self._fmt = fmt
        self._table_builder = table_builder
        self._prime_parts: dict[int, np.ndarray] = {}
        self._sylow: dict[int, list[Subgroup]] = {}
        self._membership: dict[int, np.ndarray] = {}
        e0 = self.elements[0]
        if op(e0, e0) != e0:
            raise ValueError("element 0 must be the identity")

    one = 0

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"<FiniteGroup {self.label} of order {self.order}>"

    def element_label(self, i: int) -> str:
        return self._fmt(self.elements[i])

    @cached_property
    def labels(self) -> list[str]:
        return [self._fmt(e) for e in self.elements]

    @property
    def has_table(self) -> bool:
        return self.order <= TABLE_LIMIT

    @cached_property
    def table(self) -> np.ndarray:
        n = self.order
        if n > TABLE_LIMIT:
            raise BudgetError(f"Cayley table of {self.label} ({n} elements) exceeds {TABLE_LIMIT}")
        dtype = np.int16 if n < 2**15 else np.int32
        if self._table_builder is not None:
            t = np.asarray(self._table_builder(), dtype=dtype)
        else:
            t = np.empty((n, n), dtype=dtype)
            els, idx, op = self.elements, self.index, self._op
            for i, a in enumerate(els):
                t[i] = [idx[op(a, b)] for b in els]
        t.setflags(write=False)
        return t

    def op(self, a: Hashable, b: Hashable) -> Hashable:
        """Product of two element values."""
        return self._op(a, b)

    def mul(self, i: int, j: int) -> int:
        if self.has_table:
            return int(self.table[i, j])
        return self.index[self._op(self.elements[i], self.elements[j])]

    @cached_property
    def inverses(self) -> np.ndarray:
        if self.has_table:
            rows, cols = np.nonzero(self.table == 0)
            inv = np.empty(self.order, dtype=np.int64)
            inv[rows] = cols
            return inv
        return np.array([self.power(i, self.element_order(i) - 1) for i in range(self.order)])

    def inv(self, i: int) -> int:
        return int(self.inverses[i])

    def power(self, i: int, k: int) -> int:
        if k < 0:
            i, k = self.inv(i), -k
        out, base = 0, i
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def commutator(self, i: int, j: int) -> int:
        """``[i, j] = i^-1 j^-1 i j``."""
        return self.mul(self.mul(self.inv(i), self.inv(j)), self.mul(i, j))

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        if self.has_table:
            t = self.table
            ar = np.arange(n)
            cur = ar.copy()
            k = 1
            while True:
                hit = (cur == 0) & (orders == 0)
                orders[hit] = k
                if orders.all():
                    return orders
                cur = t[cur, ar]
                k += 1
        for i in range(n):
            cur, k = i, 1
            while cur != 0:
                cur = self.mul(cur, i)
                k += 1
            orders[i] = k
        return orders

    def element_order(self, i: int) -> int:
        return int(self.element_orders[i])

    @cached_property
    def primes(self) -> list[int]:
        return sorted(factorint(self.order))

    def power_array(self, exps: np.ndarray) -> np.ndarray:
        """Elementwise ``x ** exps[x]`` for every element id ``x``."""
        t = self.table
        exps = np.asarray(exps, dtype=np.int64).copy()
        out = np.zeros(self.order, dtype=np.int64)
        base = np.arange(self.order)
        while exps.any():
            m = (exps & 1).astype(bool)
            out[m] = t[out[m], base[m]]
            base = t[base, base]
            exps >>= 1
        return out

    def prime_part_array(self, p: int) -> np.ndarray:
        """Ids of the ``p``-component ``x_p`` for every element ``x``."""
        if p not in self._prime_parts:
            exps = [_component_exponent(int(m), p) for m in self.element_orders]
            self._prime_parts[p] = self.power_array(np.array(exps, dtype=np.int64))
        return self._prime_parts[p]

    def prime_part(self, i: int, p: int) -> int:
        if self.has_table:
            return int(self.prime_part_array(p)[i])
        return self.power(i, _component_exponent(self.element_order(i), p))

    def is_abelian(self) -> bool:
        t = self.table
        return bool((t == t.T).all())

    def commutator_row(self, g: int) -> np.ndarray:
        """``[g, x]`` for every ``x``."""
        t, inv = self.table, self.inverses
        return t[t[inv[g], inv], t[g]]

    def sylow_subgroups(self, p: int) -> list["Subgroup"]:
        if p not in self._sylow:
            self._sylow[p] = _all_sylow(self, p)
        return self._sylow[p]

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, frozenset(range(self.order)))


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    members: frozenset[int]

    def __len__(self) -> int:
        return len(self.members)

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, i: int) -> bool:
        return i in self.members

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and other.parent is self.parent
            and other.members == self.members
        )

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members))

    def __repr__(self) -> str:
        return f"<Subgroup of {self.parent.label} of order {self.order}>"

    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[list(self.members)] = True
        return m


# ---------------------------------------------------------------------------
# constructors


def permutation_group(label: str, perms: Sequence[Permutation]) -> FiniteGroup:
    """Group on an explicit list of permutations; the identity must come first."""
    perms = list(perms)
    n = perms[0].n if perms else 0

    def build() -> np.ndarray:
        arr = np.array([p.images for p in perms], dtype=np.int64).reshape(len(perms), n)
        weights = n ** np.arange(n, dtype=np.int64)
        codes = arr @ weights
        order = np.argsort(codes)
        sorted_codes = codes[order]
        out = np.empty((len(perms), len(perms)), dtype=np.int64)
        for i in range(len(perms)):
            prod = arr[i][arr]  # (p_i ∘ q)(k) = p_i(q(k))
            out[i] = order[np.searchsorted(sorted_codes, prod @ weights)]
        return out

    return FiniteGroup(label, perms, compose, fmt=format_cycles, table_builder=build)


def symmetric_group(n: int) -> FiniteGroup:
    perms = [Permutation(im) for im in itertools.permutations(range(n))]
    return permutation_group(f"S{n}", perms)


def alternating_group(n: int) -> FiniteGroup:
    perms = [
        p for p in (Permutation(im) for im in itertools.permutations(range(n))) if p.sign() == 1
    ]
    return permutation_group(f"A{n}", perms)


def cyclic_group(n: int) -> FiniteGroup:
    def build() -> np.ndarray:
        ar = np.arange(n)
        return (ar[:, None] + ar[None, :]) % n

    return FiniteGroup(f"C{n}", range(n), lambda a, b: (a + b) % n, table_builder=build)


def direct_product(a: FiniteGroup, b: FiniteGroup, label: str | None = None) -> FiniteGroup:
    nb = b.order
    elements = [(x, y) for x in a.elements for y in b.elements]

    def op(u, v):
        return (a._op(u[0], v[0]), b._op(u[1], v[1]))

    def fmt(u):
        return f"({a._fmt(u[0])}, {b._fmt(u[1])})"

    def build() -> np.ndarray:
        ta = a.table.astype(np.int64)
        tb = b.table.astype(np.int64)
        t = ta[:, None, :, None] * nb + tb[None, :, None, :]
        return t.reshape(a.order * nb, a.order * nb)

    return FiniteGroup(label or f"{a.label}x{b.label}", elements, op, fmt=fmt, table_builder=build)


def semidirect_product(
    normal: FiniteGroup,
    acting: FiniteGroup,
    action: Callable[[int, int], int],
    label: str,
) -> FiniteGroup:
    """``normal ⋊ acting`` with elements ``(n, k)`` and ``(n1,k1)(n2,k2) = (n1·k1(n2), k1k2)``.

    ``action(k, n)`` maps ids: the image of normal element ``n`` under acting element ``k``.
    """
    nn, nk = normal.order, acting.order
    act = np.array([[action(k, x) for x in range(nn)] for k in range(nk)], dtype=np.int64)
    elements = [(x, y) for x in normal.elements for y in acting.elements]

    def op(u, v):
        ni, ki = normal.index, acting.index
        k1 = ki[u[1]]
        n2 = normal.elements[act[k1, ni[v[0]]]]
        return (normal._op(u[0], n2), acting._op(u[1], v[1]))

    def fmt(u):
        return f"({normal._fmt(u[0])}, {acting._fmt(u[1])})"

    def build() -> np.ndarray:
        tn = normal.table.astype(np.int64)
        tk = acting.table.astype(np.int64)
        ids = np.arange(nn * nk)
        n_, k_ = ids // nk, ids % nk
        moved = act[k_[:, None], n_[None, :]]
        return tn[n_[:, None], moved] * nk + tk[k_[:, None], k_[None, :]]

    return FiniteGroup(label, elements, op, fmt=fmt, table_builder=build)


def _sign_character(acting: FiniteGroup, kind: str) -> Callable[[int], int]:
    if kind == "inv":
        if not re.fullmatch(r"C\d+", acting.label) or acting.order % 2:
            raise GroupSpecError("inversion action needs an acting cyclic group of even order")
        return lambda k: -1 if acting.elements[k] % 2 else 1
    if kind == "sign":
        if not isinstance(acting.elements[0], Permutation):
            raise GroupSpecError("sign action needs an acting permutation group")
        return lambda k: acting.elements[k].sign()
    raise GroupSpecError(f"unknown action {kind!r}")


def _sd_by_character(normal: FiniteGroup, acting: FiniteGroup, kind: str, label: str) -> FiniteGroup:
    if not normal.is_abelian():
        raise GroupSpecError(f"{normal.label} is not abelian; inversion is not an automorphism")
    chi = _sign_character(acting, kind)
    inv = normal.inverses

    def action(k: int, x: int) -> int:
        return int(inv[x]) if chi(k) == -1 else x

    return semidirect_product(normal, acting, action, label)


def dihedral_group(n: int) -> FiniteGroup:
    """Dihedral group of order ``2n``."""
    return _sd_by_character(cyclic_group(n), cyclic_group(2), "inv", f"D{n}")


def generalized_dihedral(a: FiniteGroup) -> FiniteGroup:
    return _sd_by_character(a, cyclic_group(2), "inv", f"GD({a.label})")


# ---------------------------------------------------------------------------
# spec strings

_TOKEN = re.compile(r"\s*(?:(SD|GD)\(|([SADC])(\d+)|([a-z]+)|(.))")


def _tokenize(text: str) -> list[str]:
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1):
            toks.append(m.group(1) + "(")
        elif m.group(2):
            toks.append(m.group(2) + m.group(3))
        elif m.group(4):
            toks.append(m.group(4))
        elif m.group(5).strip():
            toks.append(m.group(5))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.pos = 0

    def error(self, msg: str) -> GroupSpecError:
        return GroupSpecError(f"bad group spec {self.text!r}: {msg}")

    def peek(self) -> str | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise self.error(f"expected {expected or 'token'}, got {tok!r}")
        self.pos += 1
        return tok

    def parse(self):
        node = self.product()
        if self.peek() is not None:
            raise self.error(f"unexpected {self.peek()!r}")
        return node

    def product(self):
        factors = [self.term()]
        while self.peek() == "x":
            self.take("x")
            factors.append(self.term())
        return factors[0] if len(factors) == 1 else ("x", factors)

    def term(self):
        tok = self.take()
        if tok in ("GD(",):
            inner = self.product()
            self.take(")")
            return ("GD", inner)
        if tok == "SD(":
            normal = self.product()
            self.take(",")
            acting = self.product()
            self.take(",")
            action = self.take()
            if action not in ("inv", "sign"):
                raise self.error(f"unknown action {action!r}")
            self.take(")")
            return ("SD", normal, acting, action)
        if tok == "(":
            inner = self.product()
            self.take(")")
            return inner
        if len(tok) > 1 and tok[0] in "SADC" and tok[1:].isdigit():
            n = int(tok[1:])
            if n < 1:
                raise self.error("degree must be positive")
            return (tok[0], n)
        raise self.error(f"unexpected {tok!r}")


def _node_order(node) -> int:
    kind = node[0]
    if kind == "S":
        return math.factorial(node[1])
    if kind == "A":
        return max(1, math.factorial(node[1]) // 2)
    if kind == "D":
        return 2 * node[1]
    if kind == "C":
        return node[1]
    if kind == "GD":
        return 2 * _node_order(node[1])
    if kind == "SD":
        return _node_order(node[1]) * _node_order(node[2])
    return math.prod(_node_order(f) for f in node[1])


def _node_label(node) -> str:
    kind = node[0]
    if kind in "SADC" and len(kind) == 1:
        return f"{kind}{node[1]}"
    if kind == "GD":
        return f"GD({_node_label(node[1])})"
    if kind == "SD":
        return f"SD({_node_label(node[1])},{_node_label(node[2])},{node[3]})"
    return "x".join(
        f"({_node_label(f)})" if f[0] == "x" else _node_label(f) for f in node[1]
    )


def _build(node) -> FiniteGroup:
    kind = node[0]
    if kind == "S":
        return symmetric_group(node[1])
    if kind == "A":
        return alternating_group(node[1])
    if kind == "D":
        return dihedral_group(node[1])
    if kind == "C":
        return cyclic_group(node[1])
    if kind == "GD":
        return generalized_dihedral(_build(node[1]))
    if kind == "SD":
        return _sd_by_character(_build(node[1]), _build(node[2]), node[3], _node_label(node))
    groups = [_build(f) for f in node[1]]
    out = groups[0]
    for g in groups[1:]:
        out = direct_product(out, g)
    out.label = _node_label(node)
    return out


def group_order(spec: str) -> int:
    return _node_order(_Parser(spec).parse())


def make_group(spec: str, budget: int = DEFAULT_BUDGET) -> FiniteGroup:
    """Build a group from a spec string such as ``"S4"``, ``"C2xS3"`` or ``"SD(C3,S4,sign)"``."""
    node = _Parser(spec).parse()
    size = _node_order(node)
    if size > budget:
        raise BudgetError(f"{spec} has order {size} > budget {budget}")
    return _build(node)


# ---------------------------------------------------------------------------
# subgroups and series


def _closure(G: FiniteGroup, start: Iterable[int], gens: Sequence[int]) -> set[int]:
    seen = set(start) | {0}
    todo = deque(seen)
    while todo:
        a = todo.popleft()
        for g in gens:
            b = G.mul(a, g)
            if b not in seen:
                seen.add(b)
                todo.append(b)
    return seen


def generated_subgroup(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    gens = [int(g) for g in gens]
    for g in gens:
        if not 0 <= g < G.order:
            raise ValueError(f"{g} is not an element id of {G.label}")
    return Subgroup(G, frozenset(_closure(G, [0], gens)))


def center(G: FiniteGroup) -> Subgroup:
    t = G.table
    return Subgroup(G, frozenset(int(g) for g in np.nonzero((t == t.T).all(axis=1))[0]))


def upper_central_series(G: FiniteGroup) -> list[Subgroup]:
    """``[Z_0, Z_1, ...]`` up to the first repeated term (included once)."""
    series = [Subgroup(G, frozenset([0]))]
    while True:
        inside = series[-1].mask()
        nxt = frozenset(g for g in range(G.order) if inside[G.commutator_row(g)].all())
        if nxt == series[-1].members:
            return series
        series.append(Subgroup(G, nxt))


def hypercenter(G: FiniteGroup) -> Subgroup:
    return upper_central_series(G)[-1]


def commutator_subgroup(G: FiniteGroup) -> Subgroup:
    comms: set[int] = set()
    for g in range(G.order):
        comms.update(np.unique(G.commutator_row(g)).tolist())
    return Subgroup(G, frozenset(_closure(G, comms, sorted(comms))))


def quotient(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, np.ndarray]:
    """``G/N`` on canonical (minimum-id) coset representatives, and the projection.

    The returned array maps each id of ``G`` to the id of its coset in the quotient.
    """
    t = G.table
    members = np.array(sorted(N.members))
    canon = t[:, members].min(axis=1)  # min of gN
    reps = np.unique(canon)
    rep_index = {int(r): i for i, r in enumerate(reps)}
    proj = np.array([rep_index[int(c)] for c in canon])

    def op(a, b):
        return int(canon[t[a, b]])

    def build() -> np.ndarray:
        return proj[t[np.ix_(reps, reps)]]

    Q = FiniteGroup(
        f"{G.label}/N{N.order}",
        [int(r) for r in reps],
        op,
        fmt=lambda r: G.element_label(r) + "N",
        table_builder=build,
    )
    return Q, proj


def is_nilpotent(H: Subgroup | FiniteGroup) -> bool:
    """Every Sylow subgroup normal, tested by counting ``p``-elements.

    A Sylow ``p``-subgroup is normal iff it is the only one, iff the ``p``-elements
    of ``H`` number exactly the ``p``-part of ``|H|``.
    """
    if isinstance(H, FiniteGroup):
        H = H.whole
    orders = H.parent.element_orders[sorted(H.members)]
    for p, a in factorint(H.order).items():
        count = sum(1 for o in orders if _is_prime_power(int(o), p))
        if count != p**a:
            return False
    return True


# ---------------------------------------------------------------------------
# nilpotency of two-generated subgroups


def _p_closure_is_p_group(a, b, p, mul, one, order_of, cap) -> bool:
    """Generate ``<a, b>`` for two ``p``-elements, aborting on any non-``p`` element."""
    seen = {one}
    todo = deque([one])
    while todo:
        u = todo.popleft()
        for g in (a, b):
            v = mul(u, g)
            if v in seen:
                continue
            if not _is_prime_power(order_of(v), p):
                return False
            seen.add(v)
            if cap is not None and len(seen) > cap:
                return False
            todo.append(v)
    return True


def _pair_nilpotent_core(x, y, *, mul, one, order_of, prime_part, cap_for=None) -> bool:
    if mul(x, y) == mul(y, x):
        return True
    fx, fy = factorint(order_of(x)), factorint(order_of(y))
    xp = {p: prime_part(x, p) for p in fx}
    yq = {q: prime_part(y, q) for q in fy}
    for p, a in xp.items():
        for q, b in yq.items():
            if p != q and mul(a, b) != mul(b, a):
                return False
    for p in fx.keys() & fy.keys():
        cap = cap_for(p) if cap_for else None
        if not _p_closure_is_p_group(xp[p], yq[p], p, mul, one, order_of, cap):
            return False
    return True


def pair_nilpotent(G: FiniteGroup, x: int, y: int, method: str = "fast") -> bool:
    """Whether ``<x, y>`` is nilpotent.

    ``fast`` uses the prime-part criterion (cross-prime parts commute, same-prime
    parts generate a ``p``-group); ``slow`` generates the subgroup and tests it.
    """
    if method == "slow":
        return is_nilpotent(generated_subgroup(G, [x, y]))
    if method != "fast":
        raise ValueError(f"unknown method {method!r}")
    fac = factorint(G.order)
    return _pair_nilpotent_core(
        x,
        y,
        mul=G.mul,
        one=0,
        order_of=G.element_order,
        prime_part=G.prime_part,
        cap_for=lambda p: p ** fac.get(p, 0),
    )


def pair_nilpotent_perm(s: Permutation, t: Permutation) -> bool:
    """``pair_nilpotent`` for two permutations, without enumerating any group."""
    n = s.n

    def cap_for(p: int) -> int:
        # p-part of n!
        e, q = 0, p
        while q <= n:
            e += n // q
            q *= p
        return p**e

    return _pair_nilpotent_core(
        s,
        t,
        mul=compose,
        one=Permutation(tuple(range(n))),
        order_of=perm_order,
        prime_part=perm_prime_part,
        cap_for=cap_for,
    )


def _all_sylow(G: FiniteGroup, p: int) -> list[Subgroup]:
    target = p ** factorint(G.order).get(p, 0)
    orders = G.element_orders
    p_elems = [i for i in range(G.order) if _is_prime_power(int(orders[i]), p) and i]
    P: set[int] = {0}
    gens: list[int] = []
    while len(P) < target:
        for y in p_elems:
            if y in P:
                continue
            cand = _closure(G, P, gens + [y])
            if len(cand) <= target and all(_is_prime_power(int(orders[c]), p) for c in cand):
                P, gens = cand, gens + [y]
                break
        else:  # pragma: no cover - Sylow's theorem guarantees progress
            raise RuntimeError(f"could not extend a {p}-subgroup of {G.label}")
    t, inv = G.table, G.inverses
    base = np.array(sorted(P))
    conj = np.sort(t[t[:, base], inv[:, None]], axis=1)
    rows = np.unique(conj, axis=0)
    return [Subgroup(G, frozenset(int(v) for v in r)) for r in rows]


def sylow_subgroups(G: FiniteGroup, p: int) -> list[Subgroup]:
    return G.sylow_subgroups(p)


def _sylow_membership(G: FiniteGroup, p: int) -> np.ndarray:
    sylows = G.sylow_subgroups(p)
    m = np.zeros((len(sylows), G.order), dtype=bool)
    for k, P in enumerate(sylows):
        m[k, list(P.members)] = True
    return m


def nilpotent_partners(G: FiniteGroup, x: int) -> np.ndarray:
    """Boolean mask of all ``y`` with ``<x, y>`` nilpotent, computed row-at-once.

    Same criterion as the fast path, with "``<x_p, y_p>`` is a ``p``-group"
    replaced by the equivalent "``x_p`` and ``y_p`` lie in a common Sylow
    ``p``-subgroup".
    """
    t = G.table
    parts = {p: G.prime_part_array(p) for p in G.primes}
    member = _membership_cache(G)
    ok = np.ones(G.order, dtype=bool)
    for p in G.primes:
        xp = int(parts[p][x])
        if xp == 0:
            continue
        for q in G.primes:
            if q != p:
                yq = parts[q]
                ok &= t[xp, yq] == t[yq, xp]
        m = member[p]
        allowed = m[m[:, xp]].any(axis=0)
        ok &= allowed[parts[p]]
    return ok


def _membership_cache(G: FiniteGroup) -> dict[int, np.ndarray]:
    cache = G._membership
    for p in G.primes:
        if p not in cache:
            cache[p] = _sylow_membership(G, p)
    return cache


# ---------------------------------------------------------------------------
# catalog


def builtin_specs(max_order: int = 200) -> list[str]:
    """Spec strings of the built-in test family, all of order at most ``max_order``."""
    specs = ["S3", "S4", "S5", "A4", "A5"]
    specs += [f"D{n}" for n in range(3, max_order // 2 + 1)]
    specs += [f"C{n}" for n in (1, 2, 6, 12)]
    specs += [
        "C2xS3", "C3xS3", "C4xS3", "C5xS3", "C2xC2xS3", "S3xS3", "C2xS4", "C3xS4",
        "C2xA4", "C3xA4", "C4xA4", "C2xA5", "C2xC2xA4", "C2xD4", "C3xD5", "C2xS3xC3",
        "GD(C3xC3)", "GD(C5xC5)", "GD(C3xC3xC3)", "GD(C3xC6)", "GD(C4xC2)", "GD(C12)",
        "SD(C3,C4,inv)", "SD(C5,C4,inv)", "SD(C7,C4,inv)", "SD(C3xC3,C4,inv)",
        "SD(C3,C8,inv)", "SD(C9,C4,inv)", "SD(C5,C8,inv)",
        "SD(C3,S3,sign)", "SD(C5,S3,sign)", "SD(C3,S4,sign)", "SD(C5,S4,sign)",
        "SD(C7,S4,sign)", "SD(C3xC3,S3,sign)", "SD(C4,S3,sign)", "SD(C2xC2,S4,sign)",
    ]
    return [s for s in specs if group_order(s) <= max_order]


def builtin_groups(max_order: int = 200, nonnilpotent_only: bool = False) -> list[FiniteGroup]:
    groups = [make_group(s) for s in builtin_specs(max_order)]
    if nonnilpotent_only:
        groups = [G for G in groups if not is_nilpotent(G)]
    return groups
