import itertools
import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nilgraph.checks import all_graphs
from nilgraph.embedder import (
    LayeredElement,
    Tower,
    commutator,
    commutator_stability,
    dense,
    embed_graph,
    identity,
    inverse,
    is_identity,
    level_sums,
    materialize,
    multiply,
    power,
    realized_in_symmetric,
    realized_subgraph,
    symmetric_embedding,
    verify_embedding,
    witness_ids,
)
from nilgraph.graph import Graph, build_nilgraph, induced_subgraph
from nilgraph.group import BudgetError, commutator_subgroup, is_nilpotent


def graph(k, edges):
    return Graph.from_edges([str(i + 1) for i in range(k)], edges)


EDGE = graph(2, [(0, 1)])
NO_EDGE = graph(2, [])


def _naive_mul(a, b, tower):
    """Dense semidirect product law, coordinates rotated one by one."""
    sums = [sum(v) % lv.p for v, lv in zip(a, tower.levels)]
    out = []
    for va, vb, lv in zip(a, b, tower.levels):
        s = 0
        for r, step in zip(lv.neighbors, lv.steps):
            s += sums[r - 1] * step
        s %= lv.dim
        out.append(tuple((va[j] + vb[(j - s) % lv.dim]) % lv.p for j in range(lv.dim)))
    return tuple(out)


def test_single_vertex():
    tower, ws = embed_graph(graph(1, []))
    assert tower.primes == [2] and tower.levels[0].dim == 1 and tower.order == 2
    G = materialize(tower)
    assert G.order == 2 and G.is_abelian()


def test_one_edge_tower():
    tower, ws = embed_graph(EDGE)
    lv = tower.levels[1]
    assert (lv.p, lv.dim, lv.witness()) == (5, 2, [1, 2])
    assert tower.order == 50
    c = commutator(ws[0], ws[1], tower)
    assert dense(c, tower) == ((0,), (4, 1))  # (-1, 1) mod 5


def test_no_edge_tower():
    tower, ws = embed_graph(NO_EDGE)
    assert tower.primes == [2, 3] and tower.order == 6
    assert is_identity(commutator(ws[0], ws[1], tower), tower)
    G = materialize(tower)
    assert G.is_abelian() and build_nilgraph(G).n_edges == 0


def test_edgeless_three_is_direct_product():
    tower, ws = embed_graph(graph(3, []))
    assert tower.primes == [2, 3, 5] and tower.order == 30
    assert all(not lv.neighbors for lv in tower.levels)


@pytest.mark.parametrize(
    "edges,nontrivial",
    [([(0, 1), (1, 2), (0, 2)], {(1, 2), (1, 3), (2, 3)}), ([(0, 1), (1, 2)], {(1, 2), (2, 3)})],
)
def test_transcripts(edges, nontrivial):
    X = graph(3, edges)
    tower, ws = embed_graph(X)
    tr = verify_embedding(X, tower, ws)
    assert tr.ok
    assert {(c.i, c.j) for c in tr.commutators if not c.trivial} == nontrivial
    data = json.loads(tr.to_json())
    assert data["ok"] and len(data["commutators"]) == 3
    assert tr.to_text().endswith("verified")


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_all_small_graphs_verify(k):
    for X in all_graphs(k):
        tower, ws = embed_graph(X)
        assert verify_embedding(X, tower, ws).ok
        assert len(set(tower.primes)) == k
        for lv in tower.levels[1:]:
            assert lv.p > lv.dim + 1
            w = lv.witness()
            assert len(set(w)) == len(w) and sum(w) % lv.p != 0


def test_group_law_against_dense_oracle():
    X = graph(3, [(0, 1), (0, 2)])
    tower, ws = embed_graph(X)
    assert tower.order == 2450
    G = materialize(tower)
    rng = np.random.default_rng(0)
    for a, b in rng.integers(0, G.order, size=(300, 2)):
        ea, eb = G.elements[a], G.elements[b]
        assert G.index[_naive_mul(ea, eb, tower)] == G.table[a, b]
    # the symbolic law agrees with the dense one on words in the witnesses
    words = [identity(tower)]
    for _ in range(40):
        x = ws[int(rng.integers(3))]
        words.append(multiply(words[-1], x if rng.random() < 0.5 else inverse(x, tower), tower))
    gid = 0
    for prev, cur in zip(words, words[1:]):
        step = multiply(inverse(prev, tower), cur, tower)
        gid = int(G.table[gid, G.index[dense(step, tower)]])
        assert G.elements[gid] == dense(cur, tower)


@given(st.lists(st.tuples(st.integers(0, 2), st.integers(-3, 3)), max_size=8))
def test_group_axioms_on_words(word):
    tower, ws = embed_graph(graph(3, [(0, 1), (1, 2), (0, 2)]))
    e = identity(tower)
    a = e
    for i, k in word:
        a = multiply(a, power(ws[i], k, tower), tower)
    assert multiply(a, e, tower) == a == multiply(e, a, tower)
    assert is_identity(multiply(a, inverse(a, tower), tower), tower)
    assert is_identity(commutator(a, a, tower), tower)
    b = multiply(ws[1], ws[2], tower)
    lhs = multiply(multiply(a, b, tower), ws[0], tower)
    rhs = multiply(a, multiply(b, ws[0], tower), tower)
    assert dense(lhs, tower) == dense(rhs, tower)


@given(st.lists(st.integers(0, 3), min_size=1, max_size=10), st.lists(st.integers(0, 3), min_size=1, max_size=10))
def test_level_sums_are_homomorphisms(u, v):
    tower, ws = embed_graph(graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)]))

    def word(idx):
        out = identity(tower)
        for i in idx:
            out = multiply(out, ws[i], tower)
        return out

    a, b = word(u), word(v)
    ab = level_sums(multiply(a, b, tower), tower)
    assert ab == [(x + y) % lv.p for x, y, lv in zip(level_sums(a, tower), level_sums(b, tower), tower.levels)]
    assert not any(level_sums(commutator(a, b, tower), tower))


def test_shape_mismatch():
    t1, w1 = embed_graph(graph(1, []))
    t2, w2 = embed_graph(NO_EDGE)
    with pytest.raises(ValueError):
        multiply(w2[0], w1[0], t2)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_materialized_graphs_reproduce_input(k):
    for X in all_graphs(k):
        tower, ws = embed_graph(X)
        if tower.order > 10**4:
            with pytest.raises(BudgetError):
                materialize(tower, 10**4)
            continue
        assert realized_subgraph(X).same_adjacency(X)


def test_one_edge_end_to_end():
    tower, ws = embed_graph(EDGE)
    G = materialize(tower)
    assert G.order == 50 and not is_nilpotent(G)
    ids = witness_ids(G, tower, ws)
    assert induced_subgraph(build_nilgraph(G), ids).edges() == [(0, 1)]


@pytest.mark.parametrize("X", [graph(1, []), NO_EDGE])
def test_symmetric_reembedding(X):
    Y = realized_in_symmetric(X)
    assert Y is not None and Y.same_adjacency(X)


def test_symmetric_reembedding_over_budget():
    tower, ws = embed_graph(EDGE)
    G = materialize(tower)
    assert symmetric_embedding(G, witness_ids(G, tower, ws), budget=10**4) is None


@pytest.mark.parametrize("edges", [[], [(0, 1)], [(0, 2)], [(1, 2)], [(0, 1), (0, 2)], [(0, 1), (1, 2)]])
def test_commutator_subgroup_stability(edges):
    tower, ws = embed_graph(graph(3, edges))
    rows = commutator_stability(tower, ws)
    assert rows and all(ok for *_, ok in rows)


def test_witness_outside_commutator_subgroup_explicitly():
    tower, ws = embed_graph(EDGE)
    G = materialize(tower)
    D = commutator_subgroup(G)
    assert all(i not in D for i in witness_ids(G, tower, ws))
    # every commutator has zero coordinate sums
    sums = [tuple(sum(v) % lv.p for v, lv in zip(G.elements[d], tower.levels)) for d in D.members]
    assert set(sums) == {(0, 0)}


def test_tower_json_round_trip():
    tower, _ = embed_graph(graph(4, [(0, 1), (1, 2), (2, 3)]))
    again = Tower.from_json(tower.to_json())
    assert again == tower
    data = json.loads(tower.to_json())
    lv = data["levels"][2]
    assert lv["action"][0]["level"] == 2 and sorted(lv["action"][0]["permutation"]) == list(range(lv["alpha"]))


def test_k6_complete_graph_transcript():
    X = graph(6, list(itertools.combinations(range(6), 2)))
    tower, ws = embed_graph(X)
    assert tower.levels[-1].dim > 10**8
    assert verify_embedding(X, tower, ws).ok


def test_layered_element_is_hashable_value():
    tower, ws = embed_graph(EDGE)
    assert isinstance(ws[0], LayeredElement)
    assert multiply(ws[0], ws[0], tower) == identity(tower)
