import math
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy.combinatorics import Permutation as SymPerm

from nilgraph.perm import (
    CycleType,
    Permutation,
    all_permutations,
    centralizer_order,
    compose,
    cycle_len,
    cycle_type,
    format_cycles,
    from_images,
    identity,
    inverse,
    order,
    parse_cycles,
    prime_part,
    support,
)


@st.composite
def perms(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    return Permutation(tuple(draw(st.permutations(range(n)))))


@st.composite
def perm_pairs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    a = draw(st.permutations(range(n)))
    b = draw(st.permutations(range(n)))
    return Permutation(tuple(a)), Permutation(tuple(b))


def test_rejects_non_bijection():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))
    with pytest.raises(ValueError):
        Permutation((0, 3))


def test_compose_applies_right_factor_first():
    a = parse_cycles("(1 2)", 3)
    b = parse_cycles("(2 3)", 3)
    assert compose(a, b)(2) == 3
    assert compose(a, b)(3) == 1
    assert format_cycles(compose(a, b)) == "(1 2 3)"


def test_degree_mismatch():
    with pytest.raises(ValueError):
        compose(identity(2), identity(3))


@given(perm_pairs())
def test_compose_matches_sympy(pq):
    p, q = pq
    ours = compose(p, q)
    theirs = SymPerm(list(q.images)) * SymPerm(list(p.images))  # sympy applies left first
    assert list(ours.images) == theirs.array_form


@given(perms())
def test_order_and_cycle_structure_match_sympy(p):
    sp = SymPerm(list(p.images))
    assert order(p) == sp.order()
    assert Counter(cycle_type(p).parts) == Counter(
        {k: v for k, v in sp.cycle_structure.items()}
    )
    assert p.sign() == (-1 if sp.is_odd else 1)


@given(perms())
def test_inverse_and_powers(p):
    assert compose(p, inverse(p)).is_identity()
    assert (p ** order(p)).is_identity()
    assert p**-1 == inverse(p)
    assert p**3 == p * p * p


@given(perms())
def test_cycle_notation_round_trip(p):
    assert parse_cycles(format_cycles(p), p.n) == p


@given(perms(), st.data())
def test_cycle_len_is_length_of_containing_cycle(p, data):
    i = data.draw(st.integers(1, p.n))
    k = cycle_len(p, i)
    # i returns to itself after exactly k steps
    x, steps = i, 0
    while True:
        x = p(x)
        steps += 1
        if x == i:
            break
    assert steps == k


@given(perms(), st.sampled_from([2, 3, 5, 7]))
def test_prime_part_is_power_with_prime_power_order(p, q):
    pp = prime_part(p, q)
    o = order(pp)
    while o % q == 0:
        o //= q
    assert o == 1
    assert order(pp) * order(p ** order(pp)) == order(p)


@given(perms())
def test_prime_components_commute_and_multiply_back(p):
    primes = [q for q in (2, 3, 5, 7) if order(p) % q == 0]
    parts = [prime_part(p, q) for q in primes]
    total = identity(p.n)
    for a in parts:
        for b in parts:
            assert compose(a, b) == compose(b, a)
        total = compose(total, a)
    assert total == p


def test_prime_part_examples():
    g = parse_cycles("(1 2)(3 4 5)", 5)
    assert prime_part(g, 2) == parse_cycles("(1 2)", 5)
    assert prime_part(g, 3) == parse_cycles("(3 4 5)", 5)
    assert prime_part(g, 5).is_identity()


def test_prime_part_rejects_composite():
    with pytest.raises(ValueError):
        prime_part(identity(3), 4)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_centralizer_order_by_class_size(n):
    classes = Counter(cycle_type(p) for p in all_permutations(n))
    for t, size in classes.items():
        assert size * centralizer_order(t) == math.factorial(n)


def test_representative_and_counts():
    t = CycleType.from_counts({2: 2, 3: 1, 1: 2})
    assert t.parts == (3, 2, 2, 1, 1)
    assert t.n == 9
    assert cycle_type(t.representative()) == t
    assert format_cycles(t.representative()) == "(1 2 3)(4 5)(6 7)"


@pytest.mark.parametrize(
    "text,n",
    [("(1 2)(2 3)", 3), ("(1 2", 3), ("(0 1)", 2), ("(1 4)", 3), ("1 2", 2), ("(1 a)", 2)],
)
def test_parse_rejects_malformed(text, n):
    with pytest.raises(ValueError):
        parse_cycles(text, n)


def test_identity_formatting():
    assert format_cycles(identity(4)) == "()"
    assert parse_cycles("()", 4) == identity(4)
    assert support(parse_cycles("(2 4)", 5)) == {2, 4}
    assert from_images([2, 1, 3]) == parse_cycles("(1 2)", 3)


def test_cycle_len_out_of_range():
    with pytest.raises(IndexError):
        cycle_len(identity(3), 4)


def test_enumeration_count():
    assert len(set(all_permutations(5))) == 120
