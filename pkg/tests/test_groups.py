import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vankampen.errors import BudgetError
from vankampen.groups import (
    brute_force_count,
    count_homomorphisms,
    cyclic,
    dihedral,
    group_by_name,
    iter_homomorphisms,
    small_groups,
)

from oracles import hom_count_perm

# number of groups of each order 1..12
GROUP_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2, 11: 1, 12: 5}


def test_library_is_valid_and_complete():
    groups = small_groups(12)
    for G in groups:
        assert G.is_group(), G.name
    by_order = {}
    for G in groups:
        by_order[G.order] = by_order.get(G.order, 0) + 1
    assert by_order == GROUP_COUNTS
    assert len(small_groups(8)) == 14
    with pytest.raises(ValueError):
        small_groups(13)


def _profile(G):
    """Element-order multiset plus commutativity: enough to separate orders <= 12."""
    orders = []
    for a in range(G.order):
        x, k = a, 1
        while x != G.identity:
            x, k = G.mul(x, a), k + 1
        orders.append(k)
    abelian = all(G.mul(a, b) == G.mul(b, a) for a in range(G.order) for b in range(G.order))
    return G.order, tuple(sorted(orders)), abelian


def test_library_pairwise_non_isomorphic():
    profiles = [_profile(G) for G in small_groups(12)]
    # Z4xZ2 vs D4 vs Q8 and friends are separated by order statistics
    assert len(set(profiles)) == len(profiles)


@pytest.mark.parametrize("name,ngens,rels,expected", [
    ("Z5", 1, [], 5),
    ("Z3", 1, [(1, 1)], 1),
    ("D3", 1, [(1, 1)], 4),
])
def test_hom_count_examples(name, ngens, rels, expected):
    assert count_homomorphisms(ngens, rels, group_by_name(name)) == expected


def test_hom_count_against_permutation_oracle():
    # <a | a^2> into S3: brute force over sympy's permutation group
    assert hom_count_perm(1, [(1, 1)], "S3") == 4
    torus = [(1, 2, -1, -2)]
    assert count_homomorphisms(2, torus, group_by_name("D3")) == hom_count_perm(2, torus, "S3")
    assert count_homomorphisms(2, torus, group_by_name("D4")) == hom_count_perm(2, torus, "D4")
    klein = [(1, 2, 1, -2)]
    assert count_homomorphisms(2, klein, group_by_name("D4")) == hom_count_perm(2, klein, "D4")


relator_lists = st.lists(
    st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), min_size=1, max_size=6).map(tuple),
    max_size=3,
)


@settings(max_examples=60)
@given(relator_lists, st.sampled_from(["Z2", "Z3", "Z2xZ2", "D3", "Q8"]))
def test_hom_count_matches_brute_force(rels, name):
    G = group_by_name(name)
    assert count_homomorphisms(3, rels, G) == brute_force_count(3, rels, G)


def test_iter_homomorphisms_are_homs():
    G = dihedral(4)
    rels = [(1, 1), (2, 2, 2, 2)]
    homs = list(iter_homomorphisms(3, rels, G))
    assert len(homs) == count_homomorphisms(3, rels, G)
    for a in homs:
        assert all(G.evaluate(r, a) == G.identity for r in rels)
    sampled = next(iter_homomorphisms(3, rels, G, rng=random.Random(1)))
    assert all(G.evaluate(r, sampled) == G.identity for r in rels)


def test_budget_error():
    rels = [(k, k + 1, -k, -(k + 1)) for k in range(1, 6)]
    with pytest.raises(BudgetError):
        count_homomorphisms(6, rels, group_by_name("Q8"), budget=50)


def test_cyclic_table():
    Z = cyclic(6)
    for a, b in itertools.product(range(6), repeat=2):
        assert Z.mul(a, b) == (a + b) % 6
