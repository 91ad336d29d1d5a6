import random

import pytest

from vankampen import tietze
from vankampen.colimits import (
    abelian_invariants,
    coequalize,
    coproduct,
    factor_through,
    fingerprint,
    group_words,
    hom_count,
    simplify_presentation,
    vertex_group,
)
from vankampen.errors import ContractError
from vankampen.groups import count_homomorphisms, group_by_name, small_groups
from vankampen.pi1 import pi1
from vankampen.presentation import GroupoidPresentation, PresentationMorphism, one_object
from vankampen.smith import invariants_of
from vankampen.vkcheck import Battery

from conftest import GOLDEN

INTERVAL = GroupoidPresentation((0, 1), {"i": (0, 1)})


def test_coproduct_examples():
    empty, inj = coproduct([])
    assert empty.objects == () and not empty.arrows and inj == []
    single, (j,) = coproduct([INTERVAL])
    assert len(single.objects) == 2 and j(INTERVAL.generator("i")).letters == (((0, "i"), 1),)
    double, _ = coproduct([INTERVAL, INTERVAL])
    assert (len(double.objects), len(double.arrows), len(double.relators)) == (4, 2, 0)


def test_interval_coequalizer_is_integers():
    discrete = GroupoidPresentation((0, 1), {})
    alpha = PresentationMorphism(discrete, INTERVAL, {0: 0, 1: 0}, {})
    beta = PresentationMorphism(discrete, INTERVAL, {0: 1, 1: 1}, {})
    res = coequalize(discrete, INTERVAL, alpha, beta)
    Q = res.presentation
    assert len(Q.objects) == 1 and len(Q.arrows) == 1 and not Q.relators
    assert abelian_invariants(Q).as_tuple() == (1, [])


def test_coequalizer_of_equal_maps():
    T = one_object("o", ["a", "b"], [["a", "b", ("a", -1), ("b", -1)]])
    src = one_object("s", ["g"])
    m = PresentationMorphism(src, T, {"s": "o"}, {"g": T.word(["a", "b"])})
    res = coequalize(src, T, m, m)
    assert res.presentation.relators == T.relators
    assert set(res.presentation.arrows) == set(T.arrows)


def test_coequalize_contract():
    src = one_object("s", ["g"])
    T = one_object("o", ["a"])
    m = PresentationMorphism(src, T, {"s": "o"}, {"g": T.generator("a")})
    with pytest.raises(ContractError):
        coequalize(T, T, m, m)


def test_vertex_group_examples():
    arrow = GroupoidPresentation(("x", "y"), {"f": ("x", "y")})
    g = vertex_group(arrow, "x")
    assert not g.arrows
    loop = one_object("o", ["a"])
    assert abelian_invariants(vertex_group(loop, "o")).as_tuple() == (1, [])
    with pytest.raises(KeyError):
        vertex_group(loop, "nope")


def test_torus_vertex_group(corpus):
    P = pi1(corpus["torus"].complex, {"x"}).presentation
    g = vertex_group(P, "x")
    assert (len(g.arrows), len(g.relators)) == (2, 1)
    assert abelian_invariants(g).as_tuple() == (2, [])


def test_abelian_invariants_examples():
    assert abelian_invariants(one_object("o", ["a"], [["a", "a"]])).as_tuple() == (0, [2])
    assert abelian_invariants(one_object("o", ["a", "b"])).as_tuple() == (2, [])
    klein = one_object("o", ["a", "b"], [["a", "b", "a", ("b", -1)]])
    assert abelian_invariants(klein).as_tuple() == (1, [2])
    with pytest.raises(ContractError):
        abelian_invariants(INTERVAL)


def test_hom_count_examples():
    Z = one_object("o", ["a"])
    assert hom_count(Z, group_by_name("Z5")) == 5
    rp2 = one_object("o", ["a"], [["a", "a"]])
    assert hom_count(rp2, group_by_name("Z3")) == 1
    assert hom_count(rp2, group_by_name("D3")) == 4


def test_simplify_presentation_is_iso():
    g = one_object("o", ["a", "b", "c"], [["c", ("b", -1), ("a", -1)], ["a", "a"]])
    s, iso = simplify_presentation(g)
    assert len(s.arrows) == 2
    for u, v in g.relators:
        assert Battery(s).decide(iso(u), iso(v)).kind == "equal"
    assert fingerprint(g, small_groups(6)) == fingerprint(s, small_groups(6))


@pytest.mark.parametrize("name", GOLDEN)
def test_coequalizer_relations_hold(pipelines, name):
    _, d, q = pipelines[name]
    bat = Battery(q.presentation)
    for g in d.lower.presentation.sorted_arrows():
        u = q.quotient_map(d.alpha.arrow_map[g])
        v = q.quotient_map(d.beta.arrow_map[g])
        assert bat.decide(u, v).kind == "equal"
    # surjective on objects and generators
    assert set(q.quotient_map.object_map.values()) == set(q.presentation.objects)
    hit = {w.letters[0][0] for w in q.quotient_map.arrow_map.values() if len(w.letters) == 1}
    assert hit == set(q.presentation.arrows)


@pytest.mark.parametrize("name", GOLDEN)
def test_invariants_stable_under_tietze_moves(pipelines, name):
    _, d, _ = pipelines[name]
    B = d.target.presentation
    g = vertex_group(B, B.objects[0])
    gens, rels = group_words(g)
    n = len(gens)
    base_inv = invariants_of(tietze.exponent_matrix(n, rels), n)
    groups = [group_by_name(x) for x in ("Z2", "Z3", "Z2xZ2", "D3")]
    base_counts = [count_homomorphisms(n, rels, G) for G in groups]
    rng = random.Random(name)
    for _ in range(30):
        m, moved = tietze.random_tietze_moves(n, rels, rng, moves=rng.randint(1, 5))
        assert invariants_of(tietze.exponent_matrix(m, moved), m) == base_inv
        assert [count_homomorphisms(m, moved, G) for G in groups] == base_counts


def test_factor_through_rejects_non_coequalizing():
    discrete = GroupoidPresentation((0,), {})
    T = one_object("o", ["a"], [["a", "a"]])
    res = coequalize(discrete, T, PresentationMorphism(discrete, T, {0: "o"}, {}),
                     PresentationMorphism(discrete, T, {0: "o"}, {}))
    Z3 = group_by_name("Z3")
    assert factor_through(res, Z3, {"a": 0}) == {"a": 0}
    with pytest.raises(ContractError):
        factor_through(res, Z3, {"a": 1})
