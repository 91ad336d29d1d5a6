import pytest
from hypothesis import given, settings, strategies as st

import importlib

pi1_module = importlib.import_module("vankampen.pi1")
from vankampen.colimits import CoequalizerResult
from vankampen.complex import check_hypothesis
from vankampen.errors import ContractError
from vankampen.presentation import GroupoidPresentation, Word
from vankampen.vkcheck import (
    Battery,
    Bounds,
    VkConfig,
    crosscheck_section4,
    decide_equal,
    random_instance,
    run_vk,
)

from conftest import GOLDEN, two_arc_cover


def one_object(gens, relators=()):
    rels = tuple((Word(tuple(r), "o", "o"), Word((), "o", "o")) for r in relators)
    return GroupoidPresentation(("o",), {g: ("o", "o") for g in gens}, rels)


def w(*letters):
    return Word(tuple((a, s) for a, s in letters), "o", "o")


E = w()


def test_free_equality():
    g = one_object(["a"])
    v = decide_equal(g, w(("a", 1), ("a", -1)), E)
    assert v.kind == "equal" and v.method == "free"


def test_abelianization_separates():
    g = one_object(["a"])
    v = decide_equal(g, w(("a", 1)), E)
    assert v.kind == "distinct" and v.method == "abelianization"
    assert v.witness.check()


def test_completion_equal():
    g = one_object(["a"], [[("a", 1), ("a", 1)]])
    v = decide_equal(g, w(("a", 1), ("a", 1)), E)
    assert v.kind == "equal" and v.method == "completion"


def test_normal_forms_separate_commutator():
    g = one_object(["a", "b"])
    v = decide_equal(g, w(("a", 1), ("b", 1), ("a", -1), ("b", -1)), E)
    assert v.kind == "distinct" and v.method == "normal-forms"


def test_homomorphism_separates_when_completion_is_starved():
    # the symmetric group on three letters; completion is given no room
    rels = [[("a", 1)] * 2, [("b", 1)] * 2, [("a", 1), ("b", 1)] * 3]
    g = one_object(["a", "b"], rels)
    cfg = VkConfig(kb_rules=1, kb_seconds=0.05)
    v = Battery(g, cfg).decide(w(("a", 1), ("b", 1)), w(("b", 1), ("a", 1)))
    assert v.kind == "distinct" and v.method == "homomorphism"
    assert v.witness.check()


def test_relator_conjugate_when_completion_is_starved():
    rels = [[("a", 1), ("b", 1), ("a", -1), ("b", -1), ("a", 1), ("a", 1)]]
    g = one_object(["a", "b"], rels)
    cfg = VkConfig(kb_rules=1, kb_seconds=0.05)
    # a cyclic rotation of the relator
    v = Battery(g, cfg).decide(w(("b", 1), ("a", -1), ("b", -1), ("a", 1), ("a", 1), ("a", 1)), E)
    assert v.kind == "equal"


def test_non_parallel_words_rejected():
    g = GroupoidPresentation(("x", "y"), {"e": ("x", "y")})
    with pytest.raises(ContractError):
        decide_equal(g, Word((("e", 1),), "x", "y"), Word((), "x", "x"))


def test_groupoid_words_decided_in_vertex_group():
    g = GroupoidPresentation(("x", "y"), {"e": ("x", "y"), "f": ("y", "x")})
    loop = Word((("e", 1), ("f", 1)), "x", "x")
    assert decide_equal(g, loop, Word((), "x", "x")).kind == "distinct"
    back = Word((("e", 1), ("e", -1)), "x", "x")
    assert decide_equal(g, back, Word((), "x", "x")).kind == "equal"


@pytest.mark.parametrize("name", GOLDEN + ["point"])
def test_run_vk_corpus(corpus, name):
    inst = corpus[name]
    _, _, rep = run_vk(inst.cover, inst.base_set)
    assert rep.status == "pass", rep.message
    assert rep.fork_sound and rep.objects_bijective
    assert rep.round_trips.distinct == 0 and rep.well_defined.distinct == 0
    for fq, fb in rep.fingerprints.values():
        assert fq == fb


def test_run_vk_hypothesis_failure():
    c = two_arc_cover()
    d, q, rep = run_vk(c, {"v0"})
    assert d is None and q is None
    assert rep.status == "hypothesis"
    assert rep.failing_components


def test_split_epimorphism_uses_cheap_methods(corpus):
    # one-piece covers have a global section
    for name in ("torus", "klein", "rp2"):
        inst = corpus[name]
        _, _, rep = run_vk(inst.cover, inst.base_set)
        assert rep.round_trips.unknown == 0
        assert set(rep.methods) <= {"free", "completion", "relator"}


def test_dropping_relators_is_detected(corpus, monkeypatch):
    inst = corpus["torus"]
    real = pi1_module.coequalize

    def lossy(*args):
        q = real(*args)
        g = q.presentation
        return CoequalizerResult(GroupoidPresentation(g.objects, g.arrows, ()), q.quotient_map, q.classes)

    monkeypatch.setattr(pi1_module, "coequalize", lossy)
    _, _, rep = run_vk(inst.cover, inst.base_set)
    assert rep.status == "mismatch"
    assert "fingerprints differ" in rep.message


def test_random_instance_deterministic():
    a = random_instance(17)
    b = random_instance(17)
    assert a[0] == b[0] and a[2] == b[2]
    assert list(a[1].pieces) == list(b[1].pieces)


def test_random_instance_degenerate_bounds():
    for seed in range(5):
        B, c, S = random_instance(seed, Bounds(1, 0, 0, 1))
        assert B.counts() == (1, 0, 0, 1)
        assert S == B.vertex_set


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_random_instances_satisfy_hypothesis_and_pass(seed):
    B, c, S = random_instance(seed)
    assert check_hypothesis(c, S).ok
    _, _, rep = run_vk(c, S)
    assert rep.status == "pass", rep.message
    assert rep.round_trips.distinct == 0


def test_crosscheck_two_arc():
    c = two_arc_cover()
    rep = crosscheck_section4(c, {"v0", "v1"})
    assert rep.verdict == "AGREE"
    assert set(rep.pipelines) == {"given", "coproduct", "pullback"}


def test_crosscheck_absolute_with_global_section(corpus):
    rep = crosscheck_section4(corpus["torus"].cover, {"x"})
    assert rep.verdict == "AGREE (absolute)"


def test_crosscheck_falls_back_to_all_vertices(corpus):
    inst = corpus["circle_double"]
    rep = crosscheck_section4(inst.cover, inst.base_set)
    assert rep.ok
    assert rep.notes
