import random

import pytest

from vankampen.complex import Complex2, cover_to_map
from vankampen.documents import corpus_names, load
from vankampen.pi1 import induced_functors

GOLDEN = ["circle", "circle_double", "torus", "rp2", "klein", "wedge", "figure_eight"]


@pytest.fixture(scope="session")
def corpus():
    return {n: load(n) for n in corpus_names()}


@pytest.fixture(scope="session")
def pipelines(corpus):
    """name -> (instance, diagram, coequalizer)."""
    out = {}
    for n, inst in corpus.items():
        d = induced_functors(inst.cover, inst.base_set)
        out[n] = (inst, d, d.coequalizer())
    return out


def circle():
    return Complex2(("v0", "v1"), {"a": ("v0", "v1"), "b": ("v1", "v0")})


def two_arc_cover():
    B = circle()
    return cover_to_map(B, [B.subcomplex(["v0", "v1"], ["a"]), B.subcomplex(["v0", "v1"], ["b"])])


def torus():
    return Complex2(("x",), {"a": ("x", "x"), "b": ("x", "x")},
                    {"F": (("a", 1), ("b", 1), ("a", -1), ("b", -1))})


@pytest.fixture
def rng():
    return random.Random(12345)
