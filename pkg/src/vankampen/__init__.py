"""Fundamental groupoids of finite 2-complexes and the Van Kampen coequalizer for
locally sectionable cover maps."""

from .colimits import abelian_invariants, coequalize, coproduct, fingerprint, hom_count, vertex_group
from .complex import (
    CellMap,
    Complex2,
    SectionedCover,
    check_hypothesis,
    cover_to_map,
    fiber_product,
    path_to_base,
    verify_locally_sectionable,
)
from .pi1 import (
    associated_sequence,
    elementary_homotopies,
    evaluate_epsilon,
    induced_functors,
    path_word,
    pi1,
    weigh_path,
)
from .presentation import GroupoidPresentation, PresentationMorphism, Word, apply_morphism, compose, free_reduce
from .vkcheck import VkConfig, crosscheck_section4, decide_equal, random_instance, run_vk

__version__ = "0.1.0"

__all__ = [
    "CellMap", "Complex2", "GroupoidPresentation", "PresentationMorphism", "SectionedCover",
    "VkConfig", "Word", "abelian_invariants", "apply_morphism", "associated_sequence",
    "check_hypothesis", "coequalize", "compose", "coproduct", "cover_to_map",
    "crosscheck_section4", "decide_equal", "elementary_homotopies", "evaluate_epsilon",
    "fiber_product", "fingerprint", "free_reduce", "hom_count", "induced_functors",
    "path_to_base", "path_word", "pi1", "random_instance", "run_vk",
    "verify_locally_sectionable", "vertex_group", "weigh_path",
]
