"""Finitely presented groupoids, words over generating arrows, and functors between them.

Words are stored in *path order*: the first letter is traversed first. A letter
is a pair ``(arrow_id, exponent)`` with exponent ``+1`` or ``-1``; an inverse
letter runs from the arrow's target back to its source.

Composition follows the categorical convention, ``compose(w1, w2)`` meaning
"``w2`` first, then ``w1``", so its letters are ``w2.letters + w1.letters``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import CompositionError, StructuralError

Letter = tuple  # (arrow id, +1 | -1)


@lru_cache(maxsize=1 << 18)
def sort_key(x):
    """Total order on the mixed int/str/tuple ids used throughout the package."""
    if isinstance(x, tuple):
        return (2, tuple(sort_key(i) for i in x))
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    return (1, str(x))


def format_id(x) -> str:
    if isinstance(x, tuple):
        return "(" + ",".join(format_id(i) for i in x) + ")"
    return str(x)


def invert_letters(letters: Sequence[Letter]) -> tuple:
    return tuple((a, -e) for a, e in reversed(letters))


def reduce_letters(letters: Iterable[Letter]) -> tuple:
    out: list = []
    for a, e in letters:
        if out and out[-1][0] == a and out[-1][1] == -e:
            out.pop()
        else:
            out.append((a, e))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    letters: tuple
    source: Hashable
    target: Hashable

    def __post_init__(self):
        if not self.letters and self.source != self.target:
            raise StructuralError(
                f"empty word must be an identity, got {self.source!r} -> {self.target!r}"
            )
        for letter in self.letters:
            if len(letter) != 2 or letter[1] not in (1, -1):
                raise StructuralError(f"bad letter {letter!r}")

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def inverse(self) -> "Word":
        return Word(invert_letters(self.letters), self.target, self.source)

    def __str__(self):
        if not self.letters:
            return f"1_{format_id(self.source)}"
        return " ".join(
            format_id(a) if e == 1 else f"{format_id(a)}^-1" for a, e in self.letters
        )


def identity(obj) -> Word:
    return Word((), obj, obj)


def free_reduce(w: Word, within: "GroupoidPresentation | None" = None) -> Word:
    """Cancel adjacent letter/inverse pairs; endpoints are preserved.

    If ``within`` is given the word is first checked for composability there.
    """
    if within is not None:
        within.check_word(w)
    return Word(reduce_letters(w.letters), w.source, w.target)


def invert(w: Word) -> Word:
    return w.inverse()


def compose(w1: Word, w2: Word) -> Word:
    """``w1 . w2``: traverse ``w2`` and then ``w1``; the result is freely reduced."""
    if w2.target != w1.source:
        raise CompositionError(
            f"cannot compose: {w2} ends at {w2.target!r} but {w1} starts at {w1.source!r}"
        )
    return Word(reduce_letters(w2.letters + w1.letters), w2.source, w1.target)


def compose_all(words: Sequence[Word]) -> Word:
    """Compose ``words[0] . words[1] . ... . words[-1]`` (last one acts first)."""
    if not words:
        raise CompositionError("empty composite has no object")
    out = words[-1]
    for w in reversed(words[:-1]):
        out = compose(w, out)
    return out


@dataclass(frozen=True)
class GroupoidPresentation:
    objects: tuple
    arrows: Mapping = field(default_factory=dict)  # id -> (source, target)
    relators: tuple = ()  # pairs (Word, Word), parallel

    def __post_init__(self):
        objs = tuple(self.objects)
        object.__setattr__(self, "objects", objs)
        object.__setattr__(self, "arrows", dict(self.arrows))
        object.__setattr__(self, "relators", tuple(tuple(r) for r in self.relators))
        if len(set(objs)) != len(objs):
            raise StructuralError("duplicate object ids")
        objset = set(objs)
        for a, ends in self.arrows.items():
            if len(ends) != 2 or ends[0] not in objset or ends[1] not in objset:
                raise StructuralError(f"arrow {a!r} has endpoints outside the objects: {ends!r}")
        for rel in self.relators:
            if len(rel) != 2:
                raise StructuralError(f"relator must be a pair of words, got {rel!r}")
            u, v = rel
            self.check_word(u)
            self.check_word(v)
            if (u.source, u.target) != (v.source, v.target):
                raise StructuralError(f"relator words are not parallel: {u} vs {v}")

    # -- words ---------------------------------------------------------------

    def letter_ends(self, letter: Letter) -> tuple:
        a, e = letter
        try:
            s, t = self.arrows[a]
        except KeyError:
            raise StructuralError(f"unknown arrow {a!r}") from None
        return (s, t) if e == 1 else (t, s)

    def check_word(self, w: Word) -> None:
        if w.source not in self.object_set:
            raise StructuralError(f"word source {w.source!r} is not an object")
        here = w.source
        for i, letter in enumerate(w.letters):
            s, t = self.letter_ends(letter)
            if s != here:
                raise StructuralError(
                    f"letter {i} ({format_id(letter[0])}^{letter[1]}) starts at {s!r}, expected {here!r}"
                )
            here = t
        if here != w.target:
            raise StructuralError(f"word ends at {here!r}, declared target {w.target!r}")

    @property
    def object_set(self) -> frozenset:
        cached = self.__dict__.get("_objset")
        if cached is None:
            cached = frozenset(self.objects)
            object.__setattr__(self, "_objset", cached)
        return cached

    def word(self, letters: Iterable, source=None, reduce: bool = True) -> Word:
        """Build and validate a word from ``(arrow, exponent)`` pairs.

        A bare string letter is shorthand for that arrow with exponent +1.
        """
        norm = tuple((l, 1) if isinstance(l, str) else (l[0], l[1]) for l in letters)
        if not norm:
            if source is None:
                raise StructuralError("empty word needs an explicit source object")
            return identity(source)
        s0 = self.letter_ends(norm[0])[0]
        if source is not None and source != s0:
            raise StructuralError(f"word starts at {s0!r}, not {source!r}")
        here = s0
        for i, letter in enumerate(norm):
            s, t = self.letter_ends(letter)
            if s != here:
                raise StructuralError(f"letters {i - 1} and {i} do not compose")
            here = t
        if reduce:
            norm = reduce_letters(norm)
        return Word(norm, s0, here)

    def generator(self, a) -> Word:
        s, t = self.arrows[a]
        return Word(((a, 1),), s, t)

    def identity(self, obj) -> Word:
        if obj not in self.object_set:
            raise StructuralError(f"{obj!r} is not an object")
        return identity(obj)

    def sorted_arrows(self) -> list:
        return sorted(self.arrows, key=sort_key)

    def swapped(self) -> "GroupoidPresentation":
        """Same presentation with every relator pair written the other way round."""
        return GroupoidPresentation(self.objects, self.arrows, tuple((v, u) for u, v in self.relators))

    def describe(self) -> str:
        lines = [f"objects ({len(self.objects)}): " + ", ".join(format_id(o) for o in self.objects)]
        lines.append(f"generators ({len(self.arrows)}):")
        for a in self.sorted_arrows():
            s, t = self.arrows[a]
            lines.append(f"  {format_id(a)}: {format_id(s)} -> {format_id(t)}")
        lines.append(f"relators ({len(self.relators)}):")
        for u, v in self.relators:
            lines.append(f"  {u} = {v}")
        return "\n".join(lines)


def one_object(obj, generators: Iterable, relators: Iterable = ()) -> GroupoidPresentation:
    """Group presentation as a one-object groupoid; relators given as loops (letter lists)."""
    gens = list(generators)
    arrows = {g: (obj, obj) for g in gens}
    p = GroupoidPresentation((obj,), arrows, ())
    rels = []
    for r in relators:
        if isinstance(r, tuple) and len(r) == 2 and isinstance(r[0], Word):
            rels.append(r)
        else:
            rels.append((p.word(r, source=obj), identity(obj)))
    return GroupoidPresentation((obj,), arrows, tuple(rels))


@dataclass(frozen=True)
class PresentationMorphism:
    source: GroupoidPresentation
    target: GroupoidPresentation
    object_map: Mapping
    arrow_map: Mapping  # arrow id of source -> Word of target

    def __post_init__(self):
        object.__setattr__(self, "object_map", dict(self.object_map))
        object.__setattr__(self, "arrow_map", dict(self.arrow_map))
        for o in self.source.objects:
            if self.object_map.get(o, _MISSING) not in self.target.object_set:
                raise StructuralError(f"object {o!r} is not mapped to an object of the target")
        for a, (s, t) in self.source.arrows.items():
            if a not in self.arrow_map:
                raise StructuralError(f"arrow {a!r} has no image")
            w = self.arrow_map[a]
            if (w.source, w.target) != (self.object_map[s], self.object_map[t]):
                raise StructuralError(
                    f"image of {a!r} runs {w.source!r} -> {w.target!r}, "
                    f"expected {self.object_map[s]!r} -> {self.object_map[t]!r}"
                )

    def __call__(self, w: Word) -> Word:
        return apply_morphism(self, w)

    def then(self, other: "PresentationMorphism") -> "PresentationMorphism":
        """``other . self``."""
        return PresentationMorphism(
            self.source,
            other.target,
            {o: other.object_map[x] for o, x in self.object_map.items()},
            {a: other(w) for a, w in self.arrow_map.items()},
        )


_MISSING = object()


def apply_morphism(m: PresentationMorphism, w: Word) -> Word:
    out: list = []
    for a, e in w.letters:
        try:
            img = m.arrow_map[a]
        except KeyError:
            raise StructuralError(f"arrow {a!r} is not in the morphism's domain") from None
        out.extend(img.letters if e == 1 else invert_letters(img.letters))
    try:
        src = m.object_map[w.source]
        tgt = m.object_map[w.target]
    except KeyError as exc:
        raise StructuralError(f"object {exc.args[0]!r} is not in the morphism's domain") from None
    return Word(reduce_letters(out), src, tgt)


def identity_morphism(p: GroupoidPresentation) -> PresentationMorphism:
    return PresentationMorphism(
        p, p, {o: o for o in p.objects}, {a: p.generator(a) for a in p.arrows}
    )
