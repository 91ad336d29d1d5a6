"""Colimits of finitely presented groupoids and vertex-group fingerprints.

Coequalizers are built at the level of presentations: objects of the middle
groupoid are identified along the two object maps, and one relator is added
per generator of the source. Object identification alone is Higgins'
universal morphism; the interval groupoid with its two ends identified
becomes the infinite cyclic group.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from . import tietze
from .errors import ContractError, StructuralError
from .groups import FiniteGroup, count_homomorphisms
from .presentation import (
    GroupoidPresentation,
    PresentationMorphism,
    Word,
    identity,
    reduce_letters,
    sort_key,
)
from .smith import AbelianInvariants, invariants_of


def coproduct(ps):
    """Disjoint union; object ``o`` and arrow ``a`` of ``ps[i]`` become ``(i, o)`` and ``(i, a)``.

    Returns ``(presentation, injections)``.
    """
    objects, arrows, relators = [], {}, []
    for i, p in enumerate(ps):
        objects.extend((i, o) for o in p.objects)
        for a, (s, t) in p.arrows.items():
            arrows[(i, a)] = ((i, s), (i, t))
    for i, p in enumerate(ps):
        for u, v in p.relators:
            relators.append((_rename(u, i), _rename(v, i)))
    total = GroupoidPresentation(tuple(objects), arrows, tuple(relators))
    injections = [
        PresentationMorphism(
            p,
            total,
            {o: (i, o) for o in p.objects},
            {a: total.generator((i, a)) for a in p.arrows},
        )
        for i, p in enumerate(ps)
    ]
    return total, injections


def _rename(w: Word, i) -> Word:
    return Word(tuple(((i, a), e) for a, e in w.letters), (i, w.source), (i, w.target))


@dataclass(frozen=True)
class CoequalizerResult:
    presentation: GroupoidPresentation
    quotient_map: PresentationMorphism
    classes: dict  # representative object -> tuple of identified objects of the middle groupoid


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def coequalize(src: GroupoidPresentation, mid: GroupoidPresentation,
               alpha: PresentationMorphism, beta: PresentationMorphism) -> CoequalizerResult:
    for name, m in (("alpha", alpha), ("beta", beta)):
        if m.source is not src and m.source != src:
            raise ContractError(f"{name} does not start at the fork's source")
        if m.target is not mid and m.target != mid:
            raise ContractError(f"{name} does not land in the middle groupoid")
    uf = _UnionFind(mid.objects)
    for o in src.objects:
        uf.union(alpha.object_map[o], beta.object_map[o])
    members: dict = {}
    for o in mid.objects:
        members.setdefault(uf.find(o), []).append(o)
    rep = {}
    classes = {}
    for group in members.values():
        r = min(group, key=sort_key)
        classes[r] = tuple(sorted(group, key=sort_key))
        for o in group:
            rep[o] = r
    objects = tuple(sorted(classes, key=sort_key))
    arrows = {a: (rep[s], rep[t]) for a, (s, t) in mid.arrows.items()}

    def anchor(w: Word) -> Word:
        return Word(w.letters, rep[w.source], rep[w.target])

    relators = [(anchor(u), anchor(v)) for u, v in mid.relators]
    for g in sorted(src.arrows, key=sort_key):
        u = anchor(alpha(src.generator(g)))
        v = anchor(beta(src.generator(g)))
        if (u.source, u.target) != (v.source, v.target):
            raise StructuralError(f"images of {g!r} are not parallel after identification")
        if u != v:
            relators.append((u, v))
    quotient = GroupoidPresentation(objects, arrows, tuple(relators))
    qmap = PresentationMorphism(
        mid, quotient, rep, {a: quotient.generator(a) for a in mid.arrows}
    )
    return CoequalizerResult(quotient, qmap, classes)


# -- vertex groups -----------------------------------------------------------------


@dataclass(frozen=True)
class Retraction:
    """Deformation of the component of ``base`` onto its vertex group.

    ``tree[y]`` is the spanning-tree word ``base -> y``; ``images`` sends each
    arrow of the component to a loop word of ``group`` (tree arrows to the
    identity). Parallel words are equal in the groupoid exactly when their
    images are equal in ``group``.
    """

    base: object
    objects: tuple
    tree: dict
    tree_arrows: frozenset
    group: GroupoidPresentation
    images: dict

    def __call__(self, w: Word) -> Word:
        out = []
        for a, e in w.letters:
            img = self.images[a]
            out.extend(img.letters if e == 1 else img.inverse().letters)
        return Word(reduce_letters(out), self.base, self.base)


def spanning_tree(p: GroupoidPresentation, x):
    """Breadth-first spanning tree of the component of ``x``; ties broken by arrow id."""
    if x not in p.object_set:
        raise KeyError(f"{x!r} is not an object")
    adjacency: dict = {o: [] for o in p.objects}
    for a in p.sorted_arrows():
        s, t = p.arrows[a]
        adjacency[s].append((a, 1, t))
        adjacency[t].append((a, -1, s))
    tree = {x: ()}
    tree_arrows = set()
    queue = deque([x])
    while queue:
        y = queue.popleft()
        for a, e, z in adjacency[y]:
            if z not in tree:
                tree[z] = tree[y] + ((a, e),)
                tree_arrows.add(a)
                queue.append(z)
    return tree, frozenset(tree_arrows)


def retraction(p: GroupoidPresentation, x) -> Retraction:
    tree, tree_arrows = spanning_tree(p, x)
    comp = set(tree)
    loops = [a for a in p.sorted_arrows() if p.arrows[a][0] in comp and a not in tree_arrows]
    arrows = {a: (x, x) for a in loops}
    images = {}
    for a in p.arrows:
        if p.arrows[a][0] in comp:
            images[a] = identity(x) if a in tree_arrows else Word(((a, 1),), x, x)

    def push(w: Word) -> Word:
        out = []
        for a, e in w.letters:
            out.extend(images[a].letters if e == 1 else images[a].inverse().letters)
        return Word(reduce_letters(out), x, x)

    rels = []
    for u, v in p.relators:
        if u.source in comp:
            ru, rv = push(u), push(v)
            if ru != rv:
                rels.append((ru, rv))
    group = GroupoidPresentation((x,), arrows, tuple(rels))
    ordered = tuple(sorted(comp, key=sort_key))
    paths = {y: Word(w, x, y) for y, w in tree.items()}
    return Retraction(x, ordered, paths, tree_arrows, group, images)


def vertex_group(p: GroupoidPresentation, x) -> GroupoidPresentation:
    """One-object presentation of the vertex group at ``x`` (tree arrows contracted)."""
    return retraction(p, x).group


def components(p: GroupoidPresentation) -> list:
    """Connected components of the generator graph, each a sorted tuple of objects."""
    seen, out = set(), []
    for o in sorted(p.objects, key=sort_key):
        if o in seen:
            continue
        tree, _ = spanning_tree(p, o)
        seen.update(tree)
        out.append(tuple(sorted(tree, key=sort_key)))
    return out


# -- integer form, invariants, homomorphism counts ------------------------------------


def group_words(g: GroupoidPresentation):
    """``(generator ids, relator int-words)`` of a one-object presentation."""
    if len(g.objects) != 1:
        raise ContractError(
            f"expected a one-object presentation, got {len(g.objects)} objects; take vertex_group first"
        )
    gens = g.sorted_arrows()
    index = {a: i + 1 for i, a in enumerate(gens)}
    rels = []
    for u, v in g.relators:
        letters = u.letters + v.inverse().letters
        rels.append(tietze.cyclic_reduce(tuple(index[a] * e for a, e in letters)))
    return gens, [r for r in rels if r]


def to_int_word(gens_index: dict, w: Word) -> tuple:
    return tuple(gens_index[a] * e for a, e in w.letters)


def abelian_invariants(g: GroupoidPresentation) -> AbelianInvariants:
    gens, rels = group_words(g)
    return invariants_of(tietze.exponent_matrix(len(gens), rels), len(gens))


def hom_count(g: GroupoidPresentation, target: FiniteGroup, budget: int | None = None) -> int:
    """Number of homomorphisms from the group presented by ``g`` into ``target``."""
    gens, rels = group_words(g)
    return count_homomorphisms(len(gens), rels, target, budget)


def simplify_presentation(g: GroupoidPresentation):
    """Tietze-simplify a one-object presentation.

    Returns ``(simplified, morphism)`` where ``morphism`` is the isomorphism
    from ``g`` onto ``simplified``; surviving generators keep their ids.
    """
    gens, rels = group_words(g)
    s = tietze.simplify(len(gens), rels)
    (obj,) = g.objects
    kept = [gens[k] for k in s.kept]
    arrows = {a: (obj, obj) for a in kept}

    def word_of(intword):
        return Word(tuple((kept[abs(l) - 1], 1 if l > 0 else -1) for l in intword), obj, obj)

    relators = tuple((word_of(r), identity(obj)) for r in s.relators)
    simplified = GroupoidPresentation((obj,), arrows, relators)
    morphism = PresentationMorphism(
        g, simplified, {obj: obj}, {a: word_of(s.images[i]) for i, a in enumerate(gens)}
    )
    return simplified, morphism


@dataclass(frozen=True)
class Fingerprint:
    invariants: AbelianInvariants
    hom_counts: tuple  # ((group name, count), ...)

    def as_dict(self):
        return {
            "abelian": self.invariants.as_tuple(),
            "homs": {name: n for name, n in self.hom_counts},
        }

    def __str__(self):
        homs = " ".join(f"{name}:{n}" for name, n in self.hom_counts)
        return f"{self.invariants} | {homs}"


def fingerprint(g: GroupoidPresentation, groups, budget: int | None = None) -> Fingerprint:
    """Abelian invariants plus homomorphism counts into each of ``groups``."""
    gens, rels = group_words(g)
    s = tietze.simplify(len(gens), rels)
    inv = invariants_of(tietze.exponent_matrix(s.ngens, s.relators), s.ngens)
    counts = tuple((G.name, count_homomorphisms(s.ngens, s.relators, G, budget)) for G in groups)
    return Fingerprint(inv, counts)


def factor_through(result: CoequalizerResult, group: FiniteGroup, values: dict) -> dict:
    """Solve for the map out of the coequalizer that reproduces ``d``.

    ``values`` gives ``d`` on the generators of the middle groupoid as elements
    of ``group`` (all objects go to its one object). Each coequalizer generator
    is matched with a middle generator mapping onto it; the relators of the
    coequalizer are then checked. Raises ContractError when ``d`` does not
    factor.
    """
    q = result.quotient_map
    Q = result.presentation
    preimage = {}
    for b in sorted(q.arrow_map, key=sort_key):
        img = q.arrow_map[b]
        if len(img.letters) == 1 and img.letters[0][1] == 1:
            preimage.setdefault(img.letters[0][0], b)
    out = {}
    for a in Q.sorted_arrows():
        if a not in preimage:
            raise ContractError(f"generator {a!r} of the coequalizer has no preimage")
        out[a] = values[preimage[a]]
    index = {a: i + 1 for i, a in enumerate(Q.sorted_arrows())}
    assignment = [out[a] for a in Q.sorted_arrows()]
    for u, v in Q.relators:
        word = to_int_word(index, u) + tietze.inverse(to_int_word(index, v))
        if group.evaluate(word, assignment) != group.identity:
            raise ContractError(f"relator {u} = {v} fails in {group.name}")
    return out
