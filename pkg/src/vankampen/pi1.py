"""Edge-path groupoids of complexes on a base set, and the weighted-path machinery.

``pi1(X, S)`` contracts a breadth-first spanning forest grown from the vertices
of ``S``. Every vertex ``v`` gets a forest path ``tau[v]`` from its root in
``S``; a non-forest edge ``e: u -> w`` becomes a generator with witness path
``tau[u] e tau[w]^-1``. The retraction of an edge path is letterwise (forest
edges vanish), which is why :func:`path_word` is a functor on the nose.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .colimits import CoequalizerResult, coequalize
from .complex import (
    CellMap,
    Complex2,
    SectionedCover,
    check_hypothesis,
    concat_paths,
    fiber_product,
    path_to_base,
    random_path_to_base,
)
from .errors import ContractError, HypothesisError
from .presentation import (
    GroupoidPresentation,
    PresentationMorphism,
    Word,
    compose_all,
    format_id,
    identity,
    reduce_letters,
    sort_key,
)


@dataclass(frozen=True)
class Pi1Presentation:
    presentation: GroupoidPresentation
    complex: Complex2
    base: frozenset
    forest: Mapping  # vertex -> forest path from its root
    forest_edges: frozenset
    witness: Mapping  # generator -> edge path in the complex

    def root(self, v):
        return self.forest[v].source


def pi1(X: Complex2, S) -> Pi1Presentation:
    S = frozenset(S) & X.vertex_set
    roots = sorted(S, key=sort_key)
    tau = {s: identity(s) for s in roots}
    forest_edges = set()
    queue = deque(roots)
    while queue:
        x = queue.popleft()
        for letter, y in X.adjacency[x]:
            if y not in tau:
                tau[y] = Word(tau[x].letters + (letter,), tau[x].source, y)
                forest_edges.add(letter[0])
                queue.append(y)
    missing = [v for v in X.vertices if v not in tau]
    if missing:
        reps = []
        for comp in X.components():
            if not comp & S:
                reps.append(min(comp, key=sort_key))
        raise HypothesisError(
            "base set misses the component(s) of " + ", ".join(format_id(r) for r in reps),
            reps,
        )
    arrows, witness = {}, {}
    for e in sorted(X.edges, key=sort_key):
        if e in forest_edges:
            continue
        u, w = X.edges[e]
        arrows[e] = (tau[u].source, tau[w].source)
        witness[e] = concat_paths(tau[u], X.path([(e, 1)]), tau[w].inverse())
    relators = []
    forest_edges = frozenset(forest_edges)
    for f in sorted(X.faces, key=sort_key):
        b = X.boundary(f)
        r = _retract(b.letters, forest_edges)
        if r:
            root = tau[b.source].source
            relators.append((Word(r, root, root), identity(root)))
    P = GroupoidPresentation(tuple(roots), arrows, tuple(relators))
    return Pi1Presentation(P, X, S, tau, forest_edges, witness)


def _retract(letters, forest_edges) -> tuple:
    return reduce_letters(l for l in letters if l[0] not in forest_edges)


def path_word(p: Pi1Presentation, path: Word) -> Word:
    """The class ``[path]`` as a reduced word; endpoints must lie in the base set."""
    if path.source not in p.base or path.target not in p.base:
        raise ContractError(
            f"path runs {format_id(path.source)} -> {format_id(path.target)}, "
            "endpoints must lie in the base set"
        )
    return Word(_retract(path.letters, p.forest_edges), path.source, path.target)


# -- the fork ---------------------------------------------------------------------


@dataclass(frozen=True)
class VkDiagram:
    """``pi1(E x_B E) => pi1(E) -> pi1(B)`` on the fibers over ``S``."""

    cover: SectionedCover
    base_set: frozenset
    lower: Pi1Presentation
    middle: Pi1Presentation
    target: Pi1Presentation
    alpha: PresentationMorphism
    beta: PresentationMorphism
    gamma: PresentationMorphism
    pair: Complex2
    pr1: CellMap
    pr2: CellMap

    def coequalizer(self) -> CoequalizerResult:
        return coequalize(self.lower.presentation, self.middle.presentation, self.alpha, self.beta)


def _induced(src: Pi1Presentation, dst: Pi1Presentation, m: CellMap) -> PresentationMorphism:
    objects = {o: m.vmap[o] for o in src.presentation.objects}
    arrows = {g: path_word(dst, m.map_path(w)) for g, w in src.witness.items()}
    return PresentationMorphism(src.presentation, dst.presentation, objects, arrows)


def induced_functors(c: SectionedCover, S) -> VkDiagram:
    S = frozenset(S)
    report = check_hypothesis(c, S)
    if not report.ok:
        raise HypothesisError(report.message, report.components)
    p = c.map
    P2, pr1, pr2 = fiber_product(p, p)
    q = pr1.then(p)
    lower = pi1(P2, q.fiber(S))
    middle = pi1(c.total, p.fiber(S))
    target = pi1(c.base, S)
    return VkDiagram(
        c, S, lower, middle, target,
        _induced(lower, middle, pr1), _induced(lower, middle, pr2), _induced(middle, target, p),
        P2, pr1, pr2,
    )


# -- weighted paths -------------------------------------------------------------------


@dataclass(frozen=True)
class WeightedPath:
    f: Word
    n: int
    breaks: tuple  # 0 = t_0 <= ... <= t_n = len(f)
    pieces: tuple  # piece name per segment
    connectors: tuple  # n - 1 edge paths in E x_B E
    points: tuple = ()  # vertex f(t) for t = 0 .. len(f)

    def vertex_at(self, t: int):
        return self.points[t]

    def segment(self, i: int) -> Word:
        """Segment ``i`` (1-based) of ``f`` as a path in the base."""
        a, b = self.breaks[i - 1], self.breaks[i]
        return Word(self.f.letters[a:b], self.points[a], self.points[b])


def _points(B: Complex2, f: Word) -> tuple:
    pts = [f.source]
    for l in f.letters:
        pts.append(B.letter_ends(l)[1])
    return tuple(pts)


def weigh_path(d: VkDiagram, f: Word, pieces: Sequence | None = None,
               breaks: Sequence[int] | None = None, rng=None,
               connector: Callable | None = None) -> WeightedPath:
    """Weight ``f`` (a path in the base with endpoints in ``S``).

    The default is the finest subdivision with the first declared piece that
    contains each edge. ``pieces`` (and optionally ``breaks``) prescribe the
    weight instead. Connectors come from a breadth-first search in
    ``E x_B E``; ``rng`` randomizes them, ``connector(start, targets)`` replaces
    the search entirely.
    """
    c = d.cover
    B = c.base
    B.path(f.letters, start=f.source)
    S = d.base_set
    if f.source not in S or f.target not in S:
        raise ContractError("weighted paths need endpoints in the base set")
    m = len(f)
    names = list(c.pieces)
    if breaks is None:
        if pieces is not None and len(pieces) not in (m, 1) and m:
            raise ContractError(f"{len(pieces)} prescribed pieces for a path of {m} edges; give breaks")
        breaks = list(range(m + 1)) if m else [0, 0]
        if pieces is not None and len(pieces) == 1 and m > 1:
            breaks = [0, m]
    breaks = list(breaks)
    if breaks[0] != 0 or breaks[-1] != m or any(a > b for a, b in zip(breaks, breaks[1:])):
        raise ContractError(f"bad breakpoints {breaks} for a path of {m} edges")
    n = len(breaks) - 1
    if n < 1:
        raise ContractError("a weight needs at least one segment")
    pts = _points(B, f)
    w0 = WeightedPath(f, n, tuple(breaks), (None,) * n, (), pts)
    chosen = []
    for i in range(1, n + 1):
        seg = w0.segment(i)
        if pieces is not None:
            name = pieces[i - 1]
            if name not in c.pieces:
                raise ContractError(f"unknown piece {name!r}")
            U = c.pieces[name]
            for e, _ in seg.letters:
                if e not in U.edges:
                    raise ContractError(f"edge {format_id(e)} of segment {i} leaves piece {name}")
            if seg.source not in U.vertex_set:
                raise ContractError(f"vertex {format_id(seg.source)} of segment {i} leaves piece {name}")
        else:
            name = next(
                (u for u in names
                 if all(e in c.pieces[u].edges for e, _ in seg.letters)
                 and seg.source in c.pieces[u].vertex_set),
                None,
            )
            if name is None:
                raise ContractError(f"no piece contains segment {i} of the path")
        chosen.append(name)
    targets = d.lower.base
    conns = []
    for i in range(1, n):
        x = w0.vertex_at(breaks[i])
        start = (c.sections[chosen[i - 1]].vmap[x], c.sections[chosen[i]].vmap[x])
        if connector is not None:
            g = connector(start, targets)
        elif rng is not None:
            g = random_path_to_base(d.pair, start, targets, rng)
        else:
            g = path_to_base(d.pair, start, targets)
        if g.source != start or g.target not in targets:
            raise ContractError(f"connector {i} must run from {start!r} into the base fiber")
        conns.append(g)
    return WeightedPath(f, n, tuple(breaks), tuple(chosen), tuple(conns), pts)


@dataclass(frozen=True)
class AssociatedSequence:
    paths: tuple  # h_1 .. h_n as edge paths in E (path order)
    words: tuple  # h_1 .. h_n in pi1(E, S)
    factors: tuple  # per h_i: the factor paths in path order


def associated_sequence(d: VkDiagram, w: WeightedPath) -> AssociatedSequence:
    """``h_i = [p1 g_i][s_{U_i} f_i][p2 g_{i-1}]^-1`` (missing connectors omitted)."""
    c = d.cover
    paths, words, factors = [], [], []
    for i in range(1, w.n + 1):
        seg = w.segment(i)
        s = c.sections[w.pieces[i - 1]]
        lifted = Word(tuple((s.emap[e], sign) for e, sign in seg.letters),
                      s.vmap[seg.source], s.vmap[seg.target])
        parts = []
        if i > 1:
            parts.append(d.pr2.map_path(w.connectors[i - 2]).inverse())
        parts.append(lifted)
        if i < w.n:
            parts.append(d.pr1.map_path(w.connectors[i - 1]))
        h = concat_paths(*parts)
        paths.append(h)
        words.append(path_word(d.middle, h))
        factors.append(tuple(parts))
    return AssociatedSequence(tuple(paths), tuple(words), tuple(factors))


def delta_composite(delta: PresentationMorphism, seq: AssociatedSequence) -> Word:
    """``delta(h_n) ... delta(h_1)``; composability is checked letter by letter."""
    images = [delta(h) for h in seq.words]
    for i, (a, b) in enumerate(zip(images, images[1:])):
        if a.target != b.source:
            raise ContractError(f"delta(h_{i + 1}) and delta(h_{i + 2}) do not compose")
    return compose_all(images[::-1])


class EpsilonFunctor:
    """``epsilon`` for a ``delta`` with ``delta alpha = delta beta``.

    The generator-wise check runs once at construction through ``decide``
    (a callable ``(u, v) -> verdict`` on words of the target); any verdict other than
    Equal is an error, and a Distinct verdict names the separating generator.
    """

    def __init__(self, d: VkDiagram, delta: PresentationMorphism, decide=None):
        if delta.source != d.middle.presentation:
            raise ContractError("delta must start at pi1(E, S)")
        self.d = d
        self.delta = delta
        da, db = d.alpha.then(delta), d.beta.then(delta)
        for o in d.lower.presentation.objects:
            if da.object_map[o] != db.object_map[o]:
                raise ContractError(f"delta alpha and delta beta disagree on object {format_id(o)}")
        for g in d.lower.presentation.sorted_arrows():
            u, v = da.arrow_map[g], db.arrow_map[g]
            if u == v:
                continue
            if decide is None:
                raise ContractError(f"delta alpha and delta beta differ freely on {format_id(g)}")
            verdict = decide(u, v)
            if verdict.kind == "distinct":
                raise ContractError(
                    f"delta alpha != delta beta on generator {format_id(g)}: {verdict.detail}"
                )
            if verdict.kind != "equal":
                raise ContractError(
                    f"could not decide delta alpha = delta beta on {format_id(g)}: {verdict.detail}"
                )

    def __call__(self, f: Word, rng=None, pieces=None, breaks=None, connector=None) -> Word:
        w = weigh_path(self.d, f, pieces=pieces, breaks=breaks, rng=rng, connector=connector)
        return delta_composite(self.delta, associated_sequence(self.d, w))


def evaluate_epsilon(d: VkDiagram, delta: PresentationMorphism, f: Word, rng=None,
                     decide=None) -> Word:
    return EpsilonFunctor(d, delta, decide)(f, rng=rng)


# -- combinatorial homotopy -----------------------------------------------------------


def elementary_homotopies(X: Complex2, f: Word) -> list:
    """Every path one backtrack move or one face move away from ``f``."""
    letters = f.letters
    m = len(letters)
    here = [f.source]
    for l in letters:
        here.append(X.letter_ends(l)[1])
    out, seen = [], {letters}

    def emit(new, start, end):
        if new not in seen:
            seen.add(new)
            out.append(Word(new, start, end))

    for i in range(m - 1):
        a, b = letters[i], letters[i + 1]
        if a[0] == b[0] and a[1] == -b[1]:
            emit(letters[:i] + letters[i + 2:], f.source, f.target)
    for i in range(m + 1):
        for letter, _ in X.adjacency[here[i]]:
            back = (letter[0], -letter[1])
            emit(letters[:i] + (letter, back) + letters[i:], f.source, f.target)
    for face in sorted(X.faces, key=sort_key):
        b = X.faces[face]
        k_len = len(b)
        loops = []
        for cyc in (b, tuple((e, -s) for e, s in reversed(b))):
            for r in range(k_len):
                loops.append(cyc[r:] + cyc[:r])
        for loop in dict.fromkeys(loops):
            start = X.letter_ends(loop[0])[0]
            for k in range(k_len + 1):
                head, tail = loop[:k], loop[k:]
                replacement = tuple((e, -s) for e, s in reversed(tail))
                for i in range(m - k + 1):
                    if here[i] != start or letters[i:i + k] != head:
                        continue
                    emit(letters[:i] + replacement + letters[i + k:], f.source, f.target)
    return out


def random_path(X: Complex2, rng, starts, ends=None, max_len: int = 12) -> Word:
    """A random edge path from a vertex of ``starts`` ending in ``ends`` (default ``starts``)."""
    ends = frozenset(starts if ends is None else ends)
    start = rng.choice(sorted(starts, key=sort_key))
    letters = []
    here = start
    for _ in range(rng.randrange(0, max_len + 1)):
        nbrs = X.adjacency[here]
        if not nbrs:
            break
        letter, here = rng.choice(nbrs)
        letters.append(letter)
    walk = Word(tuple(letters), start, here)
    back = path_to_base(X, here, ends, rng=rng)
    return concat_paths(walk, back)
