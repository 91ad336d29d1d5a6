"""Finite combinatorial 2-complexes, cell maps, fiber products and sectioned covers.

Edge paths are :class:`~vankampen.presentation.Word` values over the edges of a
complex. Unlike words in a presentation they are *not* reduced automatically:
a path with a backtrack is a different path.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import CoverageError, HypothesisError, StructuralError
from .presentation import GroupoidPresentation, Word, format_id, identity, sort_key


def _cached(obj, name, build):
    value = obj.__dict__.get(name)
    if value is None:
        value = build()
        object.__setattr__(obj, name, value)
    return value


@dataclass(frozen=True)
class Complex2:
    vertices: tuple
    edges: Mapping = field(default_factory=dict)  # id -> (src, dst)
    faces: Mapping = field(default_factory=dict)  # id -> boundary letters ((edge, +-1), ...)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", dict(self.edges))
        object.__setattr__(self, "faces", {f: tuple(map(tuple, b)) for f, b in self.faces.items()})
        vs = self.vertex_set
        if len(vs) != len(self.vertices):
            raise StructuralError("duplicate vertex ids")
        for e, ends in self.edges.items():
            if len(ends) != 2 or ends[0] not in vs or ends[1] not in vs:
                raise StructuralError(f"edge {format_id(e)} has unknown endpoints {ends!r}")
        for f, boundary in self.faces.items():
            if not boundary:
                raise StructuralError(f"face {format_id(f)} has an empty boundary")
            w = self.path(boundary)
            if w.source != w.target:
                raise StructuralError(f"boundary of face {format_id(f)} is not closed")

    @property
    def vertex_set(self) -> frozenset:
        return _cached(self, "_vset", lambda: frozenset(self.vertices))

    def letter_ends(self, letter) -> tuple:
        e, s = letter
        try:
            a, b = self.edges[e]
        except KeyError:
            raise StructuralError(f"unknown edge {format_id(e)}") from None
        if s not in (1, -1):
            raise StructuralError(f"bad exponent in letter {letter!r}")
        return (a, b) if s == 1 else (b, a)

    def path(self, letters, start=None) -> Word:
        """Validated (unreduced) edge path; ``start`` is required for the constant path."""
        letters = tuple((l, 1) if isinstance(l, str) else (l[0], l[1]) for l in letters)
        if not letters:
            if start is None or start not in self.vertex_set:
                raise StructuralError(f"constant path needs a vertex, got {start!r}")
            return identity(start)
        here = self.letter_ends(letters[0])[0]
        if start is not None and start != here:
            raise StructuralError(f"path starts at {here!r}, not {start!r}")
        first = here
        for i, letter in enumerate(letters):
            a, b = self.letter_ends(letter)
            if a != here:
                raise StructuralError(f"path letters {i - 1} and {i} do not meet")
            here = b
        return Word(letters, first, here)

    def boundary(self, f) -> Word:
        return self.path(self.faces[f])

    def face_vertices(self, f) -> set:
        out = set()
        for letter in self.faces[f]:
            out.update(self.edges[letter[0]])
        return out

    @property
    def adjacency(self) -> dict:
        """vertex -> sorted list of ``(letter, other end)`` leaving it."""
        def build():
            adj = {v: [] for v in self.vertices}
            for e in sorted(self.edges, key=sort_key):
                a, b = self.edges[e]
                adj[a].append(((e, 1), b))
                adj[b].append(((e, -1), a))
            return adj
        return _cached(self, "_adj", build)

    def components(self) -> list:
        """Vertex sets of the path-components (1-skeleton), in order of first vertex."""
        seen, out = set(), []
        for v in self.vertices:
            if v in seen:
                continue
            comp = {v}
            queue = deque([v])
            while queue:
                x = queue.popleft()
                for _, y in self.adjacency[x]:
                    if y not in comp:
                        comp.add(y)
                        queue.append(y)
            seen |= comp
            out.append(frozenset(comp))
        return out

    def subcomplex(self, vertices=(), edges=(), faces=(), close: bool = True) -> "Complex2":
        """Subcomplex spanned by the given cells; with ``close`` the closure is taken."""
        vs, es, fs = set(vertices), set(edges), set(faces)
        for x in vs:
            if x not in self.vertex_set:
                raise StructuralError(f"unknown vertex {format_id(x)}")
        for e in es:
            if e not in self.edges:
                raise StructuralError(f"unknown edge {format_id(e)}")
        for f in fs:
            if f not in self.faces:
                raise StructuralError(f"unknown face {format_id(f)}")
        if close:
            for f in fs:
                es.update(l[0] for l in self.faces[f])
            for e in es:
                vs.update(self.edges[e])
        else:
            for f in fs:
                missing = [l[0] for l in self.faces[f] if l[0] not in es]
                if missing:
                    raise StructuralError(
                        f"face {format_id(f)} needs edge {format_id(missing[0])} in the subcomplex"
                    )
            for e in es:
                missing = [v for v in self.edges[e] if v not in vs]
                if missing:
                    raise StructuralError(
                        f"edge {format_id(e)} needs vertex {format_id(missing[0])} in the subcomplex"
                    )
        return Complex2(
            tuple(v for v in self.vertices if v in vs),
            {e: self.edges[e] for e in sorted(es, key=sort_key)},
            {f: self.faces[f] for f in sorted(fs, key=sort_key)},
        )

    def closed_star(self, v) -> "Complex2":
        faces = [f for f in self.faces if v in self.face_vertices(f)]
        edges = [e for e, ends in self.edges.items() if v in ends]
        return self.subcomplex([v], edges, faces)

    def is_subcomplex_of(self, other: "Complex2") -> bool:
        return (
            self.vertex_set <= other.vertex_set
            and all(other.edges.get(e) == ends for e, ends in self.edges.items())
            and all(other.faces.get(f) == b for f, b in self.faces.items())
        )

    def free_groupoid(self) -> GroupoidPresentation:
        """Edge-path groupoid on all vertices: edges as generators, one relator per face."""
        arrows = dict(self.edges)
        rels = []
        for f in sorted(self.faces, key=sort_key):
            b = self.boundary(f)
            rels.append((b, identity(b.source)))
        return GroupoidPresentation(self.vertices, arrows, tuple(rels))

    def counts(self) -> tuple:
        return (len(self.vertices), len(self.edges), len(self.faces), len(self.components()))

    def describe(self) -> str:
        return (f"{len(self.vertices)} vertices, {len(self.edges)} edges, "
                f"{len(self.faces)} faces, {len(self.components())} components")


# -- cell maps ----------------------------------------------------------------------


@dataclass(frozen=True)
class CellMap:
    """Dimension-preserving map; call :meth:`check` to validate compatibility."""

    domain: Complex2
    codomain: Complex2
    vmap: Mapping
    emap: Mapping
    fmap: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "vmap", dict(self.vmap))
        object.__setattr__(self, "emap", dict(self.emap))
        object.__setattr__(self, "fmap", dict(self.fmap))

    def first_problem(self):
        """``(kind, cell, message)`` for the first incompatible cell, or ``None``."""
        X, Y = self.domain, self.codomain
        for v in X.vertices:
            if self.vmap.get(v) not in Y.vertex_set:
                return ("vertex", v, f"vertex {format_id(v)} has no image in the codomain")
        for e in sorted(X.edges, key=sort_key):
            img = self.emap.get(e)
            if img not in Y.edges:
                return ("edge", e, f"edge {format_id(e)} has no image edge")
            a, b = X.edges[e]
            if Y.edges[img] != (self.vmap[a], self.vmap[b]):
                return ("edge", e, f"edge {format_id(e)} -> {format_id(img)} breaks endpoints")
        for f in sorted(X.faces, key=sort_key):
            img = self.fmap.get(f)
            if img not in Y.faces:
                return ("face", f, f"face {format_id(f)} has no image face")
            mapped = tuple((self.emap[e], s) for e, s in X.faces[f])
            if mapped != Y.faces[img]:
                return ("face", f, f"face {format_id(f)} -> {format_id(img)} breaks the boundary")
        return None

    def check(self) -> "CellMap":
        problem = self.first_problem()
        if problem:
            raise StructuralError(problem[2])
        return self

    def map_path(self, w: Word) -> Word:
        return Word(tuple((self.emap[e], s) for e, s in w.letters), self.vmap[w.source], self.vmap[w.target])

    def then(self, other: "CellMap") -> "CellMap":
        """``other . self``."""
        return CellMap(
            self.domain,
            other.codomain,
            {v: other.vmap[x] for v, x in self.vmap.items()},
            {e: other.emap[x] for e, x in self.emap.items()},
            {f: other.fmap[x] for f, x in self.fmap.items()},
        )

    def fiber(self, vertices) -> frozenset:
        """Vertices of the domain lying over the given codomain vertices."""
        vs = set(vertices)
        return frozenset(v for v in self.domain.vertices if self.vmap[v] in vs)


def identity_map(X: Complex2) -> CellMap:
    return CellMap(X, X, {v: v for v in X.vertices}, {e: e for e in X.edges}, {f: f for f in X.faces})


def inclusion(U: Complex2, X: Complex2) -> CellMap:
    if not U.is_subcomplex_of(X):
        raise StructuralError("not a subcomplex")
    return CellMap(U, X, {v: v for v in U.vertices}, {e: e for e in U.edges}, {f: f for f in U.faces})


def fiber_product(p: CellMap, q: CellMap):
    """Pullback of ``p`` and ``q`` over their common codomain.

    Cells are pairs of cells with equal image; returns ``(P, pr1, pr2)``.
    """
    if p.codomain != q.codomain:
        raise StructuralError("fiber product needs maps with the same codomain")

    def over(m: CellMap, cells, table):
        out: dict = {}
        for c in sorted(cells, key=sort_key):
            out.setdefault(table[c], []).append(c)
        return out

    pv, qv = over(p, p.domain.vertices, p.vmap), over(q, q.domain.vertices, q.vmap)
    vertices = [(a, b) for x in p.codomain.vertices for a in pv.get(x, ()) for b in qv.get(x, ())]
    pe, qe = over(p, p.domain.edges, p.emap), over(q, q.domain.edges, q.emap)
    edges = {}
    for x in sorted(p.codomain.edges, key=sort_key):
        for a in pe.get(x, ()):
            for b in qe.get(x, ()):
                (a0, a1), (b0, b1) = p.domain.edges[a], q.domain.edges[b]
                edges[(a, b)] = ((a0, b0), (a1, b1))
    pf, qf = over(p, p.domain.faces, p.fmap), over(q, q.domain.faces, q.fmap)
    faces = {}
    for x in sorted(p.codomain.faces, key=sort_key):
        for a in pf.get(x, ()):
            for b in qf.get(x, ()):
                ba, bb = p.domain.faces[a], q.domain.faces[b]
                if len(ba) != len(bb) or any(s != t for (_, s), (_, t) in zip(ba, bb)):
                    continue
                faces[(a, b)] = tuple(((ea, eb), s) for (ea, s), (eb, _) in zip(ba, bb))
    P = Complex2(tuple(vertices), edges, faces)
    pr1 = CellMap(P, p.domain, {v: v[0] for v in vertices}, {e: e[0] for e in edges},
                  {f: f[0] for f in faces})
    pr2 = CellMap(P, q.domain, {v: v[1] for v in vertices}, {e: e[1] for e in edges},
                  {f: f[1] for f in faces})
    return P, pr1, pr2


def triple_product(p: CellMap):
    """``E x_B E x_B E`` with its three projections; cells are ``((a, b), c)``."""
    P2, pr1, pr2 = fiber_product(p, p)
    P3, left, pr3 = fiber_product(pr1.then(p), p)
    q1 = left.then(pr1)
    q2 = left.then(pr2)
    return P3, q1, q2, pr3


# -- covers ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SectionedCover:
    """A cell map ``p: E -> B`` with pieces of ``B`` and a chosen section over each."""

    map: CellMap
    pieces: Mapping  # name -> Complex2 (subcomplex of B)
    sections: Mapping  # name -> CellMap piece -> E

    def __post_init__(self):
        object.__setattr__(self, "pieces", dict(self.pieces))
        object.__setattr__(self, "sections", dict(self.sections))

    @property
    def base(self) -> Complex2:
        return self.map.codomain

    @property
    def total(self) -> Complex2:
        return self.map.domain

    def piece_names(self) -> list:
        return list(self.pieces)

    def has_global_section(self) -> bool:
        B = self.base
        return any(U.vertex_set == B.vertex_set and len(U.edges) == len(B.edges)
                   and len(U.faces) == len(B.faces) for U in self.pieces.values())


def uncovered_cells(B: Complex2, pieces: Iterable[Complex2]) -> list:
    pieces = list(pieces)
    missing = []
    for v in B.vertices:
        if not any(v in U.vertex_set for U in pieces):
            missing.append(("vertex", v))
    for e in sorted(B.edges, key=sort_key):
        if not any(e in U.edges for U in pieces):
            missing.append(("edge", e))
    for f in sorted(B.faces, key=sort_key):
        if not any(f in U.faces for U in pieces):
            missing.append(("face", f))
    return missing


def cover_to_map(B: Complex2, pieces) -> SectionedCover:
    """The coproduct of the pieces mapping onto ``B``; sections are the injections."""
    if not isinstance(pieces, Mapping):
        pieces = {f"U{i + 1}": U for i, U in enumerate(pieces)}
    for name, U in pieces.items():
        if not U.is_subcomplex_of(B):
            raise StructuralError(f"piece {name} is not a subcomplex of the base")
    missing = uncovered_cells(B, pieces.values())
    if missing:
        names = ", ".join(f"{kind} {format_id(c)}" for kind, c in missing)
        raise CoverageError(f"pieces do not cover: {names}", missing)
    vertices, edges, faces = [], {}, {}
    for name, U in pieces.items():
        vertices.extend((name, v) for v in U.vertices)
        for e, (a, b) in U.edges.items():
            edges[(name, e)] = ((name, a), (name, b))
        for f, bd in U.faces.items():
            faces[(name, f)] = tuple(((name, e), s) for e, s in bd)
    E = Complex2(tuple(vertices), edges, faces)
    p = CellMap(E, B, {v: v[1] for v in vertices}, {e: e[1] for e in edges}, {f: f[1] for f in faces})
    sections = {
        name: CellMap(U, E, {v: (name, v) for v in U.vertices}, {e: (name, e) for e in U.edges},
                      {f: (name, f) for f in U.faces})
        for name, U in pieces.items()
    }
    return SectionedCover(p, pieces, sections)


def star_pieces(B: Complex2) -> dict:
    return {f"st({format_id(v)})": B.closed_star(v) for v in B.vertices}


def find_section(p: CellMap, U: Complex2):
    """Search for a section of ``p`` over the subcomplex ``U``; ``None`` if there is none."""
    E = p.domain
    vlifts = {v: [x for x in sorted(E.vertices, key=sort_key) if p.vmap[x] == v] for v in U.vertices}
    elifts = {e: [x for x in sorted(E.edges, key=sort_key) if p.emap[x] == e] for e in U.edges}
    flifts = {f: [x for x in sorted(E.faces, key=sort_key) if p.fmap[x] == f] for f in U.faces}
    order = list(U.vertices)
    edges_order = sorted(U.edges, key=sort_key)
    vmap: dict = {}
    emap: dict = {}

    def faces_ok():
        fmap = {}
        for f in U.faces:
            want = tuple((emap[e], s) for e, s in U.faces[f])
            hit = next((x for x in flifts[f] if E.faces[x] == want), None)
            if hit is None:
                return None
            fmap[f] = hit
        return fmap

    def rec_edges(i):
        if i == len(edges_order):
            return faces_ok()
        e = edges_order[i]
        a, b = U.edges[e]
        for x in elifts[e]:
            if E.edges[x] == (vmap[a], vmap[b]):
                emap[e] = x
                found = rec_edges(i + 1)
                if found is not None:
                    return found
        return None

    def rec_vertices(i):
        if i == len(order):
            return rec_edges(0)
        v = order[i]
        for x in vlifts[v]:
            vmap[v] = x
            # prune: every edge between assigned vertices needs some lift
            ok = all(
                any(E.edges[y] == (vmap[a], vmap[b]) for y in elifts[e])
                for e, (a, b) in U.edges.items()
                if a in vmap and b in vmap and (a == v or b == v)
            )
            if ok:
                found = rec_vertices(i + 1)
                if found is not None:
                    return found
            del vmap[v]
        return None

    fmap = rec_vertices(0)
    if fmap is None:
        return None
    return CellMap(U, E, dict(vmap), dict(emap), fmap)


def auto_sections(p: CellMap, pieces: Mapping | None = None) -> SectionedCover:
    """Sectioned cover from ``p`` alone: closed vertex stars with searched sections."""
    B = p.codomain
    pieces = star_pieces(B) if pieces is None else dict(pieces)
    sections = {}
    for name, U in pieces.items():
        s = find_section(p, U)
        if s is None:
            raise CoverageError(f"no section of the map over piece {name}", [("piece", name)])
        sections[name] = s
    return SectionedCover(p, pieces, sections)


@dataclass(frozen=True)
class Report:
    ok: bool
    message: str = ""
    cell: tuple | None = None  # (kind, id) of the first failure
    components: tuple = ()  # for hypothesis reports: (representative, base vertex) pairs

    def __bool__(self):
        return self.ok


def verify_locally_sectionable(c: SectionedCover) -> Report:
    B, E, p = c.base, c.total, c.map
    problem = p.first_problem()
    if problem:
        return Report(False, f"projection: {problem[2]}", problem[:2])
    missing = uncovered_cells(B, c.pieces.values())
    if missing:
        kind, cell = missing[0]
        return Report(False, f"{kind} {format_id(cell)} lies in no piece", missing[0])
    for name in c.pieces:
        U = c.pieces[name]
        if not U.is_subcomplex_of(B):
            return Report(False, f"piece {name} is not a subcomplex of the base", ("piece", name))
        s = c.sections.get(name)
        if s is None:
            return Report(False, f"piece {name} has no section", ("piece", name))
        if s.domain != U or s.codomain != E:
            return Report(False, f"section over {name} has the wrong domain or codomain", ("piece", name))
        problem = s.first_problem()
        if problem:
            return Report(False, f"section over {name}: {problem[2]}", problem[:2])
        for v in U.vertices:
            if p.vmap[s.vmap[v]] != v:
                return Report(False, f"section over {name} moves vertex {format_id(v)}", ("vertex", v))
        for e in sorted(U.edges, key=sort_key):
            if p.emap[s.emap[e]] != e:
                return Report(False, f"section over {name} moves edge {format_id(e)}", ("edge", e))
        for f in sorted(U.faces, key=sort_key):
            if p.fmap[s.fmap[f]] != f:
                return Report(False, f"section over {name} moves face {format_id(f)}", ("face", f))
    return Report(True, "locally sectionable over every piece")


def check_hypothesis(c: SectionedCover, S) -> Report:
    """Does every path-component of ``E x_B E x_B E`` contain a vertex over ``S``?"""
    S = frozenset(S)
    P3, q1, _, _ = triple_product(c.map)
    to_base = q1.then(c.map)
    bad = []
    comps = P3.components()
    for comp in comps:
        if not any(to_base.vmap[v] in S for v in comp):
            rep = min(comp, key=sort_key)
            bad.append((rep, to_base.vmap[rep]))
    if bad:
        names = "; ".join(
            f"component of {format_id(r)} over {format_id(b)}" for r, b in bad
        )
        return Report(False, f"base set misses {len(bad)} of {len(comps)} components: {names}",
                      None, tuple(bad))
    return Report(True, f"base set meets all {len(comps)} components of the triple product")


# -- paths ----------------------------------------------------------------------------


def path_to_base(X: Complex2, start, targets, rng=None) -> Word:
    """Shortest edge path from ``start`` to a vertex of ``targets``.

    Deterministic breadth-first search with lexicographic tie-break; with an
    ``rng`` the neighbour order is shuffled instead.
    """
    targets = frozenset(targets)
    if start in targets:
        return identity(start)
    prev = {start: None}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        nbrs = X.adjacency[x]
        if rng is not None:
            nbrs = list(nbrs)
            rng.shuffle(nbrs)
        for letter, y in nbrs:
            if y in prev:
                continue
            prev[y] = (x, letter)
            if y in targets:
                letters = []
                while prev[y] is not None:
                    x0, l = prev[y]
                    letters.append(l)
                    y = x0
                letters.reverse()
                return X.path(letters)
            queue.append(y)
    raise HypothesisError(
        f"no path from {format_id(start)} to the base fiber", [(start, None)]
    )


def random_walk(X: Complex2, start, steps: int, rng) -> Word:
    letters = []
    here = start
    for _ in range(steps):
        nbrs = X.adjacency[here]
        if not nbrs:
            break
        letter, here = rng.choice(nbrs)
        letters.append(letter)
    return X.path(letters, start=start)


def random_path_to_base(X: Complex2, start, targets, rng, max_detour: int = 6) -> Word:
    """A random walk followed by a randomized search back to ``targets``."""
    walk = random_walk(X, start, rng.randrange(0, max_detour + 1), rng)
    rest = path_to_base(X, walk.target, targets, rng=rng)
    return concat_paths(walk, rest)


def concat_paths(*paths: Word) -> Word:
    """Traverse the paths in the given order (no reduction)."""
    out = paths[0]
    for w in paths[1:]:
        if out.target != w.source:
            raise StructuralError(f"paths do not meet: {out.target!r} vs {w.source!r}")
        out = Word(out.letters + w.letters, out.source, w.target)
    return out


def reverse_path(w: Word) -> Word:
    return w.inverse()
