"""The word-equality battery, the end-to-end Van Kampen check, and the
comparison against the coproduct-of-pieces construction."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import tietze
from .colimits import (
    CoequalizerResult,
    components,
    fingerprint,
    group_words,
    retraction,
)
from .complex import (
    CellMap,
    Complex2,
    SectionedCover,
    check_hypothesis,
    cover_to_map,
    fiber_product,
    path_to_base,
    star_pieces,
    uncovered_cells,
)
from .errors import BudgetError, ContractError, HypothesisError
from .groups import DEFAULT_BUDGET, FiniteGroup, iter_homomorphisms, small_groups
from .pi1 import EpsilonFunctor, VkDiagram, induced_functors
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
from .rewriting import RewritingSystem
from .smith import RowLattice


@dataclass(frozen=True)
class VkConfig:
    fingerprint_order: int = 8
    hom_budget: int = DEFAULT_BUDGET
    kb_rules: int = 400
    kb_seconds: float = 2.0
    kb_length: int = 80
    tietze_growth: int = 20
    max_separating_homs: int = 20000  # per group, when searching for a separating hom

    def groups(self) -> tuple:
        return small_groups(self.fingerprint_order)


# -- verdicts -------------------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    method: str
    detail: str = ""
    kind = "unknown"

    def __bool__(self):
        return self.kind == "equal"


@dataclass(frozen=True)
class Equal(Verdict):
    kind = "equal"


@dataclass(frozen=True)
class Distinct(Verdict):
    witness: object = None
    kind = "distinct"


@dataclass(frozen=True)
class Unknown(Verdict):
    kind = "unknown"


@dataclass(frozen=True)
class HomWitness:
    """A homomorphism into a finite group under which ``word`` is not the identity."""

    group: FiniteGroup
    relators: tuple
    assignment: tuple
    word: tuple

    def check(self) -> bool:
        G = self.group
        return (all(G.evaluate(r, self.assignment) == G.identity for r in self.relators)
                and G.evaluate(self.word, self.assignment) != G.identity)


@dataclass(frozen=True)
class AbelianWitness:
    """Exponent vector of ``word`` outside the relator lattice."""

    ngens: int
    relators: tuple
    word: tuple

    def check(self) -> bool:
        lattice = RowLattice(tietze.exponent_matrix(self.ngens, self.relators), self.ngens)
        return tietze.exponent_matrix(self.ngens, [self.word])[0] not in lattice


# -- battery --------------------------------------------------------------------------


class _Component:
    def __init__(self, g: GroupoidPresentation, root, config: VkConfig):
        self.retraction = retraction(g, root)
        gens, rels = group_words(self.retraction.group)
        self.index = {a: i + 1 for i, a in enumerate(gens)}
        s = tietze.simplify(len(gens), rels, config.tietze_growth)
        self.ngens = s.ngens
        self.relators = s.relators
        self.images = s.images
        self.canonical = frozenset(s.relators)
        self.config = config
        self._kb = None
        self._lattice = None
        self._homs: dict = {}

    def to_int(self, w: Word) -> tuple:
        loop = self.retraction(w)
        return tietze.substitute(tuple(self.index[a] * e for a, e in loop.letters), self.images)

    @property
    def kb(self) -> RewritingSystem:
        if self._kb is None:
            c = self.config
            self._kb = RewritingSystem(self.ngens, self.relators, c.kb_rules, c.kb_seconds, c.kb_length)
            self._kb.complete()
        return self._kb

    @property
    def lattice(self) -> RowLattice:
        if self._lattice is None:
            self._lattice = RowLattice(tietze.exponent_matrix(self.ngens, self.relators), self.ngens)
        return self._lattice

    def homs(self, G: FiniteGroup):
        """Cached homomorphisms into ``G``; truncated when the search budget runs out."""
        if G.name not in self._homs:
            out = []
            try:
                for a in iter_homomorphisms(self.ngens, self.relators, G, self.config.hom_budget):
                    out.append(a)
                    if len(out) >= self.config.max_separating_homs:
                        break
            except BudgetError:
                pass
            self._homs[G.name] = out
        return self._homs[G.name]


class Battery:
    """Equality decisions in one presentation, with per-component caches."""

    def __init__(self, g: GroupoidPresentation, config: VkConfig | None = None):
        self.g = g
        self.config = config or VkConfig()
        self._root = {}
        for comp in components(g):
            for o in comp:
                self._root[o] = comp[0]
        self._components: dict = {}

    def component(self, obj) -> _Component:
        root = self._root[obj]
        if root not in self._components:
            self._components[root] = _Component(self.g, root, self.config)
        return self._components[root]

    def decide(self, u: Word, v: Word) -> Verdict:
        g = self.g
        if (u.source, u.target) != (v.source, v.target):
            raise ContractError(f"words are not parallel: {u} vs {v}")
        g.check_word(u)
        g.check_word(v)
        if reduce_letters(u.letters) == reduce_letters(v.letters):
            return Equal("free")
        comp = self.component(u.source)
        w = tietze.free_reduce(comp.to_int(u) + tietze.inverse(comp.to_int(v)))
        if not w:
            return Equal("free", "freely equal after contracting the spanning tree")
        exps = tietze.exponent_matrix(comp.ngens, [w])[0]
        if exps not in comp.lattice:
            return Distinct("abelianization", "images differ in the abelianization",
                            AbelianWitness(comp.ngens, comp.relators, w))
        kb = comp.kb
        if kb.confluent:
            if kb.normal_form(w):
                return Distinct("normal-forms", "distinct normal forms in a confluent system")
            return Equal("completion", f"confluent system with {len(kb.rules)} rules")
        if tietze.canonical_relator(w) in comp.canonical:
            return Equal("relator", "u v^-1 is a conjugate of a relator")
        for G in self.config.groups():
            homs = comp.homs(G)
            for a in homs:
                if G.evaluate(w, a) != G.identity:
                    return Distinct("homomorphism", f"separated by a map into {G.name}",
                                    HomWitness(G, comp.relators, a, w))
        return Unknown("battery", f"completion failed ({kb.failure}); no separating invariant")


def decide_equal(g: GroupoidPresentation, u: Word, v: Word, config: VkConfig | None = None) -> Verdict:
    return Battery(g, config).decide(u, v)


# -- the pipeline ---------------------------------------------------------------------


@dataclass
class Tally:
    equal: int = 0
    distinct: int = 0
    unknown: int = 0
    distinct_examples: list = field(default_factory=list)

    def add(self, verdict: Verdict, label=""):
        setattr(self, verdict.kind, getattr(self, verdict.kind) + 1)
        if verdict.kind == "distinct" and len(self.distinct_examples) < 5:
            self.distinct_examples.append(f"{label}: {verdict.detail}")

    @property
    def total(self):
        return self.equal + self.distinct + self.unknown

    def as_dict(self):
        return {"equal": self.equal, "distinct": self.distinct, "unknown": self.unknown}


@dataclass
class VkReport:
    status: str  # "pass", "hypothesis", "mismatch"
    message: str
    base_set: tuple
    fingerprints: dict = field(default_factory=dict)  # base vertex -> (coequalizer fp, direct fp)
    fork_sound: bool = True
    objects_bijective: bool = True
    well_defined: Tally = field(default_factory=Tally)
    round_trips: Tally = field(default_factory=Tally)
    methods: dict = field(default_factory=dict)
    failing_components: tuple = ()

    @property
    def ok(self):
        return self.status == "pass"

    def summary(self) -> dict:
        return {
            "status": self.status,
            "base_set": [format_id(x) for x in self.base_set],
            "fork_sound": self.fork_sound,
            "objects_bijective": self.objects_bijective,
            "well_defined": self.well_defined.as_dict(),
            "round_trips": self.round_trips.as_dict(),
            "fingerprints": {
                format_id(b): {"coequalizer": q.as_dict(), "direct": t.as_dict()}
                for b, (q, t) in self.fingerprints.items()
            },
        }


def comparison_morphism(d: VkDiagram, q: CoequalizerResult) -> PresentationMorphism:
    """``theta: Q -> pi1(B, S)`` induced by ``gamma`` (``theta q = gamma``)."""
    gamma = d.gamma
    obj = {}
    for rep, members in q.classes.items():
        images = {gamma.object_map[o] for o in members}
        if len(images) != 1:
            raise ContractError(f"gamma does not factor: class of {format_id(rep)} hits {sorted(images, key=sort_key)}")
        (obj[rep],) = images
    arrows = {a: gamma.arrow_map[a] for a in q.presentation.arrows}
    return PresentationMorphism(q.presentation, gamma.target, obj, arrows)


def run_vk(c: SectionedCover, S, config: VkConfig | None = None):
    """Build the fork, coequalize it and compare with ``pi1(B, S)``.

    Returns ``(diagram, coequalizer, report)``; the first two are ``None`` when
    the hypothesis fails.
    """
    config = config or VkConfig()
    S = frozenset(S)
    hyp = check_hypothesis(c, S)
    base = tuple(sorted(S, key=sort_key))
    if not hyp.ok:
        return None, None, VkReport("hypothesis", hyp.message, base, failing_components=hyp.components)
    d = induced_functors(c, S)
    q = d.coequalizer()
    report = VkReport("pass", "", base)

    # gamma alpha = gamma beta, exactly
    ga, gb = d.alpha.then(d.gamma), d.beta.then(d.gamma)
    report.fork_sound = ga.arrow_map == gb.arrow_map and ga.object_map == gb.object_map

    theta = comparison_morphism(d, q)
    B = d.target.presentation
    bat_b = Battery(B, config)
    bat_q = Battery(q.presentation, config)
    for u, v in q.presentation.relators:
        verdict = bat_b.decide(theta(u), theta(v))
        report.well_defined.add(verdict, "theta relator")
        report.methods[verdict.method] = report.methods.get(verdict.method, 0) + 1

    images = list(theta.object_map.values())
    report.objects_bijective = len(set(images)) == len(images) and set(images) == set(B.objects)

    groups = config.groups()
    inverse_obj = {b: a for a, b in theta.object_map.items()}
    if report.objects_bijective:
        for b in B.objects:
            fq = fingerprint(retraction(q.presentation, inverse_obj[b]).group, groups, config.hom_budget)
            fb = fingerprint(retraction(B, b).group, groups, config.hom_budget)
            report.fingerprints[b] = (fq, fb)

    # psi = epsilon for delta = q
    eps = EpsilonFunctor(d, q.quotient_map, bat_q.decide)
    psi = {e: eps(d.target.witness[e]) for e in B.sorted_arrows()}

    def apply_psi(w: Word) -> Word:
        parts = [psi[a] if s == 1 else psi[a].inverse() for a, s in w.letters]
        if not parts:
            return identity(inverse_obj[w.source])
        return compose_all(parts[::-1])

    if report.objects_bijective:
        for e in B.sorted_arrows():
            verdict = bat_b.decide(theta(psi[e]), B.generator(e))
            report.round_trips.add(verdict, f"theta psi({format_id(e)})")
            report.methods[verdict.method] = report.methods.get(verdict.method, 0) + 1
        for a in q.presentation.sorted_arrows():
            verdict = bat_q.decide(apply_psi(theta.arrow_map[a]), q.presentation.generator(a))
            report.round_trips.add(verdict, f"psi theta({format_id(a)})")
            report.methods[verdict.method] = report.methods.get(verdict.method, 0) + 1

    problems = []
    if not report.fork_sound:
        problems.append("gamma alpha != gamma beta")
    if not report.objects_bijective:
        problems.append("comparison is not bijective on objects")
    bad_fp = [b for b, (x, y) in report.fingerprints.items() if x != y]
    if bad_fp:
        problems.append("fingerprints differ at " + ", ".join(format_id(b) for b in bad_fp))
    if report.well_defined.distinct or report.round_trips.distinct:
        problems.append("battery found distinct words: "
                        + "; ".join(report.well_defined.distinct_examples + report.round_trips.distinct_examples))
    if problems:
        report.status = "mismatch"
        report.message = "; ".join(problems)
    else:
        unknown = report.well_defined.unknown + report.round_trips.unknown
        report.message = (f"coequalizer matches pi1(B,S) on {len(B.objects)} objects"
                          + (f" ({unknown} undecided checks)" if unknown else ""))
    return d, q, report


# -- comparison with the coproduct of pieces ----------------------------------------


def pullback_cover(c: SectionedCover, cprime: SectionedCover) -> SectionedCover:
    """``E x_B E' -> B`` with sections ``<s_U, iota_U>``."""
    P, pr1, pr2 = fiber_product(c.map, cprime.map)
    to_base = pr1.then(c.map)
    sections = {}
    for name, U in c.pieces.items():
        s, i = c.sections[name], cprime.sections[name]
        sections[name] = CellMap(
            U, P,
            {v: (s.vmap[v], i.vmap[v]) for v in U.vertices},
            {e: (s.emap[e], i.emap[e]) for e in U.edges},
            {f: (s.fmap[f], i.fmap[f]) for f in U.faces},
        )
    return SectionedCover(to_base, c.pieces, sections)


@dataclass
class CrossReport:
    verdict: str  # "AGREE", "AGREE (absolute)", "DISAGREE", "FAIL"
    base_set: tuple
    pipelines: dict  # name -> (effective base set, VkReport)
    fingerprints: dict  # name -> {vertex: Fingerprint}
    notes: list = field(default_factory=list)

    @property
    def ok(self):
        return self.verdict.startswith("AGREE")

    def summary(self):
        return {
            "verdict": self.verdict,
            "base_set": [format_id(x) for x in self.base_set],
            "pipelines": {
                name: {
                    "status": rep.status,
                    "effective_base_set": [format_id(x) for x in eff],
                    "round_trips": rep.round_trips.as_dict(),
                }
                for name, (eff, rep) in self.pipelines.items()
            },
            "fingerprints": {
                name: {format_id(b): fp.as_dict() for b, fp in fps.items()}
                for name, fps in self.fingerprints.items()
            },
            "notes": list(self.notes),
        }


def crosscheck_section4(c: SectionedCover, S, config: VkConfig | None = None) -> CrossReport:
    """Run the pipeline on ``c``, on the coproduct of its pieces, and on their pullback.

    A pipeline whose hypothesis fails at ``S`` is rerun with ``S`` = all
    vertices; its vertex groups are then compared at the vertices of ``S``.
    """
    config = config or VkConfig()
    S = frozenset(S)
    B = c.base
    cprime = cover_to_map(B, c.pieces)
    pipelines = {"given": c, "coproduct": cprime, "pullback": pullback_cover(c, cprime)}
    runs, fps, notes = {}, {}, []
    groups = config.groups()
    for name, cover in pipelines.items():
        eff = S
        _, q, rep = run_vk(cover, S, config)
        if rep.status == "hypothesis":
            eff = B.vertex_set
            notes.append(f"{name}: hypothesis fails at the given base set; rerun with all vertices")
            _, q, rep = run_vk(cover, eff, config)
        runs[name] = (tuple(sorted(eff, key=sort_key)), rep)
        if rep.status != "pass" or q is None:
            continue
        theta_inv = {cover.map.vmap[r]: r for r in q.classes}
        fps[name] = {
            b: fingerprint(retraction(q.presentation, theta_inv[b]).group, groups, config.hom_budget)
            for b in sorted(S, key=sort_key)
        }
    if any(rep.status != "pass" for _, rep in runs.values()):
        verdict = "FAIL"
    else:
        ref = fps["given"]
        verdict = "AGREE" if all(fps[n] == ref for n in fps) else "DISAGREE"
        if verdict == "AGREE" and c.has_global_section():
            verdict = "AGREE (absolute)"
    return CrossReport(verdict, tuple(sorted(S, key=sort_key)), runs, fps, notes)


# -- random instances -----------------------------------------------------------------


@dataclass(frozen=True)
class Bounds:
    vertices: int = 8
    edges: int = 16
    faces: int = 6
    max_boundary: int = 6


def random_complex(rng: random.Random, bounds: Bounds) -> Complex2:
    nv = rng.randint(1, bounds.vertices)
    vertices = tuple(f"v{i}" for i in range(nv))
    ne = rng.randint(0, bounds.edges)
    edges = {f"e{i}": (rng.choice(vertices), rng.choice(vertices)) for i in range(ne)}
    X = Complex2(vertices, edges)
    faces = {}
    if edges:
        for i in range(rng.randint(0, bounds.faces)):
            start = rng.choice(vertices)
            if not X.adjacency[start]:
                continue
            letters, here = [], start
            for _ in range(rng.randint(1, max(1, bounds.max_boundary - 2))):
                letter, here = rng.choice(X.adjacency[here])
                letters.append(letter)
            try:
                back = path_to_base(X, here, {start}, rng=rng)
            except HypothesisError:
                continue
            letters.extend(back.letters)
            if letters:
                faces[f"F{i}"] = tuple(letters)
    return Complex2(vertices, edges, faces)


def random_pieces(B: Complex2, rng: random.Random) -> dict:
    k = rng.randint(2, 4)
    cells = {f"U{i + 1}": ([], [], []) for i in range(k)}
    names = list(cells)
    for f in B.faces:
        for name in rng.sample(names, rng.randint(1, 2)):
            cells[name][2].append(f)
    for e in B.edges:
        if rng.random() < 0.7:
            cells[rng.choice(names)][1].append(e)
    for v in B.vertices:
        if rng.random() < 0.5:
            cells[rng.choice(names)][0].append(v)
    pieces = {n: B.subcomplex(*cs) for n, cs in cells.items()}
    for kind, cell in uncovered_cells(B, pieces.values()):
        name = rng.choice(names)
        vs, es, fs = cells[name]
        {"vertex": vs, "edge": es, "face": fs}[kind].append(cell)
        pieces[name] = B.subcomplex(vs, es, fs)
    return pieces


def random_instance(seed, bounds: Bounds | None = None):
    """``(B, cover, S)`` with the hypothesis satisfied; deterministic in ``seed``."""
    bounds = bounds or Bounds()
    rng = random.Random(seed)
    B = random_complex(rng, bounds)
    if rng.random() < 0.5:
        pieces = star_pieces(B)
    else:
        pieces = random_pieces(B, rng)
    c = cover_to_map(B, pieces)
    S = {v for v in B.vertices if rng.random() < 0.3}
    while True:
        rep = check_hypothesis(c, S)
        if rep.ok:
            break
        S.add(rep.components[0][1])
    return B, c, frozenset(S)
