"""JSON instance documents: schema, cross-reference checks, and round-tripping.

A document has three keys::

    {"complex":  {"vertices": [...], "edges": {"a": ["v0", "v1"]}, "faces": {"F": ["a", "-b"]}},
     "cover":    {"pieces": {"U1": {"vertices": [...], "edges": [...], "faces": [...]}}}
              or {"pieces": "stars"}
              or {"map": {"complex": {...}, "vertices": {...}, "edges": {...}, "faces": {...}},
                  "pieces": ... (default "stars"), "sections": {"U1": {"vertices": {...}, ...}}},
     "base_set": ["v0", "v1"] | "all" | "v0"}

Boundary letters are edge ids, with a leading ``-`` for the reversed edge.
Pieces are closed under taking faces of cells. Missing sections are searched for.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import jsonschema

from .complex import (
    CellMap,
    Complex2,
    SectionedCover,
    auto_sections,
    cover_to_map,
    star_pieces,
    verify_locally_sectionable,
)
from .errors import CoverageError, DocumentError, StructuralError

_ids = {"type": "array", "items": {"type": "string"}}
_complex = {
    "type": "object",
    "required": ["vertices"],
    "additionalProperties": False,
    "properties": {
        "vertices": {**_ids, "uniqueItems": True},
        "edges": {
            "type": "object",
            "additionalProperties": {"type": "array", "items": {"type": "string"},
                                     "minItems": 2, "maxItems": 2},
        },
        "faces": {
            "type": "object",
            "additionalProperties": {"type": "array", "items": {"type": "string", "pattern": "^-?.+$"},
                                     "minItems": 1},
        },
    },
}
_cells = {
    "type": "object",
    "additionalProperties": False,
    "properties": {"vertices": _ids, "edges": _ids, "faces": _ids},
}
_pieces = {"oneOf": [{"const": "stars"}, {"type": "object", "minProperties": 1,
                                           "additionalProperties": _cells}]}
_mapping = {"type": "object", "additionalProperties": {"type": "string"}}
_cellmap = {
    "type": "object",
    "additionalProperties": False,
    "properties": {"vertices": _mapping, "edges": _mapping, "faces": _mapping},
}

SCHEMA = {
    "type": "object",
    "required": ["complex", "cover", "base_set"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "description": {"type": "string"},
        "complex": _complex,
        "cover": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "pieces": _pieces,
                "map": {
                    "type": "object",
                    "required": ["complex", "vertices"],
                    "additionalProperties": False,
                    "properties": {"complex": _complex, **_cellmap["properties"]},
                },
                "sections": {"type": "object", "additionalProperties": _cellmap},
            },
            "anyOf": [{"required": ["pieces"]}, {"required": ["map"]}],
        },
        "base_set": {"oneOf": [{**_ids, "minItems": 1}, {"type": "string"}]},
    },
}


@dataclass(frozen=True)
class Instance:
    name: str
    complex: Complex2
    cover: SectionedCover
    base_set: frozenset
    base_spec: object  # "all", a vertex id, or a list, as written
    mode: str  # "pieces" or "map"


def _letters(boundary):
    return tuple((b[1:], -1) if b.startswith("-") else (b, 1) for b in boundary)


def _complex_of(doc, where) -> Complex2:
    vertices = doc["vertices"]
    vs = set(vertices)
    edges = {}
    for e, (a, b) in doc.get("edges", {}).items():
        for x in (a, b):
            if x not in vs:
                raise DocumentError(f"unknown vertex {x!r}", f"{where}.edges.{e}")
        edges[e] = (a, b)
    faces = {}
    for f, boundary in doc.get("faces", {}).items():
        letters = _letters(boundary)
        for e, _ in letters:
            if e not in edges:
                raise DocumentError(f"unknown edge {e!r}", f"{where}.faces.{f}")
        faces[f] = letters
    try:
        return Complex2(tuple(vertices), edges, faces)
    except StructuralError as exc:
        raise DocumentError(str(exc), where) from None


def _pieces_of(B: Complex2, spec, where) -> dict:
    if spec == "stars":
        return star_pieces(B)
    out = {}
    for name, cells in spec.items():
        try:
            out[name] = B.subcomplex(cells.get("vertices", ()), cells.get("edges", ()),
                                     cells.get("faces", ()))
        except StructuralError as exc:
            raise DocumentError(str(exc), f"{where}.{name}") from None
    return out


def _map_of(doc, E: Complex2, B: Complex2, where) -> CellMap:
    m = CellMap(E, B, doc.get("vertices", {}), doc.get("edges", {}), doc.get("faces", {}))
    problem = m.first_problem()
    if problem:
        raise DocumentError(problem[2], where)
    return m


def base_set_of(B: Complex2, spec) -> frozenset:
    if spec == "all":
        return B.vertex_set
    items = [spec] if isinstance(spec, str) else list(spec)
    for v in items:
        if v not in B.vertex_set:
            raise DocumentError(f"unknown vertex {v!r}", "base_set")
    return frozenset(items)


def validate(doc) -> None:
    try:
        jsonschema.validate(doc, SCHEMA)
    except jsonschema.ValidationError as exc:
        path = ".".join(str(p) for p in exc.absolute_path) or "<root>"
        raise DocumentError(exc.message, path) from None


def instance_from_doc(doc, name="instance") -> Instance:
    validate(doc)
    B = _complex_of(doc["complex"], "complex")
    cov = doc["cover"]
    if "map" in cov:
        E = _complex_of(cov["map"]["complex"], "cover.map.complex")
        p = _map_of(cov["map"], E, B, "cover.map")
        pieces = _pieces_of(B, cov.get("pieces", "stars"), "cover.pieces")
        given = cov.get("sections", {})
        for s in given:
            if s not in pieces:
                raise DocumentError(f"section for unknown piece {s!r}", "cover.sections")
        sections = {}
        missing = {}
        for n, U in pieces.items():
            if n in given:
                g = given[n]
                sections[n] = CellMap(U, E, g.get("vertices", {}), g.get("edges", {}), g.get("faces", {}))
            else:
                missing[n] = U
        if missing:
            try:
                sections.update(auto_sections(p, missing).sections)
            except CoverageError as exc:
                raise DocumentError(str(exc), "cover.sections") from None
        cover = SectionedCover(p, pieces, sections)
        mode = "map"
    else:
        pieces = _pieces_of(B, cov["pieces"], "cover.pieces")
        try:
            cover = cover_to_map(B, pieces)
        except CoverageError as exc:
            raise DocumentError(str(exc), "cover.pieces") from None
        mode = "pieces"
    report = verify_locally_sectionable(cover)
    if not report.ok:
        raise DocumentError(report.message, "cover")
    return Instance(doc.get("name", name), B, cover, base_set_of(B, doc["base_set"]),
                    doc["base_set"], mode)


def parse(text: str, name="instance") -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from None
    return instance_from_doc(doc, name)


# -- serialization --------------------------------------------------------------------


def _complex_doc(X: Complex2) -> dict:
    return {
        "vertices": list(X.vertices),
        "edges": {e: list(ends) for e, ends in X.edges.items()},
        "faces": {f: [e if s == 1 else f"-{e}" for e, s in b] for f, b in X.faces.items()},
    }


def _cells_doc(U: Complex2) -> dict:
    return {"vertices": list(U.vertices), "edges": list(U.edges), "faces": list(U.faces)}


def to_doc(inst: Instance) -> dict:
    c = inst.cover
    pieces = {n: _cells_doc(U) for n, U in c.pieces.items()}
    if inst.mode == "map":
        m = c.map
        cover = {
            "map": {"complex": _complex_doc(m.domain), "vertices": dict(m.vmap),
                    "edges": dict(m.emap), "faces": dict(m.fmap)},
            "pieces": pieces,
            "sections": {n: {"vertices": dict(s.vmap), "edges": dict(s.emap), "faces": dict(s.fmap)}
                         for n, s in c.sections.items()},
        }
    else:
        cover = {"pieces": pieces}
    return {"name": inst.name, "complex": _complex_doc(inst.complex), "cover": cover,
            "base_set": inst.base_spec}


def serialize(inst: Instance) -> str:
    # key order carries meaning (piece order breaks ties), so it is kept
    return json.dumps(to_doc(inst), indent=2) + "\n"


# -- the shipped corpus ---------------------------------------------------------------


def corpus_names() -> list:
    root = resources.files("vankampen") / "corpus"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load(name_or_path) -> Instance:
    """Load a document from a path, or a corpus entry by name."""
    path = Path(name_or_path)
    if path.exists():
        return parse(path.read_text(), path.stem)
    name = str(name_or_path)
    if name in corpus_names():
        text = (resources.files("vankampen") / "corpus" / f"{name}.json").read_text()
        return parse(text, name)
    raise DocumentError(f"no such file or corpus entry: {name_or_path}")
