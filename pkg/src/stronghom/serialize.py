"""JSON documents for complexes, maps, towers, simplicial data and group towers.

Every document is a JSON object with a ``kind`` field.  Matrices are lists of
rows whose entries are decimal integer strings, so no reader ever rounds a
large entry.  Graded data are objects keyed by the degree as a string.
"""

from __future__ import annotations

import hashlib
import json
from functools import lru_cache
from importlib import resources

import jsonschema

from .algebra import FgAbGroup, Homomorphism
from .chain import ChainComplex, ChainMap
from .errors import ParseError
from .limits import GroupTower
from .matrix import IntMatrix
from .simplicial import SimplicialComplex, SimplicialMap
from .tower import MapTower, Tower

FORMAT_VERSION = 1

KINDS = ("complex", "chain_map", "tower", "map_tower", "simplicial", "simplicial_map", "group_tower")


@lru_cache(maxsize=1)
def schema() -> dict:
    path = resources.files("stronghom").joinpath("schemas").joinpath(f"document.v{FORMAT_VERSION}.json")
    text = path.read_text()
    return json.loads(text)


def digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def validate(doc) -> None:
    """Raise :class:`ParseError` unless ``doc`` matches the document schema."""
    try:
        jsonschema.validate(doc, schema())
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ParseError(f"schema violation at {where}: {exc.message}") from None


def parse(text: str | bytes):
    """Decode, validate and build the object a document describes."""
    try:
        doc = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    validate(doc)
    return from_document(doc)


def load(path: str):
    """``(object, sha256 of the file bytes)``."""
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse(data), digest(data)


# --- matrices -------------------------------------------------------------

def matrix_to_json(M: IntMatrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in M.rows]


def matrix_from_json(rows, shape: tuple[int, int], what: str = "matrix") -> IntMatrix:
    m, n = shape
    if m and not rows:
        return IntMatrix.zeros(m, n)
    if len(rows) != m or any(len(r) != n for r in rows):
        got = (len(rows), len(rows[0]) if rows else 0)
        raise ParseError(f"{what}: expected shape {shape}, got {got}")
    return IntMatrix([[int(x) for x in r] for r in rows], shape)


def _graded_from_json(obj, shape_of, what: str) -> dict[int, IntMatrix]:
    return {int(k): matrix_from_json(v, shape_of(int(k)), f"{what} {k}") for k, v in (obj or {}).items()}


def _graded_to_json(mats: dict[int, IntMatrix]) -> dict[str, list]:
    return {str(n): matrix_to_json(M) for n, M in sorted(mats.items()) if M.nrows and M.ncols and not M.is_zero()}


# --- chain level ----------------------------------------------------------

def complex_to_json(C: ChainComplex) -> dict:
    return {
        "kind": "complex",
        "ranks": {str(n): C.rank(n) for n in C.degrees},
        "differentials": _graded_to_json({n: C.differential(n) for n in range(C.lo + 1, C.hi + 1)}),
    }


def complex_from_json(doc) -> ChainComplex:
    ranks = {int(k): v for k, v in doc["ranks"].items()}
    diffs = _graded_from_json(doc.get("differentials"),
                              lambda n: (ranks.get(n - 1, 0), ranks.get(n, 0)), "differential")
    return ChainComplex(ranks, diffs)


def _components(f) -> dict[int, IntMatrix]:
    return {n: f.component(n) for n in f.source.degrees}


def chain_map_to_json(f: ChainMap) -> dict:
    return {
        "kind": "chain_map",
        "source": complex_to_json(f.source),
        "target": complex_to_json(f.target),
        "components": _graded_to_json(_components(f)),
    }


def _map_from_components(obj, S: ChainComplex, T: ChainComplex, what: str) -> ChainMap:
    comps = _graded_from_json(obj, lambda n: (T.rank(n), S.rank(n)), what)
    return ChainMap(S, T, comps)


def chain_map_from_json(doc) -> ChainMap:
    S, T = complex_from_json(doc["source"]), complex_from_json(doc["target"])
    return _map_from_components(doc.get("components"), S, T, "component")


def tower_to_json(T: Tower) -> dict:
    return {
        "kind": "tower",
        "levels": [complex_to_json(C) for C in T.levels],
        "bonds": [{"components": _graded_to_json(_components(b))} for b in T.bonds],
    }


def tower_from_json(doc) -> Tower:
    levels = [complex_from_json(c) for c in doc["levels"]]
    if len(doc["bonds"]) != len(levels) - 1:
        raise ParseError("a tower needs exactly one bond less than levels")
    bonds = [_map_from_components(b["components"], levels[i + 1], levels[i], f"bond {i} component")
             for i, b in enumerate(doc["bonds"])]
    return Tower(levels, bonds)


def map_tower_to_json(F: MapTower) -> dict:
    return {
        "kind": "map_tower",
        "domain": tower_to_json(F.domain),
        "codomain": tower_to_json(F.codomain),
        "maps": [{"components": _graded_to_json(_components(f))} for f in F.maps],
    }


def map_tower_from_json(doc) -> MapTower:
    X, Y = tower_from_json(doc["domain"]), tower_from_json(doc["codomain"])
    if not (len(doc["maps"]) == X.length == Y.length):
        raise ParseError("domain, codomain and maps must have the same length")
    maps = [_map_from_components(m["components"], X.levels[i], Y.levels[i], f"map {i} component")
            for i, m in enumerate(doc["maps"])]
    return MapTower(X, Y, maps)


# --- simplicial -----------------------------------------------------------

def simplicial_to_json(K: SimplicialComplex) -> dict:
    return {
        "kind": "simplicial",
        "vertices": list(K.vertices),
        "simplices": [list(s) for s in K.maximal_simplices()],
    }


def simplicial_from_json(doc) -> SimplicialComplex:
    return SimplicialComplex(doc["vertices"], doc["simplices"])


def simplicial_map_to_json(f: SimplicialMap) -> dict:
    return {
        "kind": "simplicial_map",
        "source": simplicial_to_json(f.source),
        "target": simplicial_to_json(f.target),
        "assignment": [[v, f.target.vertices[f.vmap[i]]] for i, v in enumerate(f.source.vertices)],
    }


def simplicial_map_from_json(doc) -> SimplicialMap:
    S, T = simplicial_from_json(doc["source"]), simplicial_from_json(doc["target"])
    assignment = {}
    for v, w in doc["assignment"]:
        if v in assignment:
            raise ParseError(f"vertex {v!r} is assigned twice")
        assignment[v] = w
    return SimplicialMap(S, T, assignment)


# --- group towers ---------------------------------------------------------

def group_to_json(G: FgAbGroup) -> dict:
    return {"torsion": [str(d) for d in G.torsion], "free_rank": G.free_rank}


def group_from_json(doc) -> FgAbGroup:
    return FgAbGroup.from_invariants([int(d) for d in doc.get("torsion", [])], doc.get("free_rank", 0))


def _hom(rows, S: FgAbGroup, T: FgAbGroup, what: str) -> Homomorphism:
    return Homomorphism(S, T, matrix_from_json(rows, (T.ngens, S.ngens), what))


def group_tower_to_json(T: GroupTower) -> dict:
    doc = {
        "kind": "group_tower",
        "groups": [group_to_json(G) for G in T.groups],
        "bonds": [matrix_to_json(b.matrix) for b in T.bonds],
    }
    if T.tail is not None:
        A, M = T.tail
        doc["tail"] = {"group": group_to_json(A), "endomorphism": matrix_to_json(M.matrix)}
    if T.splice is not None:
        doc["splice"] = matrix_to_json(T.splice.matrix)
    return doc


def group_tower_from_json(doc) -> GroupTower:
    groups = [group_from_json(g) for g in doc.get("groups", [])]
    bonds_json = doc.get("bonds", [])
    if groups and len(bonds_json) != len(groups) - 1:
        raise ParseError("a group tower needs exactly one bond less than groups")
    bonds = [_hom(b, groups[i + 1], groups[i], f"bond {i}") for i, b in enumerate(bonds_json)]
    tail = splice = None
    if "tail" in doc:
        A = group_from_json(doc["tail"]["group"])
        tail = (A, _hom(doc["tail"]["endomorphism"], A, A, "tail endomorphism"))
        if "splice" in doc:
            if not groups:
                raise ParseError("a splice needs a finite part")
            splice = _hom(doc["splice"], A, groups[-1], "splice")
    return GroupTower(groups, bonds, tail=tail, splice=splice)


_READERS = {
    "complex": complex_from_json,
    "chain_map": chain_map_from_json,
    "tower": tower_from_json,
    "map_tower": map_tower_from_json,
    "simplicial": simplicial_from_json,
    "simplicial_map": simplicial_map_from_json,
    "group_tower": group_tower_from_json,
}

_WRITERS = [
    (ChainMap, chain_map_to_json),
    (ChainComplex, complex_to_json),
    (MapTower, map_tower_to_json),
    (Tower, tower_to_json),
    (SimplicialMap, simplicial_map_to_json),
    (SimplicialComplex, simplicial_to_json),
    (GroupTower, group_tower_to_json),
]


def from_document(doc):
    return _READERS[doc["kind"]](doc)


def to_document(obj) -> dict:
    for cls, writer in _WRITERS:
        if isinstance(obj, cls):
            doc = writer(obj)
            doc["format"] = FORMAT_VERSION
            return doc
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(doc) -> str:
    """Canonical text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=1, separators=(",", ": ")) + "\n"
