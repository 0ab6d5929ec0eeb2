"""JSON interchange: parse and serialize the document families the CLI
consumes, with a canonical rendering for reproducible fingerprints.

Parsing enforces document *shape* and referential integrity (every name a
document mentions must be declared inside it) and raises DocumentError with
a field path.  Semantic laws — composition tables being total, families
being topologies, section tables being compatible — are left to the
checkers, so a well-shaped document describing a broken structure parses
fine and fails its check with a witness instead.

Keys beginning with an underscore are reserved for annotations and ignored
(corpus files use "_expect" to pin their exit status).

Canonical form: JSON with sorted keys, no insignificant whitespace, and all
set-like collections sorted; fingerprints are the SHA-256 of that text.
"""

from __future__ import annotations

import hashlib
import json

from .core import FiniteGroupoid
from .loctriv import LocalTrivialization, local_trivialization
from .topology import FiniteTopology, topology
from .words import GeneratingGraph, GroupoidPresentation, Word, presentation


class DocumentError(Exception):
    """A document failed to parse; the message names the field at fault."""


def load_document(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as e:
        raise DocumentError(f"{path}: {e.strerror or e}") from e
    except json.JSONDecodeError as e:
        raise DocumentError(
            f"{path}: line {e.lineno}, column {e.colno}: {e.msg}") from e
    if not isinstance(doc, dict):
        raise DocumentError(f"{path}: top level must be an object")
    return doc


def canonical(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"),
                      ensure_ascii=False)


def fingerprint(doc) -> str:
    return hashlib.sha256(canonical(doc).encode("utf-8")).hexdigest()


def _require(doc, field, kind, where):
    if field not in doc:
        raise DocumentError(f"{where}: missing field {field!r}")
    value = doc[field]
    if not isinstance(value, kind):
        raise DocumentError(f"{where}.{field}: expected {kind.__name__}")
    return value


def _strings(items, where):
    out = []
    for i, s in enumerate(items):
        if not isinstance(s, str):
            raise DocumentError(f"{where}[{i}]: expected string")
        out.append(s)
    return out


# ------------------------------------------------------------- groupoids

def parse_groupoid(doc, where="groupoid") -> FiniteGroupoid:
    objects = _strings(_require(doc, "objects", list, where), f"{where}.objects")
    morphisms = _require(doc, "morphisms", list, where)
    source, target = {}, {}
    for i, m in enumerate(morphisms):
        spot = f"{where}.morphisms[{i}]"
        if not isinstance(m, dict):
            raise DocumentError(f"{spot}: expected object")
        mid = _require(m, "id", str, spot)
        if mid in source:
            raise DocumentError(f"{spot}: duplicate morphism id {mid!r}")
        src, tgt = _require(m, "src", str, spot), _require(m, "tgt", str, spot)
        if src not in objects:
            raise DocumentError(f"{spot}: src {src!r} is not a declared object")
        if tgt not in objects:
            raise DocumentError(f"{spot}: tgt {tgt!r} is not a declared object")
        source[mid], target[mid] = src, tgt

    def known(mid, spot):
        if mid not in source:
            raise DocumentError(f"{spot}: unknown morphism {mid!r}")
        return mid

    identity = {}
    for x, m in _require(doc, "identities", dict, where).items():
        if x not in objects:
            raise DocumentError(f"{where}.identities: unknown object {x!r}")
        identity[x] = known(m, f"{where}.identities[{x!r}]")
    inverse = {}
    for a, b in _require(doc, "inverses", dict, where).items():
        inverse[known(a, f"{where}.inverses")] = known(b, f"{where}.inverses[{a!r}]")
    compose = {}
    for i, triple in enumerate(_require(doc, "compose", list, where)):
        spot = f"{where}.compose[{i}]"
        if not (isinstance(triple, list) and len(triple) == 3):
            raise DocumentError(f"{spot}: expected [a, b, ab]")
        a, b, ab = (known(m, spot) for m in triple)
        compose[(a, b)] = ab
    return FiniteGroupoid(objects=frozenset(objects), source=source,
                          target=target, identity=identity, inverse=inverse,
                          compose=compose)


def serialize_groupoid(G: FiniteGroupoid) -> dict:
    return {
        "objects": sorted(G.objects),
        "morphisms": [{"id": m, "src": G.source[m], "tgt": G.target[m]}
                      for m in sorted(G.morphisms)],
        "identities": {x: G.identity[x] for x in sorted(G.objects)},
        "inverses": {a: G.inverse[a] for a in sorted(G.inverse)},
        "compose": [[a, b, ab] for (a, b), ab in sorted(G.compose.items())],
    }


def parse_carrier(doc, G: FiniteGroupoid, where="document") -> frozenset:
    names = _strings(_require(doc, "carrier", list, where), f"{where}.carrier")
    for m in names:
        if m not in G.morphisms:
            raise DocumentError(f"{where}.carrier: unknown morphism {m!r}")
    return frozenset(names)


# ------------------------------------------------------------- topologies

def parse_topology_family(doc, where="topology"):
    """(points, family) without deciding whether the family is a topology."""
    points = _strings(_require(doc, "points", list, where), f"{where}.points")
    opens = []
    for i, o in enumerate(_require(doc, "opens", list, where)):
        spot = f"{where}.opens[{i}]"
        if not isinstance(o, list):
            raise DocumentError(f"{spot}: expected list of points")
        for p in _strings(o, spot):
            if p not in points:
                raise DocumentError(f"{spot}: unknown point {p!r}")
        opens.append(frozenset(o))
    return points, opens


def parse_topology(doc, where="topology") -> FiniteTopology:
    points, opens = parse_topology_family(doc, where)
    try:
        return topology(points, opens)
    except ValueError as e:
        raise DocumentError(f"{where}: {e}") from e


def serialize_topology(T: FiniteTopology) -> dict:
    return {"points": sorted(map(str, T.points)),
            "opens": sorted((sorted(map(str, o)) for o in T.opens),
                            key=lambda o: (len(o), o))}


# ----------------------------------------------------------------- graphs

def parse_graph(doc, where="graph"):
    """(vertices, edges) for a fundamental-groupoid run."""
    vertices = _strings(_require(doc, "vertices", list, where), f"{where}.vertices")
    edges = []
    for i, e in enumerate(_require(doc, "edges", list, where)):
        spot = f"{where}.edges[{i}]"
        if not (isinstance(e, list) and len(e) == 2):
            raise DocumentError(f"{spot}: expected [u, v]")
        u, v = _strings(e, spot)
        for p in (u, v):
            if p not in vertices:
                raise DocumentError(f"{spot}: unknown vertex {p!r}")
        edges.append((u, v))
    return vertices, edges


# ---------------------------------------------------------- presentations

def parse_presentation(doc, where="presentation") -> GroupoidPresentation:
    vertices = _strings(_require(doc, "vertices", list, where), f"{where}.vertices")
    edges = {}
    for i, e in enumerate(_require(doc, "edges", list, where)):
        spot = f"{where}.edges[{i}]"
        if not isinstance(e, dict):
            raise DocumentError(f"{spot}: expected object")
        eid = _require(e, "id", str, spot)
        if eid in edges:
            raise DocumentError(f"{spot}: duplicate edge id {eid!r}")
        src, tgt = _require(e, "src", str, spot), _require(e, "tgt", str, spot)
        for p in (src, tgt):
            if p not in vertices:
                raise DocumentError(f"{spot}: unknown vertex {p!r}")
        edges[eid] = (src, tgt)
    graph = GeneratingGraph(vertices=frozenset(vertices), edges=edges)
    relators = []
    for i, r in enumerate(_require(doc, "relators", list, where)):
        spot = f"{where}.relators[{i}]"
        if not isinstance(r, dict):
            raise DocumentError(f"{spot}: expected object")
        base = _require(r, "base", str, spot)
        if base not in vertices:
            raise DocumentError(f"{spot}: unknown vertex {base!r}")
        letters = []
        for j, letter in enumerate(_require(r, "letters", list, spot)):
            if not (isinstance(letter, list) and len(letter) == 2
                    and isinstance(letter[0], str) and letter[1] in (1, -1)):
                raise DocumentError(f"{spot}.letters[{j}]: expected [edge, 1|-1]")
            if letter[0] not in edges:
                raise DocumentError(f"{spot}.letters[{j}]: unknown edge {letter[0]!r}")
            letters.append((letter[0], letter[1]))
        relators.append(Word(tuple(letters), base))
    try:
        return presentation(graph, relators)
    except ValueError as e:
        raise DocumentError(f"{where}: {e}") from e


def serialize_presentation(P: GroupoidPresentation) -> dict:
    return {
        "vertices": sorted(P.graph.vertices),
        "edges": [{"id": e, "src": s, "tgt": t}
                  for e, (s, t) in sorted(P.graph.edges.items())],
        "relators": [{"base": r.base, "letters": [[e, s] for e, s in r.letters]}
                     for r in P.relators],
    }


# ----------------------------------------------------- local trivializations

def parse_local_trivialization(doc, where="lt") -> LocalTrivialization:
    base = parse_topology(_require(doc, "base_space", dict, where),
                          f"{where}.base_space")
    points = set(map(str, base.points))
    cover = []
    for i, entry in enumerate(_require(doc, "cover", list, where)):
        spot = f"{where}.cover[{i}]"
        if not (isinstance(entry, list) and len(entry) == 2
                and isinstance(entry[0], int) and isinstance(entry[1], list)):
            raise DocumentError(f"{spot}: expected [index, [points]]")
        member = _strings(entry[1], spot)
        for p in member:
            if p not in points:
                raise DocumentError(f"{spot}: unknown point {p!r}")
        cover.append((entry[0], frozenset(member)))
    indices = {i for i, _ in cover}
    sections = {}
    for i, entry in enumerate(_require(doc, "sections", list, where)):
        spot = f"{where}.sections[{i}]"
        if not (isinstance(entry, list) and len(entry) == 3
                and isinstance(entry[0], str) and isinstance(entry[1], int)
                and isinstance(entry[2], list)):
            raise DocumentError(f"{spot}: expected [x, index, [[u, morphism]]]")
        x, idx, rows = entry
        if x not in points:
            raise DocumentError(f"{spot}: unknown point {x!r}")
        if idx not in indices:
            raise DocumentError(f"{spot}: unknown cover index {idx}")
        if (x, idx) in sections:
            raise DocumentError(f"{spot}: duplicate section ({x!r}, {idx})")
        table = {}
        for j, row in enumerate(rows):
            if not (isinstance(row, list) and len(row) == 2
                    and all(isinstance(s, str) for s in row)):
                raise DocumentError(f"{spot}[{j}]: expected [u, morphism id]")
            table[row[0]] = row[1]
        sections[(x, idx)] = table
    try:
        return local_trivialization(base, cover, sections)
    except ValueError as e:
        raise DocumentError(f"{where}: {e}") from e


def serialize_local_trivialization(LT: LocalTrivialization) -> dict:
    return {
        "base_space": serialize_topology(LT.base_space),
        "cover": [[i, sorted(map(str, u))] for i, u in sorted(LT.cover)],
        "sections": [[x, i, [[u, LT.sections[(x, i)][u]]
                             for u in sorted(LT.sections[(x, i)], key=str)]]
                     for x, i in sorted(LT.sections, key=lambda k: (str(k[0]), k[1]))],
    }
