"""Monodromy presentations over a finite groupoid.

Given a groupoid G and an inversion-closed subset W containing every
identity, the monodromy groupoid here is presented by one generator per
non-identity element of W and one relator a.b.(ab)^-1 for every pair
a, b in W whose ambient product is defined and lands back in W (identity
letters are erased).  Elements are words; equality is decided by the
word-problem engine per component.

Two distinguished maps come with the construction: the universal map
i~ sending each element of W to its one-letter word, and the evaluation
map p sending a word to its product in G.  `globalize` extends a map
defined only on W to the whole presented groupoid exactly when the map is
compatible with every relator, and `star_covering_report` measures how far
p is from a bijection on stars, depth window by depth window.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass

from .core import FiniteGroupoid, generated_by, pair_groupoid
from .words import (
    DEFAULT_BUDGET,
    Forest,
    GeneratingGraph,
    GroupoidPresentation,
    Word,
    build_engine,
    collapse_letters,
    collapse_presentation,
    free_reduce,
    inv_letters,
    presentation,
    spanning_forest,
    word_target,
)


@dataclass(frozen=True)
class PregroupoidSubset:
    """Inversion-closed subset of a groupoid containing all identities."""

    ambient: FiniteGroupoid
    carrier: frozenset


def pregroupoid(G: FiniteGroupoid, carrier) -> PregroupoidSubset:
    carrier = frozenset(carrier)
    unknown = carrier - set(G.morphisms)
    if unknown:
        raise ValueError(f"not a morphism: {sorted(unknown)[0]!r}")
    for x in sorted(G.objects):
        if G.identity[x] not in carrier:
            raise ValueError(f"carrier misses the identity at {x!r}")
    for a in sorted(carrier):
        if G.inverse[a] not in carrier:
            raise ValueError(f"carrier not inversion-closed at {a!r}")
    return PregroupoidSubset(ambient=G, carrier=carrier)


@dataclass(frozen=True)
class MonodromyGroupoid:
    ambient: FiniteGroupoid
    subset: PregroupoidSubset
    graph: GeneratingGraph
    present: GroupoidPresentation
    relator_family: tuple      # (a, b, ab) triples, the defining family
    forest: Forest
    vertex_groups: tuple       # VertexGroupPresentation per component
    engines: tuple             # VertexGroupEngine per component
    generates_ambient: bool
    budget: int

    def component_of(self, x):
        return self.forest.vertex_component[x]

    def i_tilde(self, a) -> Word:
        """Universal map: one-letter word for a, empty word for an identity."""
        if a not in self.subset.carrier:
            raise ValueError(f"not in the generating subset: {a!r}")
        src = self.ambient.source[a]
        if self.ambient.is_identity(a):
            return Word((), src)
        return Word(((a, 1),), src)

    def token(self, w: Word):
        """((src, tgt, class token), exact) for the word's class."""
        engine = self.engines[self.component_of(w.base)]
        tok, exact = engine.token(collapse_letters(self.forest, self.graph, w.letters))
        return (w.base, word_target(self.graph, w), tok), exact

    def equal(self, w1: Word, w2: Word):
        """True / False / None (undecided at this budget)."""
        if w1.base != w2.base:
            return False
        if word_target(self.graph, w1) != word_target(self.graph, w2):
            return False
        engine = self.engines[self.component_of(w1.base)]
        return engine.is_trivial(
            collapse_letters(self.forest, self.graph,
                             w1.letters + inv_letters(w2.letters)))

    def vertex_group_info(self, component):
        e = self.engines[component]
        if e.kind == "free":
            return ("free", e.rank)
        if e.kind == "finite":
            return ("finite", e.order)
        return ("undecided", self.budget)


def build_monodromy(G: FiniteGroupoid, W: PregroupoidSubset,
                    budget=DEFAULT_BUDGET, edge_order=None) -> MonodromyGroupoid:
    if W.ambient is not G:
        raise ValueError("subset belongs to a different groupoid")
    carrier = W.carrier
    edges = {a: (G.source[a], G.target[a])
             for a in sorted(carrier) if not G.is_identity(a)}
    graph = GeneratingGraph(vertices=frozenset(G.objects), edges=edges)

    def letters_of(a):
        return () if G.is_identity(a) else ((a, 1),)

    family, relator_words = [], []
    for a, b in itertools.product(sorted(carrier), repeat=2):
        if G.target[a] != G.source[b]:
            continue
        ab = G.compose[(a, b)]
        if ab not in carrier:
            continue
        family.append((a, b, ab))
        letters = free_reduce(letters_of(a) + letters_of(b) + inv_letters(letters_of(ab)))
        if letters:
            relator_words.append(Word(letters, G.source[a]))
    present = presentation(graph, relator_words)
    forest = spanning_forest(graph, edge_order=edge_order)
    vgps = collapse_presentation(present, forest)
    engines = tuple(build_engine(v, budget=budget) for v in vgps)

    generates = generated_by(G, carrier)
    if not generates:
        warnings.warn("generating subset does not reach every morphism; "
                      "the evaluation map cannot be star-surjective",
                      stacklevel=2)
    return MonodromyGroupoid(ambient=G, subset=W, graph=graph, present=present,
                             relator_family=tuple(family), forest=forest,
                             vertex_groups=vgps, engines=engines,
                             generates_ambient=generates, budget=budget)


@dataclass(frozen=True)
class CanonicalMorphism:
    """Evaluation in the ambient groupoid: a word maps to the product of its
    letters.  Sends i~(a) back to a."""

    monodromy: MonodromyGroupoid

    def evaluate(self, w: Word):
        G = self.monodromy.ambient
        acc = G.identity[w.base]
        for e, s in w.letters:
            m = e if s > 0 else G.inverse[e]
            acc = G.compose[(acc, m)]
        return acc


def canonical_morphism(M: MonodromyGroupoid) -> CanonicalMorphism:
    p = CanonicalMorphism(monodromy=M)
    G = M.ambient
    for a, b, ab in M.relator_family:
        if G.compose[(a, b)] != ab:
            raise RuntimeError(f"corrupt composition table under relator {(a, b)!r}")
    return p


@dataclass(frozen=True)
class WordEvaluator:
    """A morphism out of the presented groupoid, tabulated on generators."""

    target: FiniteGroupoid
    obj_map: dict
    gen_map: dict  # carrier element -> target morphism

    def evaluate(self, w: Word):
        H = self.target
        acc = H.identity[self.obj_map[w.base]]
        for e, s in w.letters:
            m = self.gen_map[e] if s > 0 else H.inverse[self.gen_map[e]]
            acc = H.compose[(acc, m)]
        return acc


@dataclass(frozen=True)
class GlobalizationResult:
    morphism: WordEvaluator = None
    obstruction: tuple = None  # (a, b, ab) with f(a)f(b) != f(ab)

    @property
    def ok(self):
        return self.obstruction is None


def globalize(M: MonodromyGroupoid, f: dict, H: FiniteGroupoid) -> GlobalizationResult:
    """Extend f: W -> H to the whole presented groupoid.

    f must already respect sources, targets, identities and inversion on W
    (hard errors otherwise).  The extension exists iff f(a)f(b) = f(ab) for
    every defining triple; the first failing triple, in sorted order, is
    returned as the obstruction.  When it exists it is unique, being
    determined on the one-letter words.
    """
    G = M.ambient
    carrier = M.subset.carrier
    missing = sorted(a for a in carrier if a not in f)
    if missing:
        raise ValueError(f"map not defined on {missing[0]!r}")
    obj_map = {}
    for x in sorted(G.objects):
        fe = f[G.identity[x]]
        if fe not in H.morphisms:
            raise ValueError(f"image not a morphism: {fe!r}")
        y = H.source[fe]
        if H.identity[y] != fe:
            raise ValueError(f"identity at {x!r} not sent to an identity")
        obj_map[x] = y
    for a in sorted(carrier):
        fa = f[a]
        if fa not in H.morphisms:
            raise ValueError(f"image not a morphism: {fa!r}")
        if H.source[fa] != obj_map[G.source[a]] or H.target[fa] != obj_map[G.target[a]]:
            raise ValueError(f"endpoints not preserved at {a!r}")
        if f[G.inverse[a]] != H.inverse[fa]:
            raise ValueError(f"inversion not preserved at {a!r}")
    for a, b, ab in M.relator_family:
        if H.compose[(f[a], f[b])] != f[ab]:
            return GlobalizationResult(obstruction=(a, b, ab))
    return GlobalizationResult(
        morphism=WordEvaluator(target=H, obj_map=obj_map,
                               gen_map={a: f[a] for a in carrier}))


@dataclass(frozen=True)
class StarCoverReport:
    object: str
    depth: int
    reached: dict             # ambient star element -> distinct classes over it
    surjective_within_depth: bool
    undecided_depth: tuple    # reachable, but not within the window
    unreachable: tuple        # not a product of subset elements at all
    saturated: bool           # breadth-first search closed before the window ended
    fiber_counts_exact: bool  # False when the engine is undecided
    translate_collisions: tuple   # pairs a != b in W with i~(a) = i~(b)
    injectivity_undecided: tuple  # pairs the engine could not separate
    engine_kind: str

    @property
    def has_undecided(self):
        return (bool(self.undecided_depth) or bool(self.injectivity_undecided)
                or not self.fiber_counts_exact)


def star_covering_report(M: MonodromyGroupoid, p: CanonicalMorphism, x,
                         depth, budget=None) -> StarCoverReport:
    """How close p is to a covering over the star at x, within a depth window.

    Counts distinct word classes over every reached star element, separates
    "not reached yet" (deeper window needed, undecided) from "never reachable"
    (refutation), and checks that distinct subset elements stay distinct as
    one-letter words, which is what injectivity of p on translates amounts to.
    """
    G = M.ambient
    if x not in G.objects:
        raise ValueError(f"unknown object: {x!r}")
    carrier = M.subset.carrier
    gens = [a for a in sorted(carrier) if not G.is_identity(a)]
    engine = M.engines[M.component_of(x)]

    start = Word((), x)
    tok, _ = M.token(start)
    info = {tok: (start, G.identity[x])}
    frontier = [(start, G.identity[x])]
    saturated = False
    for _ in range(depth):
        if not frontier:
            saturated = True
            break
        fresh = []
        for w, val in frontier:
            at = word_target(M.graph, w)
            for a in gens:
                if G.source[a] != at:
                    continue
                w2 = Word(free_reduce(w.letters + ((a, 1),)), x)
                t2, _ = M.token(w2)
                if t2 in info:
                    continue
                v2 = G.compose[(val, a)]
                info[t2] = (w2, v2)
                fresh.append((w2, v2))
        frontier = fresh
    if not frontier:
        saturated = True

    reached = {}
    for w, val in info.values():
        reached[val] = reached.get(val, 0) + 1

    star = set(G.star(x))
    closure = {G.identity[x]}
    grow = True
    while grow:
        grow = False
        for g in sorted(closure):
            for a in sorted(carrier):
                if G.target[g] == G.source[a]:
                    h = G.compose[(g, a)]
                    if h not in closure:
                        closure.add(h)
                        grow = True
    unreachable = tuple(sorted(star - closure))
    undecided_depth = tuple(sorted((star & closure) - set(reached)))

    collisions, inj_undecided = [], []
    comp = M.component_of(x)
    members = [a for a in sorted(carrier)
               if M.component_of(G.source[a]) == comp]
    for a, b in itertools.combinations(members, 2):
        if G.source[a] != G.source[b] or G.target[a] != G.target[b]:
            continue
        eq = M.equal(M.i_tilde(a), M.i_tilde(b))
        if eq is True:
            collisions.append((a, b))
        elif eq is None:
            inj_undecided.append((a, b))

    return StarCoverReport(
        object=x, depth=depth, reached=reached,
        surjective_within_depth=not undecided_depth and not unreachable,
        undecided_depth=undecided_depth, unreachable=unreachable,
        saturated=saturated,
        fiber_counts_exact=engine.kind != "undecided",
        translate_collisions=tuple(collisions),
        injectivity_undecided=tuple(inj_undecided),
        engine_kind=engine.kind)


@dataclass(frozen=True)
class Pi1Result:
    groupoid: FiniteGroupoid
    subset: PregroupoidSubset
    monodromy: MonodromyGroupoid
    vertices: tuple            # vertices of the working graph, midpoints included
    component_ranks: tuple     # certified free rank per component, None if not free

    @property
    def rank(self):
        if any(r is None for r in self.component_ranks):
            return None
        return sum(self.component_ranks)


def pi1_graph(vertices, edges, budget=DEFAULT_BUDGET, edge_order=None) -> Pi1Result:
    """Fundamental-group data of a simple graph.

    Each edge is split at a midpoint before the pair groupoid and its
    adjacency subset are formed; splitting keeps |E| - |V| + #components
    intact and guarantees that no two-step product of adjacency pairs lands
    back in the subset, so the relators are exactly the backtracking ones and
    the vertex groups come out certified free.
    """
    vertices = sorted(vertices)
    if len(set(vertices)) != len(vertices):
        raise ValueError("duplicate vertices")
    vset = set(vertices)
    norm = []
    seen = set()
    for e in edges:
        u, v = e
        if u not in vset or v not in vset:
            raise ValueError(f"edge endpoint not a vertex: {e!r}")
        if u == v:
            raise ValueError(f"loop edge not allowed: {e!r}")
        k = (min(u, v), max(u, v))
        if k in seen:
            raise ValueError(f"duplicate edge: {e!r}")
        seen.add(k)
        norm.append(k)
    norm.sort()

    mids = {}
    for u, v in norm:
        m = f"mid({u},{v})"
        if m in vset:
            raise ValueError(f"vertex name collides with a midpoint: {m!r}")
        mids[(u, v)] = m
    allv = vertices + sorted(mids.values())
    G = pair_groupoid(allv)
    carrier = {G.identity[x] for x in allv}
    for (u, v), m in mids.items():
        for a, b in ((u, m), (m, u), (v, m), (m, v)):
            carrier.add(f"({a},{b})")
    W = pregroupoid(G, carrier)
    M = build_monodromy(G, W, budget=budget, edge_order=edge_order)
    ranks = tuple(e.rank for e in M.engines)
    return Pi1Result(groupoid=G, subset=W, monodromy=M,
                     vertices=tuple(allv), component_ranks=ranks)
