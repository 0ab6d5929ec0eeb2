"""Words over a generating graph and the machinery that decides them.

A generating graph has named vertices and directed edges; a letter is a pair
(edge id, sign) and stands for the edge or its formal inverse.  A word is a
composable chain of letters anchored at a base vertex (so the empty word at a
vertex is representable).

The word-problem pipeline is:

  spanning forest (deterministic breadth-first, lexicographic edge order)
    -> collapse every relator to a one-object presentation per component
    -> eliminate generators that occur exactly once in some relator
       (records substitutions, so words can be canonicalized later)
    -> free normal forms if no relations survive, otherwise coset
       enumeration under an explicit row budget.

Outcomes are three-valued: trivial, nontrivial with a certificate, or
undecided when the budget runs out and no free fallback applies.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

DEFAULT_BUDGET = 10000

Letter = tuple  # (edge id, +1 | -1)


@dataclass(frozen=True)
class GeneratingGraph:
    vertices: frozenset
    edges: dict  # edge id -> (src, tgt)

    def letter_ends(self, letter):
        e, s = letter
        u, v = self.edges[e]
        return (u, v) if s > 0 else (v, u)


@dataclass(frozen=True)
class Word:
    letters: tuple
    base: str  # source vertex


def inv_letters(letters):
    return tuple((e, -s) for e, s in reversed(letters))


def free_reduce(letters):
    out = []
    for e, s in letters:
        if out and out[-1] == (e, -s):
            out.pop()
        else:
            out.append((e, s))
    return tuple(out)


def word(graph: GeneratingGraph, letters, base=None) -> Word:
    """Build a word, checking that consecutive letters chain up."""
    letters = tuple(letters)
    at = base
    for i, letter in enumerate(letters):
        u, v = graph.letter_ends(letter)
        if at is None:
            at = u
        if u != at:
            raise ValueError(f"letter {i} starts at {u!r}, expected {at!r}")
        at = v
    if not letters:
        if base is None:
            raise ValueError("empty word needs a base vertex")
        if base not in graph.vertices:
            raise ValueError(f"unknown vertex: {base!r}")
        return Word((), base)
    src = graph.letter_ends(letters[0])[0]
    if base is not None and base != src:
        raise ValueError(f"base {base!r} does not match first letter at {src!r}")
    return Word(letters, src)


def word_target(graph: GeneratingGraph, w: Word):
    return graph.letter_ends(w.letters[-1])[1] if w.letters else w.base


def reduce_word(graph: GeneratingGraph, w: Word) -> Word:
    return Word(free_reduce(w.letters), w.base)


def invert_word(graph: GeneratingGraph, w: Word) -> Word:
    return Word(inv_letters(w.letters), word_target(graph, w))


def concat(graph: GeneratingGraph, a: Word, b: Word) -> Word:
    if word_target(graph, a) != b.base:
        raise ValueError("words do not chain")
    return Word(free_reduce(a.letters + b.letters), a.base)


@dataclass(frozen=True)
class ForestComponent:
    base: str
    vertices: frozenset
    tree_edges: frozenset
    paths: dict  # vertex -> Word from base


@dataclass(frozen=True)
class Forest:
    components: tuple
    vertex_component: dict


def spanning_forest(graph: GeneratingGraph, edge_order=None) -> Forest:
    """Breadth-first spanning forest.

    Deterministic: components rooted at their smallest vertex, neighbors
    explored by edge order (default lexicographic), forward direction before
    backward.  `edge_order` overrides the edge ranking, which is enough to
    exercise order-invariance of downstream ranks.
    """
    order = {e: i for i, e in enumerate(sorted(graph.edges) if edge_order is None
                                        else list(edge_order))}
    if set(order) != set(graph.edges):
        raise ValueError("edge_order must be a permutation of the edge ids")
    incidence = {v: [] for v in graph.vertices}
    for e, (u, v) in graph.edges.items():
        incidence[u].append((e, 1))
        incidence[v].append((e, -1))
    for v in incidence:
        incidence[v].sort(key=lambda l: (order[l[0]], 0 if l[1] > 0 else 1))

    comps, vertex_component = [], {}
    for root in sorted(graph.vertices):
        if root in vertex_component:
            continue
        idx = len(comps)
        paths = {root: Word((), root)}
        tree = set()
        vertex_component[root] = idx
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for e, s in incidence[u]:
                v = graph.letter_ends((e, s))[1]
                if v in paths:
                    continue
                paths[v] = Word(paths[u].letters + ((e, s),), root)
                tree.add(e)
                vertex_component[v] = idx
                queue.append(v)
        comps.append(ForestComponent(base=root, vertices=frozenset(paths),
                                     tree_edges=frozenset(tree), paths=paths))
    return Forest(components=tuple(comps), vertex_component=vertex_component)


@dataclass(frozen=True)
class GroupoidPresentation:
    graph: GeneratingGraph
    relators: tuple  # closed Words


def presentation(graph, relators) -> GroupoidPresentation:
    rels = []
    for r in relators:
        r = r if isinstance(r, Word) else word(graph, r)
        if word_target(graph, r) != r.base:
            raise ValueError(f"relator not closed: {r.letters!r}")
        rels.append(r)
    return GroupoidPresentation(graph=graph, relators=tuple(rels))


@dataclass(frozen=True)
class VertexGroupPresentation:
    base: str
    generators: tuple  # non-tree edge ids, sorted
    relations: tuple   # letter tuples over the generators


def collapse_letters(forest: Forest, graph: GeneratingGraph, letters):
    """Image of a chain of letters after contracting the tree: tree letters
    vanish, the rest keep their names.  Freely reduced."""
    comp_trees = [c.tree_edges for c in forest.components]
    kept = []
    for e, s in letters:
        u = graph.letter_ends((e, s))[0]
        if e not in comp_trees[forest.vertex_component[u]]:
            kept.append((e, s))
    return free_reduce(kept)


def cyclic_reduce(letters):
    letters = free_reduce(letters)
    while len(letters) >= 2 and letters[0] == (letters[-1][0], -letters[-1][1]):
        letters = free_reduce(letters[1:-1])
    return letters


def canonical_relator(letters):
    """Least rotation of the word or its inverse; used to dedupe relators."""
    candidates = []
    for w in (letters, inv_letters(letters)):
        for i in range(len(w) or 1):
            candidates.append(w[i:] + w[:i])
    return min(candidates) if candidates else ()


def collapse_presentation(P: GroupoidPresentation, forest: Forest):
    """One vertex-group presentation per forest component."""
    out = []
    for ci, comp in enumerate(forest.components):
        gens = sorted(e for e, (u, _) in P.graph.edges.items()
                      if forest.vertex_component[u] == ci and e not in comp.tree_edges)
        rels = set()
        for r in P.relators:
            if forest.vertex_component[r.base] != ci:
                continue
            w = cyclic_reduce(collapse_letters(forest, P.graph, r.letters))
            if w:
                rels.add(canonical_relator(w))
        out.append(VertexGroupPresentation(base=comp.base, generators=tuple(gens),
                                           relations=tuple(sorted(rels))))
    return tuple(out)


# ------------------------------------------------------------- simplification

@dataclass(frozen=True)
class SimplifiedPresentation:
    generators: tuple
    relations: tuple
    eliminations: tuple  # (gen, replacement letters), in order of application


def _substitute(letters, gen, repl):
    out = []
    for e, s in letters:
        if e == gen:
            out.extend(repl if s > 0 else inv_letters(repl))
        else:
            out.append((e, s))
    return free_reduce(tuple(out))


def simplify_presentation(generators, relations) -> SimplifiedPresentation:
    """Eliminate generators that occur exactly once in some relation.

    Solving such a relation for its lone generator is a substitution that
    preserves the presented group; repeating it shrinks presentations like
    <g1, g4 | g1 g4, g4 g1> down to a free one, which is what lets a free
    rank be certified instead of guessed.
    """
    gens = list(generators)
    rels = {canonical_relator(cyclic_reduce(r)) for r in relations}
    rels.discard(())
    eliminations = []
    while True:
        pick = None
        for r in sorted(rels, key=lambda w: (len(w), w)):
            counts = {}
            for e, _ in r:
                counts[e] = counts.get(e, 0) + 1
            for i, (e, s) in enumerate(r):
                if counts[e] == 1:
                    pick = (r, i, e, s)
                    break
            if pick:
                break
        if not pick:
            break
        r, i, g, s = pick
        u, v = r[:i], r[i + 1:]
        repl = (inv_letters(u) + inv_letters(v)) if s > 0 else (v + u)
        repl = free_reduce(repl)
        rels.remove(r)
        rels = {canonical_relator(cyclic_reduce(_substitute(w, g, repl))) for w in rels}
        rels.discard(())
        gens.remove(g)
        eliminations.append((g, repl))
    return SimplifiedPresentation(generators=tuple(gens),
                                  relations=tuple(sorted(rels)),
                                  eliminations=tuple(eliminations))


def rewrite_through(eliminations, letters):
    letters = free_reduce(letters)
    for g, repl in eliminations:
        letters = _substitute(letters, g, repl)
    return letters


# ---------------------------------------------------------- coset enumeration

@dataclass(frozen=True)
class Exhausted:
    budget: int
    rows_used: int


@dataclass(frozen=True)
class CosetTable:
    generators: tuple
    size: int
    action: dict          # gen -> tuple of images, the right action
    inverse_action: dict

    def follow(self, letters, start=0):
        c = start
        for e, s in letters:
            c = (self.action if s > 0 else self.inverse_action)[e][c]
        return c


class _Budget(Exception):
    pass


def coset_enumeration(gp, budget=DEFAULT_BUDGET):
    """Enumerate cosets of the trivial subgroup.

    Returns a CosetTable (the regular action; its size is the group order)
    or Exhausted once more than `budget` rows have been allocated.  Every
    generator is additionally traced against g g^-1, which forces the table
    to be total whenever the enumeration completes, so a completed table
    really is a permutation representation satisfying every relation.
    """
    gens = tuple(gp.generators)
    rel_words = list(gp.relations)
    ncols = 2 * len(gens)
    col = {}
    for i, g in enumerate(gens):
        col[(g, 1)] = 2 * i
        col[(g, -1)] = 2 * i + 1
    rels = [tuple(col[l] for l in w) for w in rel_words]
    for i in range(len(gens)):
        rels.append((2 * i, 2 * i + 1))  # g g^-1

    labels = []     # union-find
    neighbors = []  # per vertex: list of ncols ints, -1 for undefined

    def new_vertex():
        if len(labels) >= budget:
            raise _Budget
        labels.append(len(labels))
        neighbors.append([-1] * ncols)
        return len(labels) - 1

    def find(c):
        while labels[c] != c:
            labels[c] = labels[labels[c]]
            c = labels[c]
        return c

    def unify(a, b):
        stack = [(a, b)]
        while stack:
            a, b = stack.pop()
            a, b = find(a), find(b)
            if a == b:
                continue
            if b < a:
                a, b = b, a
            labels[b] = a
            na, nb = neighbors[a], neighbors[b]
            for k in range(ncols):
                if nb[k] == -1:
                    continue
                if na[k] == -1:
                    na[k] = nb[k]
                else:
                    stack.append((na[k], nb[k]))

    def step(c, k):
        c = find(c)
        d = neighbors[c][k]
        if d == -1:
            d = new_vertex()
            neighbors[c][k] = d
            neighbors[d][k ^ 1] = c
        return find(d)

    try:
        new_vertex()
        idx = 0
        while idx < len(labels):
            c = find(idx)
            if c == idx:
                for rel in rels:
                    d = c
                    for k in rel:
                        d = step(d, k)
                    unify(d, c)
            idx += 1
    except _Budget:
        return Exhausted(budget=budget, rows_used=len(labels))

    live = sorted({find(i) for i in range(len(labels))})
    index = {c: i for i, c in enumerate(live)}
    action, inverse_action = {}, {}
    for gi, g in enumerate(gens):
        fwd, bwd = [], []
        for c in live:
            d = neighbors[c][2 * gi]
            e = neighbors[c][2 * gi + 1]
            assert d != -1 and e != -1  # totality from the g g^-1 traces
            fwd.append(index[find(d)])
            bwd.append(index[find(e)])
        action[g] = tuple(fwd)
        inverse_action[g] = tuple(bwd)
    return CosetTable(generators=gens, size=len(live),
                      action=action, inverse_action=inverse_action)


# ------------------------------------------------------------------- verdicts

@dataclass(frozen=True)
class WordProblemVerdict:
    status: str  # "trivial" | "nontrivial" | "undecided"
    certificate: tuple = ()
    budget: int = DEFAULT_BUDGET


@dataclass(frozen=True)
class VertexGroupEngine:
    """Normal forms for one collapsed vertex group.

    kind is "free" (no relations survived simplification; tokens are free
    normal forms), "finite" (enumeration completed; tokens are coset
    indices), or "undecided" (budget ran out; tokens are still sound for
    equality but cannot certify inequality)."""

    vgp: VertexGroupPresentation
    simplified: SimplifiedPresentation
    kind: str
    table: CosetTable = None
    budget: int = DEFAULT_BUDGET

    @property
    def rank(self):
        return len(self.simplified.generators) if self.kind == "free" else None

    @property
    def order(self):
        if self.kind == "free":
            return 1 if not self.simplified.generators else None
        return self.table.size if self.kind == "finite" else None

    def normal_letters(self, letters):
        return free_reduce(rewrite_through(self.simplified.eliminations, letters))

    def token(self, letters):
        """(token, exact).  Equal tokens always mean equal elements; when
        exact is False, distinct tokens prove nothing."""
        nf = self.normal_letters(letters)
        if self.kind == "finite":
            return self.table.follow(nf), True
        return nf, self.kind == "free"

    def is_trivial(self, letters):
        nf = self.normal_letters(letters)
        if not nf:
            return True
        if self.kind == "free":
            return False
        if self.kind == "finite":
            return self.table.follow(nf) == 0
        return None


def build_engine(vgp: VertexGroupPresentation, budget=DEFAULT_BUDGET) -> VertexGroupEngine:
    simp = simplify_presentation(vgp.generators, vgp.relations)
    if not simp.relations:
        return VertexGroupEngine(vgp=vgp, simplified=simp, kind="free", budget=budget)
    table = coset_enumeration(simp, budget=budget)
    if isinstance(table, Exhausted):
        return VertexGroupEngine(vgp=vgp, simplified=simp, kind="undecided", budget=budget)
    return VertexGroupEngine(vgp=vgp, simplified=simp, kind="finite",
                             table=table, budget=budget)


def word_problem(P: GroupoidPresentation, w: Word, budget=DEFAULT_BUDGET) -> WordProblemVerdict:
    """Decide whether w is an identity of the presented groupoid."""
    w = reduce_word(P.graph, w)
    if word_target(P.graph, w) != w.base:
        return WordProblemVerdict("nontrivial",
                                  ("endpoints", w.base, word_target(P.graph, w)), budget)
    forest = spanning_forest(P.graph)
    vgps = collapse_presentation(P, forest)
    engine = build_engine(vgps[forest.vertex_component[w.base]], budget=budget)
    nf = engine.normal_letters(collapse_letters(forest, P.graph, w.letters))
    if not nf:
        return WordProblemVerdict("trivial", (), budget)
    if engine.kind == "free":
        return WordProblemVerdict("nontrivial", ("free-normal-form", nf), budget)
    if engine.kind == "finite":
        c = engine.table.follow(nf)
        if c == 0:
            return WordProblemVerdict("trivial", (), budget)
        return WordProblemVerdict("nontrivial", ("coset", c, engine.table.size), budget)
    return WordProblemVerdict("undecided", ("budget", budget), budget)
