"""Finite groupoids as explicit lookup tables.

A groupoid here is plain data: objects, morphisms with source/target, one
identity morphism per object, a total inversion map, and a partial
composition table defined exactly on the pairs (a, b) with tgt(a) == src(b).
Composition is written in diagram order: a: x -> y composed with b: y -> z
gives ab: x -> z.

Nothing is validated on construction.  ``validate_groupoid`` checks every
axiom exhaustively and returns violations as data, each with a witness that
can be replayed against the table, so a corrupt candidate is something you
can inspect rather than an exception.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field


@dataclass(frozen=True)
class FiniteGroupoid:
    """Explicit composition tables.  Treated as immutable after construction."""

    objects: frozenset
    source: dict
    target: dict
    identity: dict       # object -> morphism id
    inverse: dict        # morphism id -> morphism id
    compose: dict        # (a, b) -> ab, for tgt(a) == src(b)

    @property
    def morphisms(self):
        return self.source.keys()

    def star(self, x):
        """All morphisms with source x, sorted."""
        if x not in self.objects:
            raise ValueError(f"unknown object: {x!r}")
        return [m for m in sorted(self.source) if self.source[m] == x]

    def costar(self, x):
        """All morphisms with target x, sorted."""
        if x not in self.objects:
            raise ValueError(f"unknown object: {x!r}")
        return [m for m in sorted(self.target) if self.target[m] == x]

    def hom(self, x, y):
        return [m for m in self.star(x) if self.target[m] == y]

    def is_identity(self, m):
        return self.identity.get(self.source[m]) == m

    def mul(self, *ms):
        """Compose a chain of morphisms, left to right.  Raises on a gap."""
        if not ms:
            raise ValueError("empty product")
        acc = ms[0]
        for m in ms[1:]:
            key = (acc, m)
            if key not in self.compose:
                raise ValueError(f"not composable: {acc!r} then {m!r}")
            acc = self.compose[key]
        return acc


@dataclass(frozen=True)
class GroupoidMorphism:
    """A functor between finite groupoids, stored as explicit maps."""

    obj_map: dict
    mor_map: dict


@dataclass(frozen=True)
class WideSubgroupoid:
    carrier: frozenset


@dataclass(frozen=True)
class NormalSubgroupoid:
    """Totally disconnected wide subgroupoid, closed under conjugation."""

    carrier: frozenset


@dataclass(frozen=True)
class Violation:
    kind: str
    witness: tuple


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = field(default_factory=tuple)

    @property
    def ok(self):
        return not self.violations

    def of_kind(self, kind):
        return [v for v in self.violations if v.kind == kind]


def validate_groupoid(G: FiniteGroupoid) -> ValidationReport:
    """Exhaustively check the groupoid axioms on a candidate table.

    Violations carry replayable witnesses.  Checks are guarded so that one
    corrupt entry is reported once at its root cause: a composition entry
    with bad endpoints is excluded from the associativity and inverse-law
    scans instead of cascading into derived failures.
    """
    out = []
    objects = G.objects
    morphs = set(G.source)

    # reference integrity
    for m in sorted(morphs):
        if G.source[m] not in objects:
            out.append(Violation("dangling-reference", ("src", m, G.source[m])))
        if m not in G.target:
            out.append(Violation("dangling-reference", ("target-missing", m)))
        elif G.target[m] not in objects:
            out.append(Violation("dangling-reference", ("tgt", m, G.target[m])))
    for m in sorted(set(G.target) - morphs):
        out.append(Violation("dangling-reference", ("target-extra", m)))
    for x in sorted(objects):
        if x not in G.identity:
            out.append(Violation("identity-missing", (x,)))
        elif G.identity[x] not in morphs:
            out.append(Violation("dangling-reference", ("identity", x, G.identity[x])))
    for m in sorted(morphs):
        if m not in G.inverse:
            out.append(Violation("inverse-missing", (m,)))
        elif G.inverse[m] not in morphs:
            out.append(Violation("dangling-reference", ("inverse", m, G.inverse[m])))
    for (a, b), c in sorted(G.compose.items()):
        for m in (a, b, c):
            if m not in morphs:
                out.append(Violation("dangling-reference", ("compose", a, b, m)))
    if out:
        # structure too broken for the table scans below to mean anything
        return ValidationReport(tuple(out))

    src, tgt, comp = G.source, G.target, G.compose

    # identity endpoints
    bad_identity_obj = set()
    for x in sorted(objects):
        e = G.identity[x]
        if src[e] != x or tgt[e] != x:
            out.append(Violation("identity-endpoint", (x, e)))
            bad_identity_obj.add(x)

    # composition domain, totality, endpoints
    poisoned = set()  # compose keys whose entry is unusable downstream
    by_src = {}
    for m in morphs:
        by_src.setdefault(src[m], []).append(m)
    for lst in by_src.values():
        lst.sort()
    for a in sorted(morphs):
        for b in by_src.get(tgt[a], ()):
            if (a, b) not in comp:
                out.append(Violation("compose-missing", (a, b)))
                poisoned.add((a, b))
    for (a, b), c in sorted(comp.items()):
        if tgt[a] != src[b]:
            out.append(Violation("compose-domain", (a, b)))
            poisoned.add((a, b))
        elif src[c] != src[a] or tgt[c] != tgt[b]:
            out.append(Violation("compose-endpoint", (a, b, c)))
            poisoned.add((a, b))

    def product(a, b):
        if (a, b) in poisoned:
            return None
        return comp.get((a, b))

    # identity laws
    for m in sorted(morphs):
        x, y = src[m], tgt[m]
        if x not in bad_identity_obj:
            lm = product(G.identity[x], m)
            if lm is not None and lm != m:
                out.append(Violation("left-identity", (m,)))
        if y not in bad_identity_obj:
            mr = product(m, G.identity[y])
            if mr is not None and mr != m:
                out.append(Violation("right-identity", (m,)))

    # inverse endpoints and laws
    for a in sorted(morphs):
        ai = G.inverse[a]
        if src[ai] != tgt[a] or tgt[ai] != src[a]:
            out.append(Violation("inverse-endpoint", (a, ai)))
            continue
        left = product(a, ai)
        if left is not None and src[a] not in bad_identity_obj and left != G.identity[src[a]]:
            out.append(Violation("inverse-law", (a, "left")))
        right = product(ai, a)
        if right is not None and tgt[a] not in bad_identity_obj and right != G.identity[tgt[a]]:
            out.append(Violation("inverse-law", (a, "right")))

    # associativity on every composable triple with intact intermediates
    for a in sorted(morphs):
        for b in by_src.get(tgt[a], ()):
            ab = product(a, b)
            if ab is None:
                continue
            for c in by_src.get(tgt[b], ()):
                bc = product(b, c)
                if bc is None:
                    continue
                lhs = product(ab, c)
                rhs = product(a, bc)
                if lhs is not None and rhs is not None and lhs != rhs:
                    out.append(Violation("associativity", (a, b, c)))

    return ValidationReport(tuple(out))


def pair_groupoid(points) -> FiniteGroupoid:
    """The groupoid with exactly one morphism (x, y) between any two points."""
    pts = sorted(points)
    if not pts:
        raise ValueError("pair groupoid needs at least one point")
    if len(set(pts)) != len(pts):
        raise ValueError("duplicate points")
    mid = lambda x, y: f"({x},{y})"
    source, target = {}, {}
    for x, y in itertools.product(pts, pts):
        source[mid(x, y)] = x
        target[mid(x, y)] = y
    identity = {x: mid(x, x) for x in pts}
    inverse = {mid(x, y): mid(y, x) for x, y in itertools.product(pts, pts)}
    compose = {}
    for x, y, z in itertools.product(pts, pts, pts):
        compose[(mid(x, y), mid(y, z))] = mid(x, z)
    return FiniteGroupoid(
        objects=frozenset(pts), source=source, target=target,
        identity=identity, inverse=inverse, compose=compose,
    )


def components(G: FiniteGroupoid):
    """Connected components of the object set, as sorted lists."""
    adj = {x: set() for x in G.objects}
    for m in G.morphisms:
        adj[G.source[m]].add(G.target[m])
        adj[G.target[m]].add(G.source[m])
    seen, comps = set(), []
    for x in sorted(G.objects):
        if x in seen:
            continue
        comp, queue = [], [x]
        seen.add(x)
        while queue:
            v = queue.pop()
            comp.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def generated_by(G: FiniteGroupoid, carrier) -> bool:
    """Does the closure of `carrier` under composition and inversion reach
    every morphism?  `carrier` must contain all identities."""
    carrier = set(carrier)
    for x in sorted(G.objects):
        if G.identity[x] not in carrier:
            raise ValueError(f"carrier misses identity at {x!r}")
    unknown = carrier - set(G.morphisms)
    if unknown:
        raise ValueError(f"carrier not a subset of morphisms: {sorted(unknown)[0]!r}")
    closure = set(carrier)
    frontier = set(carrier)
    while frontier:
        fresh = set()
        for a in frontier:
            inv = G.inverse[a]
            if inv not in closure:
                fresh.add(inv)
        for a in list(closure):
            for b in list(closure):
                c = G.compose.get((a, b))
                if c is not None and c not in closure:
                    fresh.add(c)
        closure |= fresh
        frontier = fresh
    return closure == set(G.morphisms)


def check_wide_subgroupoid(G: FiniteGroupoid, carrier) -> list:
    """Reasons `carrier` fails to be a wide subgroupoid (empty list = fine)."""
    carrier = set(carrier)
    problems = []
    if not carrier <= set(G.morphisms):
        problems.append(("not-a-morphism", sorted(carrier - set(G.morphisms))[0]))
        return problems
    for x in sorted(G.objects):
        if G.identity[x] not in carrier:
            problems.append(("identity-missing", x))
    for a in sorted(carrier):
        if G.inverse[a] not in carrier:
            problems.append(("inverse-escapes", a))
    for a in sorted(carrier):
        for b in sorted(carrier):
            c = G.compose.get((a, b))
            if c is not None and c not in carrier:
                problems.append(("composite-escapes", (a, b, c)))
    return problems


def check_normal_subgroupoid(G: FiniteGroupoid, carrier) -> list:
    """Reasons `carrier` fails to be normal: wide, totally disconnected
    (endomorphisms only), and closed under conjugation by every morphism."""
    problems = check_wide_subgroupoid(G, carrier)
    if problems:
        return problems
    for n in sorted(carrier):
        if G.source[n] != G.target[n]:
            problems.append(("not-totally-disconnected", n))
    if problems:
        return problems
    for n in sorted(carrier):
        x = G.source[n]
        for g in G.costar(x):
            conj = G.mul(g, n, G.inverse[g])
            if conj not in carrier:
                problems.append(("conjugate-escapes", (g, n, conj)))
    return problems


def normal_closure(G: FiniteGroupoid, seeds) -> NormalSubgroupoid:
    """Smallest normal subgroupoid containing `seeds` (endomorphisms only)."""
    seeds = set(seeds)
    for s in sorted(seeds):
        if s not in G.morphisms:
            raise ValueError(f"unknown morphism: {s!r}")
        if G.source[s] != G.target[s]:
            raise ValueError(f"seed is not an endomorphism: {s!r}")
    carrier = {G.identity[x] for x in G.objects} | seeds
    changed = True
    while changed:
        changed = False
        for n in sorted(carrier):
            inv = G.inverse[n]
            if inv not in carrier:
                carrier.add(inv)
                changed = True
        for a in sorted(carrier):
            for b in sorted(carrier):
                c = G.compose.get((a, b))
                if c is not None and c not in carrier:
                    carrier.add(c)
                    changed = True
        for n in sorted(carrier):
            x = G.source[n]
            for g in G.costar(x):
                conj = G.mul(g, n, G.inverse[g])
                if conj not in carrier:
                    carrier.add(conj)
                    changed = True
    return NormalSubgroupoid(carrier=frozenset(carrier))


def quotient(G: FiniteGroupoid, N: NormalSubgroupoid):
    """Object-preserving quotient by a normal subgroupoid.

    Morphisms of the quotient are cosets; each coset is named by its
    lexicographically smallest member.  Returns (quotient, projection).
    """
    problems = check_normal_subgroupoid(G, N.carrier)
    if problems:
        raise ValueError(f"not a normal subgroupoid: {problems[0]!r}")
    n_at = {}
    for n in N.carrier:
        n_at.setdefault(G.source[n], []).append(n)

    def coset(a):
        return frozenset(G.compose[(n, a)] for n in n_at[G.source[a]])

    rep = {}
    for a in sorted(G.morphisms):
        rep[a] = min(coset(a))
    reps = sorted(set(rep.values()))
    source = {r: G.source[r] for r in reps}
    target = {r: G.target[r] for r in reps}
    identity = {x: rep[G.identity[x]] for x in G.objects}
    inverse = {r: rep[G.inverse[r]] for r in reps}
    compose = {}
    for a in reps:
        for b in reps:
            if G.target[a] == G.source[b]:
                compose[(a, b)] = rep[G.compose[(a, b)]]
    Q = FiniteGroupoid(objects=G.objects, source=source, target=target,
                       identity=identity, inverse=inverse, compose=compose)
    proj = GroupoidMorphism(obj_map={x: x for x in G.objects}, mor_map=dict(rep))
    return Q, proj


def validate_morphism(dom: FiniteGroupoid, cod: FiniteGroupoid,
                      f: GroupoidMorphism) -> ValidationReport:
    """Exhaustive functor check: totality, endpoints, identities,
    composition, inversion."""
    out = []
    for x in sorted(dom.objects):
        if x not in f.obj_map:
            out.append(Violation("object-unmapped", (x,)))
        elif f.obj_map[x] not in cod.objects:
            out.append(Violation("object-image-unknown", (x, f.obj_map[x])))
    for m in sorted(dom.morphisms):
        if m not in f.mor_map:
            out.append(Violation("morphism-unmapped", (m,)))
        elif f.mor_map[m] not in cod.morphisms:
            out.append(Violation("morphism-image-unknown", (m, f.mor_map[m])))
    if out:
        return ValidationReport(tuple(out))
    for m in sorted(dom.morphisms):
        fm = f.mor_map[m]
        if cod.source[fm] != f.obj_map[dom.source[m]]:
            out.append(Violation("source-not-preserved", (m,)))
        if cod.target[fm] != f.obj_map[dom.target[m]]:
            out.append(Violation("target-not-preserved", (m,)))
        if f.mor_map[dom.inverse[m]] != cod.inverse[fm]:
            out.append(Violation("inverse-not-preserved", (m,)))
    for x in sorted(dom.objects):
        if f.mor_map[dom.identity[x]] != cod.identity[f.obj_map[x]]:
            out.append(Violation("identity-not-preserved", (x,)))
    for (a, b), c in sorted(dom.compose.items()):
        img = cod.compose.get((f.mor_map[a], f.mor_map[b]))
        if img != f.mor_map[c]:
            out.append(Violation("composition-not-preserved", (a, b)))
    return ValidationReport(tuple(out))
