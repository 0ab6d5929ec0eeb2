"""Finite topological spaces as explicit open-set families.

Everything here is exhaustively decidable: a topology is its full list of
open sets, continuity is the literal preimage test against every open, and
the constructions (products, subspaces, pullbacks of a groupoid's structure
maps) materialize their families.  To keep that honest, families are capped
at 2**16 sets; anything that would grow past the cap raises
`TopologySizeError` instead of silently thrashing.

The one place a family is *not* materialized is inside
`check_topological_groupoid`: the composition and difference maps live on
pullbacks of a product, whose family is exponentially larger than its
factors.  Openness there is decided through minimal neighborhoods —
a set S is open in the (subspace of the) product iff for each of its points
(a, b) the rectangle U_a x U_b stays inside S — which needs only the factor
topology.  Tests replay these certificates against small materialized
pullbacks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

MAX_OPENS = 1 << 16


class TopologySizeError(Exception):
    """An open family (or one being generated) exceeded the 2**16 cap."""


@dataclass(frozen=True)
class FiniteTopology:
    points: tuple
    opens: frozenset  # of frozensets

    def is_open(self, s) -> bool:
        return frozenset(s) in self.opens

    def minimal_neighborhood(self, p):
        return minimal_neighborhoods(self)[p]


@lru_cache(maxsize=256)
def minimal_neighborhoods(T: FiniteTopology) -> dict:
    """Smallest open set around each point (an intersection of opens, hence
    itself open in any valid finite topology)."""
    full = frozenset(T.points)
    mins = {p: full for p in T.points}
    for o in T.opens:
        for p in o:
            mins[p] = mins[p] & o
    return mins


def minimal_basis(T: FiniteTopology) -> frozenset:
    return frozenset(minimal_neighborhoods(T).values())


@dataclass(frozen=True)
class TopologyReport:
    ok: bool
    kind: str = None      # missing-empty | uncovered-point | missing-intersection | missing-union
    witness: tuple = None  # a pair of family members, or the offending point


def is_topology(points, family) -> TopologyReport:
    """Decide the closure axioms, with a witness pair on failure.

    Linear in |family| * |points|: it is enough that the empty set is
    present, every point has a smallest neighborhood inside the family, and
    the family is closed under union with smallest neighborhoods.  Closure
    under all unions and intersections follows, since every open is the
    union of the smallest neighborhoods of its points.
    """
    points = frozenset(points)
    fam = set()
    for s in family:
        s = frozenset(s)
        if not s <= points:
            raise ValueError(f"family member not a subset of the points: {sorted(s - points)[0]!r}")
        fam.add(s)

    if len(fam) == 1 << len(points):  # the whole powerset, nothing to check
        return TopologyReport(ok=True)
    if frozenset() not in fam:
        return TopologyReport(ok=False, kind="missing-empty", witness=(frozenset(),))

    mins = {}
    for p in sorted(points):
        around = sorted((o for o in fam if p in o),
                        key=lambda s: (len(s), sorted(map(str, s))))
        if not around:
            return TopologyReport(ok=False, kind="uncovered-point", witness=(p,))
        acc = around[0]
        for o in around[1:]:
            nxt = acc & o
            if nxt not in fam:
                # fold step leaves the family: acc and o are a bad pair
                return TopologyReport(ok=False, kind="missing-intersection",
                                      witness=(acc, o))
            acc = nxt
        mins[p] = acc  # every fold step stayed inside, so this is in fam

    for a in sorted(fam, key=lambda s: (len(s), sorted(map(str, s)))):
        for p in sorted(points):
            if a | mins[p] not in fam:
                return TopologyReport(ok=False, kind="missing-union",
                                      witness=(a, mins[p]))
    return TopologyReport(ok=True)


def topology(points, opens) -> FiniteTopology:
    """Validated constructor; the only way a FiniteTopology should be made."""
    opens = frozenset(frozenset(o) for o in opens)
    if len(opens) > MAX_OPENS:
        raise TopologySizeError(f"{len(opens)} open sets exceeds the cap of {MAX_OPENS}")
    rep = is_topology(points, opens)
    if not rep.ok:
        raise ValueError(f"not a topology ({rep.kind}): witness {rep.witness!r}")
    return FiniteTopology(points=tuple(sorted(points)), opens=opens)


def discrete(points) -> FiniteTopology:
    pts = sorted(points)
    if len(pts) > 16:
        raise TopologySizeError(f"discrete topology on {len(pts)} points exceeds the cap")
    opens = [frozenset(c) for r in range(len(pts) + 1)
             for c in itertools.combinations(pts, r)]
    return FiniteTopology(points=tuple(pts), opens=frozenset(opens))


def indiscrete(points) -> FiniteTopology:
    pts = tuple(sorted(points))
    return FiniteTopology(points=pts, opens=frozenset({frozenset(), frozenset(pts)}))


@dataclass(frozen=True)
class GeneratedTopology:
    topology: FiniteTopology
    base_compatible: bool  # False: intersections forced subbase treatment


def _union_closure(seeds, cap_context):
    seeds = [frozenset(s) for s in seeds]
    fam = {frozenset()} | set(seeds)
    work = list(fam)
    while work:
        cur = work.pop()
        for b in seeds:
            u = cur | b
            if u not in fam:
                fam.add(u)
                work.append(u)
                if len(fam) > MAX_OPENS:
                    raise TopologySizeError(
                        f"union closure passed {MAX_OPENS} sets while {cap_context}")
    return fam


def generate_from_base(points, base) -> GeneratedTopology:
    """All unions of base members; falls back to subbase treatment (closing
    under pairwise intersection first) when the base is not
    intersection-compatible, flagging that it did."""
    points = frozenset(points)
    base = [frozenset(b) for b in base]
    for b in base:
        if not b <= points:
            raise ValueError(f"base member not a subset of the points: {sorted(b)!r}")
    covered = frozenset().union(*base) if base else frozenset()
    if covered != points:
        raise ValueError(f"base fails to cover: {sorted(points - covered)[0]!r} missing")

    def union_of_members(s, members):
        return all(any(p in b and b <= s for b in members) for p in s)

    compatible = all(union_of_members(b1 & b2, base)
                     for b1, b2 in itertools.combinations(base, 2))
    members = list(base)
    if not compatible:
        closed = set(base)
        work = list(base)
        while work:
            cur = work.pop()
            for b in base:
                i = cur & b
                if i not in closed:
                    closed.add(i)
                    work.append(i)
                    if len(closed) > MAX_OPENS:
                        raise TopologySizeError(
                            f"intersection closure passed {MAX_OPENS} sets")
        members = sorted(closed, key=lambda s: (len(s), sorted(s)))

    fam = _union_closure(members, "generating from a base")
    return GeneratedTopology(topology=topology(points, fam),
                             base_compatible=compatible)


def product_topology(T1: FiniteTopology, T2: FiniteTopology) -> FiniteTopology:
    """Generated by open rectangles O1 x O2."""
    # distinct nonempty rectangles are in bijection with pairs of nonempty
    # opens, so the family size is bounded below by their count: bail out
    # before enumerating billions of rectangles
    if (len(T1.opens) - 1) * (len(T2.opens) - 1) > MAX_OPENS:
        raise TopologySizeError(
            f"product family needs at least "
            f"{(len(T1.opens) - 1) * (len(T2.opens) - 1)} sets, over the cap")
    pts = [(p, q) for p in T1.points for q in T2.points]
    rects = [frozenset(itertools.product(o1, o2))
             for o1 in T1.opens for o2 in T2.opens]
    gen = generate_from_base(pts, rects)
    if not gen.base_compatible:  # rectangles always intersect to rectangles
        raise RuntimeError("rectangle base unexpectedly incompatible")
    return gen.topology


def subspace_topology(T: FiniteTopology, subset) -> FiniteTopology:
    subset = frozenset(subset)
    if not subset <= set(T.points):
        raise ValueError(f"subset not contained in the points: {sorted(subset - set(T.points))[0]!r}")
    return topology(subset, {o & subset for o in T.opens})


def composable_pairs(G) -> tuple:
    return tuple(sorted((a, b) for a in G.morphisms for b in G.morphisms
                        if G.target[a] == G.source[b]))


def difference_pairs(G) -> tuple:
    """Pairs with a common source: the domain of (a, b) -> a^-1 b."""
    return tuple(sorted((a, b) for a in G.morphisms for b in G.morphisms
                        if G.source[a] == G.source[b]))


def pullback_space(G, T_G: FiniteTopology, kind="composable") -> FiniteTopology:
    """Materialized pullback: subspace of T_G x T_G on the constrained pairs.

    Subject to the family cap like everything else; the groupoid checker
    deliberately avoids this and certifies pullback openness through minimal
    neighborhoods instead.
    """
    if kind == "composable":
        pairs = composable_pairs(G)
    elif kind == "difference":
        pairs = difference_pairs(G)
    else:
        raise ValueError(f"unknown pullback kind: {kind!r}")
    if set(T_G.points) != set(G.morphisms):
        raise ValueError("topology points differ from the morphism set")
    return subspace_topology(product_topology(T_G, T_G), pairs)


# ------------------------------------------------------------- continuity

@dataclass(frozen=True)
class ContinuityCertificate:
    map_name: str
    domain: str
    codomain: str
    continuous: bool
    witness_open: frozenset = None      # codomain open with a bad preimage
    witness_preimage: frozenset = None  # that preimage (plain domains only)
    witness_pair: tuple = None          # pullback domains: the offending pair


def continuity(map_name, dom: FiniteTopology, cod: FiniteTopology, fn,
               dom_label="domain", cod_label="codomain") -> ContinuityCertificate:
    """Exhaustive preimage scan: continuous iff f^-1(O) is open for every O."""
    for o in sorted(cod.opens, key=lambda s: (len(s), sorted(map(str, s)))):
        pre = frozenset(p for p in dom.points if fn(p) in o)
        if pre not in dom.opens:
            return ContinuityCertificate(map_name=map_name, domain=dom_label,
                                         codomain=cod_label, continuous=False,
                                         witness_open=o, witness_preimage=pre)
    return ContinuityCertificate(map_name=map_name, domain=dom_label,
                                 codomain=cod_label, continuous=True)


def pullback_continuity(map_name, pairs, factor: FiniteTopology,
                        cod: FiniteTopology, fn, dom_label,
                        cod_label="codomain") -> ContinuityCertificate:
    """Continuity out of a subspace-of-a-product domain, without building its
    family: S is open there iff around each (a, b) in S the whole trace of
    the rectangle U_a x U_b stays in S, where U_* are minimal neighborhoods
    in the factor."""
    mins = minimal_neighborhoods(factor)
    pair_set = set(pairs)
    for o in sorted(cod.opens, key=lambda s: (len(s), sorted(map(str, s)))):
        inside = {ab for ab in pairs if fn(*ab) in o}
        for a, b in sorted(inside):
            for a2, b2 in itertools.product(sorted(mins[a]), sorted(mins[b])):
                if (a2, b2) in pair_set and (a2, b2) not in inside:
                    return ContinuityCertificate(
                        map_name=map_name, domain=dom_label, codomain=cod_label,
                        continuous=False, witness_open=o,
                        witness_pair=((a, b), (a2, b2)))
    return ContinuityCertificate(map_name=map_name, domain=dom_label,
                                 codomain=cod_label, continuous=True)


@dataclass(frozen=True)
class TopologicalGroupoidReport:
    source_map: ContinuityCertificate
    target_map: ContinuityCertificate
    identity_map: ContinuityCertificate
    inversion_map: ContinuityCertificate
    composition_map: ContinuityCertificate
    difference_map: ContinuityCertificate
    difference_equivalence_holds: bool

    @property
    def certificates(self):
        return (self.source_map, self.target_map, self.identity_map,
                self.inversion_map, self.composition_map, self.difference_map)

    @property
    def ok(self):
        return all(c.continuous for c in self.certificates)


def check_topological_groupoid(G, T_G: FiniteTopology,
                               T_X: FiniteTopology) -> TopologicalGroupoidReport:
    """Certify or refute every structure map of (G, T_G, T_X).

    Composition is checked on the target-source pullback and the difference
    map (a, b) -> a^-1 b independently on the source-source pullback; the
    report records whether this instance agrees with the equivalence
    "composition and inversion continuous iff the difference map is".
    """
    if set(T_G.points) != set(G.morphisms):
        raise ValueError("morphism topology points differ from the morphisms")
    if set(T_X.points) != set(G.objects):
        raise ValueError("object topology points differ from the objects")

    alpha = continuity("source", T_G, T_X, lambda m: G.source[m],
                       dom_label="morphism space", cod_label="object space")
    beta = continuity("target", T_G, T_X, lambda m: G.target[m],
                      dom_label="morphism space", cod_label="object space")
    eps = continuity("identity", T_X, T_G, lambda x: G.identity[x],
                     dom_label="object space", cod_label="morphism space")
    inv = continuity("inversion", T_G, T_G, lambda m: G.inverse[m],
                     dom_label="morphism space", cod_label="morphism space")
    comp = pullback_continuity(
        "composition", composable_pairs(G), T_G, T_G,
        lambda a, b: G.compose[(a, b)],
        dom_label="pullback(target, source)", cod_label="morphism space")
    diff = pullback_continuity(
        "difference", difference_pairs(G), T_G, T_G,
        lambda a, b: G.compose[(G.inverse[a], b)],
        dom_label="pullback(source, source)", cod_label="morphism space")

    equiv = (comp.continuous and inv.continuous) == diff.continuous
    return TopologicalGroupoidReport(
        source_map=alpha, target_map=beta, identity_map=eps,
        inversion_map=inv, composition_map=comp, difference_map=diff,
        difference_equivalence_holds=equiv)
