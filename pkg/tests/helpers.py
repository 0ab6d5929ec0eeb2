"""Builders shared across test modules.

Everything here is deliberately independent of the library internals: groups
are built from raw multiplication rules, so they double as oracles for the
axiom checker, the enumeration engine, and the quotient construction.
"""

import itertools

from groupoids import FiniteGroupoid


# ---------------------------------------------------------------- group tables

def table_from_mul(elems, mul_fn, name_fn=str):
    """(names, mul dict, inv dict, unit name) from a raw multiplication rule."""
    names = [name_fn(e) for e in elems]
    assert len(set(names)) == len(names)
    by_name = dict(zip(names, elems))
    mul = {}
    for a, b in itertools.product(names, names):
        mul[(a, b)] = name_fn(mul_fn(by_name[a], by_name[b]))
    unit = next(e for e in names if all(mul[(e, a)] == a and mul[(a, e)] == a for a in names))
    inv = {}
    for a in names:
        inv[a] = next(b for b in names if mul[(a, b)] == unit)
    return names, mul, inv, unit


def cyclic(n):
    return table_from_mul(range(n), lambda a, b: (a + b) % n)


def direct(t1, t2):
    n1, m1, _, _ = t1
    n2, m2, _, _ = t2
    elems = list(itertools.product(n1, n2))
    return table_from_mul(
        elems, lambda a, b: (m1[(a[0], b[0])], m2[(a[1], b[1])]),
        name_fn=lambda e: f"{e[0]}.{e[1]}")


def sym3():
    perms = list(itertools.permutations(range(3)))
    return table_from_mul(
        perms, lambda p, q: tuple(q[p[i]] for i in range(3)),
        name_fn=lambda p: "".join(map(str, p)))


def dihedral4():
    # r^i s^j with s r = r^-1 s
    elems = list(itertools.product(range(4), range(2)))
    return table_from_mul(
        elems,
        lambda a, b: ((a[0] + (b[0] if a[1] == 0 else -b[0])) % 4, (a[1] + b[1]) % 2),
        name_fn=lambda e: f"r{e[0]}s{e[1]}")


def quaternion():
    units = {"1": (1, 0, 0, 0), "-1": (-1, 0, 0, 0),
             "i": (0, 1, 0, 0), "-i": (0, -1, 0, 0),
             "j": (0, 0, 1, 0), "-j": (0, 0, -1, 0),
             "k": (0, 0, 0, 1), "-k": (0, 0, 0, -1)}
    names = {v: k for k, v in units.items()}

    def qmul(p, q):
        w1, x1, y1, z1 = p
        w2, x2, y2, z2 = q
        return (w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
                w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
                w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
                w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2)

    return table_from_mul(list(units.values()), qmul, name_fn=lambda q: names[q])


def all_groups_upto8():
    """Every group of order <= 8, up to isomorphism, as (name, table)."""
    c2, c4 = cyclic(2), cyclic(4)
    return [
        ("Z1", cyclic(1)), ("Z2", cyclic(2)), ("Z3", cyclic(3)),
        ("Z4", cyclic(4)), ("V4", direct(c2, c2)), ("Z5", cyclic(5)),
        ("Z6", cyclic(6)), ("S3", sym3()), ("Z7", cyclic(7)),
        ("Z8", cyclic(8)), ("Z4xZ2", direct(c4, c2)),
        ("Z2x3", direct(direct(c2, c2), c2)),
        ("D4", dihedral4()), ("Q8", quaternion()),
    ]


# ------------------------------------------------------------ groupoid builders

def group_groupoid(table, obj="*"):
    """A group as a one-object groupoid."""
    names, mul, inv, unit = table
    return FiniteGroupoid(
        objects=frozenset([obj]),
        source={a: obj for a in names},
        target={a: obj for a in names},
        identity={obj: unit},
        inverse=dict(inv),
        compose=dict(mul),
    )


def product_groupoid(n_objects, table):
    """Connected groupoid with n objects and vertex group from `table`.

    Every connected finite groupoid is isomorphic to one of these, so they
    make a fully general source of random connected instances.
    """
    names, mul, inv, unit = table
    objs = [f"o{i}" for i in range(n_objects)]
    mid = lambda x, y, g: f"{x}>{y}:{g}"
    source, target, inverse, compose = {}, {}, {}, {}
    for x, y, g in itertools.product(objs, objs, names):
        m = mid(x, y, g)
        source[m], target[m] = x, y
        inverse[m] = mid(y, x, inv[g])
    identity = {x: mid(x, x, unit) for x in objs}
    for x, y, z in itertools.product(objs, objs, objs):
        for g, h in itertools.product(names, names):
            compose[(mid(x, y, g), mid(y, z, h))] = mid(x, z, mul[(g, h)])
    return FiniteGroupoid(objects=frozenset(objs), source=source, target=target,
                          identity=identity, inverse=inverse, compose=compose)


# --------------------------------------------------------------- witness replay

def replay_violation(G, v):
    """Re-derive a reported violation directly from the tables."""
    k, w = v.kind, v.witness
    comp, src, tgt = G.compose, G.source, G.target
    if k == "identity-endpoint":
        x, e = w
        return src[e] != x or tgt[e] != x
    if k == "left-identity":
        (m,) = w
        return comp[(G.identity[src[m]], m)] != m
    if k == "right-identity":
        (m,) = w
        return comp[(m, G.identity[tgt[m]])] != m
    if k == "compose-missing":
        a, b = w
        return tgt[a] == src[b] and (a, b) not in comp
    if k == "compose-domain":
        a, b = w
        return (a, b) in comp and tgt[a] != src[b]
    if k == "compose-endpoint":
        a, b, c = w
        return comp[(a, b)] == c and (src[c] != src[a] or tgt[c] != tgt[b])
    if k == "associativity":
        a, b, c = w
        lhs = comp.get((comp[(a, b)], c))
        rhs = comp.get((a, comp[(b, c)]))
        return lhs is not None and rhs is not None and lhs != rhs
    if k == "inverse-endpoint":
        a, ai = w
        return G.inverse[a] == ai and (src[ai] != tgt[a] or tgt[ai] != src[a])
    if k == "inverse-law":
        a, side = w
        ai = G.inverse[a]
        if side == "left":
            return comp.get((a, ai)) != G.identity[src[a]]
        return comp.get((ai, a)) != G.identity[tgt[a]]
    if k in ("identity-missing", "inverse-missing", "dangling-reference"):
        return True  # structural; presence of the report is the fact
    raise AssertionError(f"unknown violation kind {k}")
