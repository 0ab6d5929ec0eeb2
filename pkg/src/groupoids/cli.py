"""Command-line front end.

Eight subcommands over the JSON interchange documents:

  validate        groupoid laws, or a bare topology family
  monodromy       present the cover of a groupoid by a generating subset
  pi1             fundamental groupoid of an undirected graph
  star-cover      depth-windowed covering report over one object's star
  globalize       extend a generator map through the presented cover
  topology-check  is_topology, or the six-certificate topological-groupoid check
  clt-generate    validate a local trivialization and generate its topology
  w-open          openness of a generating subgroupoid in that topology

Exit status: 0 every check passed; 1 a check was refuted (report carries the
witness); 2 at least one verdict is undecided at the given budget/depth/
window (the report names the exhausted parameter); 3 the input did not parse
or violated a documented precondition.

Reports echo the command, the input's canonical fingerprint, and the
parameters used; --format picks the human or machine rendering and --out
writes atomically to a path instead of standard output.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
import time
import warnings

from .core import validate_groupoid
from .dot import export_dot
from .interchange import (
    DocumentError,
    canonical,
    fingerprint,
    load_document,
    parse_carrier,
    parse_graph,
    parse_groupoid,
    parse_local_trivialization,
    parse_topology,
    parse_topology_family,
)
from .loctriv import (
    check_w_open,
    clt_on_monodromy,
    generate_groupoid_topology,
    validate_clt,
)
from .monodromy import (
    build_monodromy,
    canonical_morphism,
    globalize,
    pi1_graph,
    pregroupoid,
    star_covering_report,
)
from .topology import (
    TopologySizeError,
    check_topological_groupoid,
    is_topology,
    topology,
)
from .words import DEFAULT_BUDGET

PASS, REFUTED, UNDECIDED, INPUT_ERROR = 0, 1, 2, 3
_VERDICT = {PASS: "pass", REFUTED: "refuted", UNDECIDED: "undecided"}


def _public(doc):
    return {k: v for k, v in doc.items() if not k.startswith("_")}


def _strip(doc):
    """Drop annotation keys so fingerprints see only content."""
    return {k: v for k, v in sorted(_public(doc).items())}


# ---------------------------------------------------------------- commands

def _cmd_validate(doc, args):
    if "groupoid" in doc or ("objects" in doc and "morphisms" in doc):
        G = parse_groupoid(doc.get("groupoid", doc))
        rep = validate_groupoid(G)
        verdicts = {"groupoid-valid": rep.ok, "violations": len(rep.violations)}
        witnesses = {f"violation[{i}]": f"{v.kind}: {v.witness!r}"
                     for i, v in enumerate(rep.violations)}
        if args.dot:
            _write_atomic(args.dot, export_dot(G))
        return (PASS if rep.ok else REFUTED), verdicts, witnesses, []
    if "points" in doc:
        points, fam = parse_topology_family(doc)
        rep = is_topology(points, fam)
        verdicts = {"topology-valid": rep.ok}
        witnesses = {}
        if not rep.ok:
            verdicts["failure"] = rep.kind
            witnesses["witness"] = _render_value(rep.witness)
        return (PASS if rep.ok else REFUTED), verdicts, witnesses, []
    raise DocumentError("document: expected a groupoid or a topology document")


def _monodromy_of(doc, budget, notes):
    G = parse_groupoid(_need(doc, "groupoid"))
    W = pregroupoid(G, parse_carrier(doc, G))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        M = build_monodromy(G, W, budget=budget)
    notes.extend(str(w.message) for w in caught)
    return G, W, M


def _cmd_monodromy(doc, args):
    notes = []
    _, _, M = _monodromy_of(doc, args.budget, notes)
    verdicts = {"relators": len(M.relator_family),
                "generates-ambient": M.generates_ambient}
    undecided = []
    for comp in M.forest.components:
        kind, detail = M.vertex_group_info(M.component_of(comp.base))
        if kind == "free":
            verdicts[f"vertex-group[{comp.base}]"] = f"free rank {detail}"
        elif kind == "finite":
            verdicts[f"vertex-group[{comp.base}]"] = f"finite order {detail}"
        else:
            verdicts[f"vertex-group[{comp.base}]"] = "undecided"
            undecided.append(f"vertex-group[{comp.base}]: budget {detail} exhausted")
    if args.dot:
        _write_atomic(args.dot, export_dot(M))
    return (UNDECIDED if undecided else PASS), verdicts, {}, undecided, notes


def _cmd_pi1(doc, args):
    vertices, edges = parse_graph(doc)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # disconnected graphs are fine here
        res = pi1_graph(vertices, edges, budget=args.budget)
    verdicts = {"rank": res.rank,
                "components": len(res.component_ranks)}
    for comp, r in zip(res.monodromy.forest.components, res.component_ranks):
        verdicts[f"rank[{comp.base}]"] = r
    if args.dot:
        _write_atomic(args.dot, export_dot(res))
    return PASS, verdicts, {}, []


def _cmd_star_cover(doc, args):
    notes = []
    G, _, M = _monodromy_of(doc, args.budget, notes)
    x = _need(doc, "object")
    if not isinstance(x, str):
        raise DocumentError("document.object: expected string")
    rep = star_covering_report(M, canonical_morphism(M), x, depth=args.depth)
    verdicts = {"object": x, "depth": rep.depth,
                "reached": len(rep.reached),
                "surjective-within-depth": rep.surjective_within_depth,
                "saturated": rep.saturated,
                "fiber-counts-exact": rep.fiber_counts_exact,
                "engine": rep.engine_kind}
    for a in sorted(rep.reached):
        verdicts[f"fiber[{a}]"] = rep.reached[a]
    witnesses, undecided = {}, []
    if rep.unreachable:
        witnesses["unreachable"] = ", ".join(sorted(rep.unreachable))
        return REFUTED, verdicts, witnesses, undecided, notes
    for a in rep.undecided_depth:
        undecided.append(f"star element {a!r} not reached at depth {rep.depth}")
    if rep.translate_collisions:
        witnesses["translate-collisions"] = _render_value(rep.translate_collisions)
        return REFUTED, verdicts, witnesses, undecided, notes
    for pair in rep.injectivity_undecided:
        undecided.append(f"injectivity of {pair!r} undecided")
    if not rep.fiber_counts_exact:
        undecided.append(f"fiber counts inexact at budget {M.budget}")
    return (UNDECIDED if undecided else PASS), verdicts, witnesses, undecided, notes


def _cmd_globalize(doc, args):
    notes = []
    G, _, M = _monodromy_of(doc, args.budget, notes)
    H = parse_groupoid(_need(doc, "target"), where="target")
    table = _need(doc, "map")
    if not isinstance(table, dict):
        raise DocumentError("document.map: expected object")
    res = globalize(M, dict(table), H)
    if res.ok:
        return PASS, {"extends": True}, {}, [], notes
    return (REFUTED, {"extends": False},
            {"obstruction": _render_value(res.obstruction)}, [], notes)


def _cmd_topology_check(doc, args):
    if "groupoid" in doc:
        G = parse_groupoid(_need(doc, "groupoid"))
        verdicts, witnesses = {}, {}
        tops = {}
        for field, points in (("morphism_topology", sorted(G.morphisms)),
                              ("object_topology", sorted(G.objects, key=str))):
            pts, fam = parse_topology_family(_need(doc, field), where=field)
            rep = is_topology(pts, fam)
            verdicts[f"{field}-valid"] = rep.ok
            if not rep.ok:
                verdicts[f"{field}-failure"] = rep.kind
                witnesses[field] = _render_value(rep.witness)
        if witnesses:
            return REFUTED, verdicts, witnesses, []
        T_G = topology(*parse_topology_family(doc["morphism_topology"]))
        T_X = topology(*parse_topology_family(doc["object_topology"]))
        rep = check_topological_groupoid(G, T_G, T_X)
        for cert in rep.certificates:
            verdicts[f"{cert.map_name}-continuous"] = cert.continuous
            if not cert.continuous:
                witnesses[cert.map_name] = (
                    f"open {_render_value(cert.witness_open)} pulls back to "
                    f"{_render_value(cert.witness_preimage)}")
        verdicts["difference-equivalence"] = rep.difference_equivalence_holds
        return (PASS if rep.ok else REFUTED), verdicts, witnesses, []
    points, fam = parse_topology_family(doc)
    rep = is_topology(points, fam)
    verdicts = {"topology-valid": rep.ok, "opens": len(fam)}
    witnesses = {}
    if not rep.ok:
        verdicts["failure"] = rep.kind
        witnesses["witness"] = _render_value(rep.witness)
    return (PASS if rep.ok else REFUTED), verdicts, witnesses, []


def _lt_of(doc):
    G = parse_groupoid(_need(doc, "groupoid"))
    LT = parse_local_trivialization(doc, where="document")
    return G, LT


def _cmd_clt_generate(doc, args):
    G, LT = _lt_of(doc)
    rep = validate_clt(G, LT)
    verdicts = {"clt-valid": rep.ok}
    witnesses = {f"problem[{i}]": f"{kind}: {_render_value(payload)}"
                 for i, (kind, payload) in enumerate(rep.problems)}
    if not rep.ok:
        return REFUTED, verdicts, witnesses, []
    if "carrier" in doc:
        notes = []
        W = pregroupoid(G, parse_carrier(doc, G))
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            M = build_monodromy(G, W, budget=args.budget)
        notes.extend(str(w.message) for w in caught)
        mrep = clt_on_monodromy(G, LT, W, M, depth=args.window)
        verdicts.update({
            "transported-sections-valid": not mrep.problems,
            "comp-satisfied": len(mrep.comp_satisfied),
            "comp-failed": len(mrep.comp_failed),
            "subset-composition-closed": mrep.subset_closed,
            "window-depth": mrep.window.depth,
            "window-classes": mrep.window.points,
            "window-opens": mrep.window.opens,
            "window-tokens-exact": mrep.window.tokens_exact,
        })
        if mrep.subset_closed:
            verdicts["w-tilde-open-in-window"] = mrep.window.w_tilde_open
        refuted = (mrep.problems or mrep.comp_failed or mrep.w_tilde_failures)
        for i, p in enumerate(mrep.problems):
            witnesses[f"section-problem[{i}]"] = _render_value(p)
        for i, c in enumerate(mrep.comp_failed):
            witnesses[f"comp-failed[{i}]"] = _render_value(c)
        for i, a in enumerate(mrep.w_tilde_failures):
            witnesses[f"w-tilde-not-open[{i}]"] = _render_value(a)
        undecided = [f"comp undecided at {_render_value(c)}"
                     for c in mrep.comp_undecided]
        undecided += [f"w-tilde membership of {a!r} undecided at budget {M.budget}"
                      for a in mrep.w_tilde_undecided]
        if not mrep.window.tokens_exact:
            undecided.append(f"window classes inexact at budget {M.budget}")
        if refuted:
            return REFUTED, verdicts, witnesses, undecided, notes
        return (UNDECIDED if undecided else PASS), verdicts, witnesses, undecided, notes
    T, grep_ = generate_groupoid_topology(G, LT)
    verdicts.update({
        "opens": len(T.opens),
        "base-compatible": grep_.base_compatible,
        "refinement-law": not grep_.refinement_failures,
        "all-maps-continuous": grep_.groupoid.ok,
        "difference-equivalence": grep_.groupoid.difference_equivalence_holds,
    })
    for i, fail in enumerate(grep_.refinement_failures):
        witnesses[f"refinement[{i}]"] = _render_value(fail)
    for cert in grep_.groupoid.certificates:
        verdicts[f"{cert.map_name}-continuous"] = cert.continuous
        if not cert.continuous:
            witnesses[cert.map_name] = _render_value(cert.witness_open)
    return (PASS if grep_.ok else REFUTED), verdicts, witnesses, []


def _cmd_w_open(doc, args):
    G, LT = _lt_of(doc)
    carrier = parse_carrier(doc, G)
    rep = check_w_open(G, LT, carrier)
    verdicts = {"w-open": rep.is_open, "carrier-size": len(carrier),
                "witnessed": len(rep.witnesses)}
    witnesses = {f"no-neighborhood[{i}]": a for i, a in enumerate(rep.failures)}
    return (PASS if rep.is_open else REFUTED), verdicts, witnesses, []


_COMMANDS = {
    "validate": _cmd_validate,
    "monodromy": _cmd_monodromy,
    "pi1": _cmd_pi1,
    "star-cover": _cmd_star_cover,
    "globalize": _cmd_globalize,
    "topology-check": _cmd_topology_check,
    "clt-generate": _cmd_clt_generate,
    "w-open": _cmd_w_open,
}
_DOT_COMMANDS = {"validate", "monodromy", "pi1"}


def _need(doc, field):
    if field not in doc:
        raise DocumentError(f"document: missing field {field!r}")
    return doc[field]


def _render_value(v):
    if isinstance(v, frozenset):
        return "{" + ", ".join(sorted(map(str, v))) + "}"
    if isinstance(v, tuple):
        return "(" + ", ".join(_render_value(x) for x in v) + ")"
    return str(v)


def _jsonable(v):
    if isinstance(v, (frozenset, set)):
        return sorted(map(_jsonable, v), key=str)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    return v


def _write_atomic(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _render_report(report, fmt):
    if fmt == "machine":
        return canonical(_jsonable(report)) + "\n"
    lines = [f"command: {report['command']}",
             f"fingerprint: {report['fingerprint']}",
             "parameters: " + " ".join(f"{k}={v}" for k, v
                                       in sorted(report["parameters"].items())),
             f"verdict: {report['verdict']}"]
    for k in sorted(report["verdicts"]):
        lines.append(f"{k}: {_render_value(report['verdicts'][k])}")
    for k in sorted(report["witnesses"]):
        lines.append(f"witness {k}: {report['witnesses'][k]}")
    for marker in report["undecided"]:
        lines.append(f"undecided: {marker}")
    for note in report.get("notes", []):
        lines.append(f"note: {note}")
    lines.append(f"time: {report['timing']['seconds']}s")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="groupoids",
        description="Finite groupoid constructions and checks over JSON documents.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("input", help="path to a JSON interchange document")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                       help="word-problem budget (default %(default)s)")
        p.add_argument("--depth", type=int, default=8,
                       help="star-cover search depth (default %(default)s)")
        p.add_argument("--window", type=int, default=6,
                       help="normal-form window for transported topologies "
                            "(default %(default)s)")
        p.add_argument("--format", choices=("human", "machine"), default="human")
        p.add_argument("--out", help="write the report here instead of stdout")
        if name in _DOT_COMMANDS:
            p.add_argument("--dot", help="also write a DOT rendering here")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return INPUT_ERROR if e.code not in (0, None) else 0
    if args.budget <= 0 or args.depth < 0 or args.window < 0:
        print("error: budget must be positive; depth and window nonnegative",
              file=sys.stderr)
        return INPUT_ERROR

    started = time.perf_counter()
    try:
        doc = load_document(args.input)
        outcome = _COMMANDS[args.command](_public(doc), args)
    except DocumentError as e:
        print(f"error: {e}", file=sys.stderr)
        return INPUT_ERROR
    except (ValueError, TopologySizeError) as e:
        print(f"error: precondition violated: {e}", file=sys.stderr)
        return INPUT_ERROR

    status, verdicts, witnesses, undecided, *rest = outcome
    report = {
        "command": args.command,
        "fingerprint": fingerprint(_strip(doc)),
        "parameters": {"budget": args.budget, "depth": args.depth,
                       "window": args.window},
        "verdict": _VERDICT[status],
        "verdicts": verdicts,
        "witnesses": witnesses,
        "undecided": list(undecided),
        "notes": list(rest[0]) if rest else [],
        "timing": {"seconds": round(time.perf_counter() - started, 6)},
    }
    rendered = _render_report(report, args.format)
    if args.out:
        _write_atomic(args.out, rendered)
    else:
        sys.stdout.write(rendered)
    return status


if __name__ == "__main__":
    sys.exit(main())
