"""Command-line front end.

Exit codes: 0 pass, 1 fail (violations or a refused construction), 2 usage,
parse or schema error.
"""

from __future__ import annotations

import argparse
import datetime
import json
import re
import sys
from pathlib import Path

from . import jsonio
from .algebra import check_closed, check_semi_abelian_witness, validate_algebra, Subalgebra
from .clone import check_constant_preservation, check_normal_subalgebra, enumerate_clone
from .covering import (CoveringOfInternal, actions_equal, build_coset_action, check_action, check_cover,
                       cover_isomorphism, gamma, lift_structure, phi, semidirect, underlying)
from .dot import groupoid_to_dot
from .errors import DocumentError, SemicoverError
from .groupoid import characteristic_group, is_transitive, make_transitive_fixture, validate_groupoid
from .internal import InternalGroupoid, check_internal, discrete_internal, pair_internal
from .report import RunReport, Violation

KINDS = ("algebra", "groupoid", "internal", "action", "cover")


def _kebab(name: str) -> str:
    return re.sub(r"(?<!^)(?=[A-Z])", "-", name).lower()


def _error_violation(exc: SemicoverError) -> Violation:
    return Violation(_kebab(type(exc).__name__), (), str(exc))


def _indices(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip() != ""]
    except ValueError:
        raise DocumentError(f"expected comma-separated indices, got {text!r}") from None


def _validate_base(g) -> list:
    if isinstance(g, InternalGroupoid):
        out = validate_groupoid(g.gpd) + validate_algebra(g.object_alg) + validate_algebra(g.arrow_alg)
        return out or check_internal(g)
    return validate_groupoid(g)


def _validate_kind(obj, kind: str) -> list:
    if kind == "algebra":
        out = validate_algebra(obj)
        if not out and obj.sig.witness is not None:
            verdict = check_semi_abelian_witness(obj)
            if not verdict:
                out.append(Violation("semi-abelian-witness", verdict.counterexample,
                                     f"witness fails at {verdict.counterexample}"))
        return out
    if kind == "groupoid":
        return validate_groupoid(obj)
    if kind == "internal":
        return _validate_base(obj)
    if kind == "action":
        return _validate_base(obj.base) or check_action(obj)
    if kind == "cover":
        return _validate_base(obj.dom) + _validate_base(obj.cod) or check_cover(obj)
    raise ValueError(kind)


def _write(report: RunReport, path, doc) -> None:
    jsonio.write_json(path, doc)
    report.artifacts_written.append(str(path))


def _write_dot(report: RunReport, out: str, g, labels=None) -> None:
    path = Path(out).with_suffix(".dot")
    path.write_text(groupoid_to_dot(underlying(g), object_labels=labels))
    report.artifacts_written.append(str(path))


def _reread(report: RunReport, path, kind: str) -> None:
    """Round-trip check: the file just written must load and validate."""
    report.violations += _validate_kind(jsonio.load(path, kind), kind)


# -- subcommands ------------------------------------------------------------------------

def cmd_check(args, report: RunReport) -> None:
    obj = jsonio.load(args.path, args.kind)
    report.details["kind"] = args.kind
    report.violations += _validate_kind(obj, args.kind)
    if args.kind == "groupoid" and not report.violations:
        report.details.update(objects=obj.n_objects, arrows=obj.n_arrows, transitive=is_transitive(obj))
    elif args.kind == "internal" and not report.violations:
        report.details.update(objects=obj.gpd.n_objects, arrows=obj.gpd.n_arrows)
    elif args.kind == "algebra":
        report.details.update(size=obj.size, witness=obj.sig.witness is not None)


def _coset_labels(act) -> dict:
    return {"objects": ["{" + ",".join(map(str, c)) + "}" for c in act.cosets.cosets]}


def cmd_build(args, report: RunReport) -> None:
    what = args.what
    report.command = f"build {what}"
    if what == "coset-cover":
        _need(args, "groupoid", "subgroup")
        g = jsonio.base_from_doc(jsonio.read_json(args.groupoid))
        act = build_coset_action(g, _indices(args.subgroup), args.base_object)
        cov = semidirect(g, act)
        labels = _coset_labels(act)
        doc, kind = jsonio.cover_to_doc(cov, labels), "cover"
        h = underlying(cov.dom)
        report.details.update(objects=h.n_objects, arrows=h.n_arrows, cosets=[list(c) for c in act.cosets.cosets],
                              characteristic_group=list(characteristic_group(cov.p, _base_coset(act))))
    elif what == "semidirect":
        _need(args, "action")
        act = jsonio.load(args.action, "action")
        cov = semidirect(act.base, act)
        doc, kind, labels = jsonio.cover_to_doc(cov), "cover", None
        h = underlying(cov.dom)
        report.details.update(objects=h.n_objects, arrows=h.n_arrows)
    elif what in ("pair", "discrete"):
        _need(args, "algebra")
        a = jsonio.load(args.algebra, "algebra")
        problems = validate_algebra(a)
        if problems:
            report.violations += problems
            return
        cov = pair_internal(a) if what == "pair" else discrete_internal(a)
        doc, kind, labels = jsonio.internal_to_doc(cov), "internal", None
        report.details.update(objects=cov.gpd.n_objects, arrows=cov.gpd.n_arrows)
    elif what == "fixture":
        _need(args, "objects", "group")
        k = jsonio.load(args.group, "algebra")
        cov = make_transitive_fixture(args.objects, k)
        doc, kind, labels = jsonio.groupoid_to_doc(cov), "groupoid", None
        report.details.update(objects=cov.n_objects, arrows=cov.n_arrows, transitive=is_transitive(cov))
    else:
        raise DocumentError(f"unknown build target {what!r}")
    _write(report, args.out, doc)
    if args.dot:
        built = cov.dom if isinstance(cov, CoveringOfInternal) else cov
        _write_dot(report, args.out, built, labels and labels["objects"])
    _reread(report, args.out, kind)


def _base_coset(act) -> int:
    """Index of the coset ``C`` itself, i.e. the coset of the identity at the base object."""
    return act.cosets.coset_of(act.gpd.id[act.cosets.base])


def _need(args, *names) -> None:
    missing = [n for n in names if getattr(args, n.replace("-", "_"), None) is None]
    if missing:
        raise DocumentError("missing required option(s): " + ", ".join("--" + m for m in missing))


def cmd_lift(args, report: RunReport) -> None:
    _need(args, "cover", "base_object")
    cov = jsonio.load(args.cover, "cover")
    if not isinstance(cov.cod, InternalGroupoid):
        raise DocumentError("lift needs a cover whose codomain is an internal groupoid")
    h = underlying(cov.dom)
    lifted = lift_structure(h, cov.cod, cov.p, args.base_object)
    report.details.update(objects=h.n_objects, arrows=h.n_arrows,
                          characteristic_group=list(characteristic_group(cov.p, args.base_object)),
                          p_homomorphism=not check_cover(lifted))
    if args.out:
        _write(report, args.out, jsonio.internal_to_doc(lifted.dom))
        if args.dot:
            _write_dot(report, args.out, h)
        _reread(report, args.out, "internal")


def cmd_equiv(args, report: RunReport) -> None:
    if (args.action is None) == (args.cover is None):
        raise DocumentError("equiv needs exactly one of --action or --cover")
    if args.action is not None:
        act = jsonio.load(args.action, "action")
        problems = check_action(act)
        if problems:
            report.violations += problems
            return
        back = phi(gamma(act))
        same = actions_equal(back, act)
        report.details["phi_gamma_equal"] = same
        if not same:
            report.violations.append(Violation("round-trip", ("phi-gamma",), "phi(gamma(action)) differs from action"))
    else:
        cov = jsonio.load(args.cover, "cover")
        problems = check_cover(cov)
        if problems:
            report.violations += problems
            return
        rebuilt = gamma(phi(cov))
        iso = cover_isomorphism(cov, rebuilt)
        report.details["isomorphic"] = iso is not None
        if iso is None:
            report.violations.append(Violation("round-trip", ("gamma-phi",), "gamma(phi(cover)) not isomorphic to cover"))
        else:
            report.details["isomorphism"] = {"obj_map": list(iso.obj_map), "arr_map": list(iso.arr_map)}


def cmd_clone(args, report: RunReport) -> None:
    a = jsonio.load(args.path, "algebra")
    problems = validate_algebra(a)
    if problems:
        report.violations += problems
        return
    clone = enumerate_clone(a, args.bound)
    report.details["bound"] = args.bound
    report.details["clone_sizes"] = {str(k): clone.size(k) for k in sorted(clone.functions)}
    verdict = check_constant_preservation(clone)
    report.details["constants_preserved"] = verdict.ok
    if not verdict:
        k, table = verdict.counterexample
        report.violations.append(Violation("constant-not-preserved", (k, list(table)),
                                           f"derived {k}-ary operation {list(table)} moves (e,...,e)"))
    if args.subgroup is not None:
        members = _indices(args.subgroup)
        closed = check_closed(a, members + [a.e_index])
        if not closed:
            report.violations.append(Violation("not-a-subalgebra", closed.counterexample, "subset is not closed"))
            return
        result = check_normal_subalgebra(Subalgebra(a, members + [a.e_index]), args.bound)
        report.details.update(normal=result.ok, completeness=result.completeness)
        if not result:
            t, table, slots, argv = result.counterexample
            report.violations.append(Violation("not-normal", (t, list(table), list(slots), list(argv)),
                                               "derived operation leaves the subalgebra"))


def cmd_export_dot(args, report: RunReport) -> None:
    obj = jsonio.load(args.path, args.kind)
    if args.kind == "cover":
        obj = obj.dom
    elif args.kind == "action":
        obj = obj.base
    elif args.kind == "algebra":
        raise DocumentError("algebras have no graph to export")
    g = underlying(obj)
    Path(args.out).write_text(groupoid_to_dot(g, with_identities=args.with_identities))
    report.artifacts_written.append(args.out)
    report.details.update(objects=g.n_objects, arrows=g.n_arrows)


# -- plumbing ---------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON report instead of text")
    common.add_argument("--report", metavar="PATH", help="also write the JSON report to PATH")

    parser = argparse.ArgumentParser(prog="semicover", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="validate a document")
    p.add_argument("path")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("build", parents=[common], help="run a constructor and write its output")
    p.add_argument("what", choices=("coset-cover", "semidirect", "pair", "discrete", "fixture"))
    p.add_argument("--groupoid")
    p.add_argument("--subgroup")
    p.add_argument("--base-object", type=int)
    p.add_argument("--action")
    p.add_argument("--algebra")
    p.add_argument("--objects", type=int)
    p.add_argument("--group")
    p.add_argument("--out", required=True)
    p.add_argument("--dot", action="store_true", help="also write a .dot file next to --out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("lift", parents=[common], help="lift algebraic structure along a covering")
    p.add_argument("--cover", required=True)
    p.add_argument("--base-object", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("equiv", parents=[common], help="run the action/cover round trips")
    p.add_argument("--action")
    p.add_argument("--cover")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("clone", parents=[common], help="enumerate derived operations")
    p.add_argument("path")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--subgroup", help="members of a subalgebra to test for normality")
    p.set_defaults(func=cmd_clone)

    p = sub.add_parser("export-dot", parents=[common], help="write a Graphviz file")
    p.add_argument("path")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--with-identities", action="store_true")
    p.set_defaults(func=cmd_export_dot)
    return parser


def execute(args: argparse.Namespace) -> RunReport:
    report = RunReport(args.command)
    try:
        args.func(args, report)
    except (DocumentError, FileNotFoundError, IsADirectoryError) as exc:
        report.error = str(exc)
    except SemicoverError as exc:
        report.violations.append(_error_violation(exc))
    report.violations = sorted(report.violations)
    return report.finalize()


def _text(report: RunReport) -> str:
    lines = [f"{report.command}: {report.status}"]
    if report.error:
        lines.append(f"  error: {report.error}")
    for v in report.violations[:20]:
        lines.append(f"  [{v.kind}] {v.message}")
    if len(report.violations) > 20:
        lines.append(f"  ... {len(report.violations) - 20} more")
    for key, value in report.details.items():
        lines.append(f"  {key}: {value}")
    for path in report.artifacts_written:
        lines.append(f"  wrote {path}")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    report = execute(args)
    timestamp = datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")
    doc = report.to_json(timestamp)
    if args.report:
        Path(args.report).write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n")
    if args.json:
        sys.stdout.write(json.dumps(doc, indent=1, sort_keys=True) + "\n")
    else:
        sys.stdout.write(_text(report))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
