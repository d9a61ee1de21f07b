"""Command-line driver.

Exit codes: 0 success, 1 usage or construction error, 2 a check of a proven
theorem failed, 3 a conjecture counterexample was found.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import analysis
from .analysis import CHECKS
from .burnside import idempotent, m_coefficient, marks_table
from .catalog import build_group, catalog, describe
from .groups import GroupError, is_nilpotent, is_solvable
from .lattice import enumerate_subgroups

EXIT_OK, EXIT_USAGE, EXIT_BUG, EXIT_COUNTEREXAMPLE = 0, 1, 2, 3
REPORT_FIELDS = ["group", "order", "check", "status", "millis"]
VERIFY_TARGETS = ["all", *CHECKS, "classification"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS, help="write output to this file")
    common.add_argument("--max-order", type=int, default=argparse.SUPPRESS,
                        help="group order cap; catalog entries above it are skipped")
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker processes for verify")
    common.add_argument("--no-timing", action="store_true", default=argparse.SUPPRESS,
                        help="report millis as 0 so output is byte-reproducible")

    p = _Parser(prog="bgroups", parents=[common], description="Burnside rings and B-groups of small finite groups.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("list", parents=[common], help="list the catalog")
    for name, helptext in [
        ("analyze", "invariants, normal subgroups, m_{G,N} table and beta"),
        ("idempotents", "primitive idempotents in the transitive basis"),
        ("marks", "table of marks"),
        ("beta", "largest B-group quotient"),
    ]:
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("spec")
    sp = sub.add_parser("kernel", parents=[common], help="basis of the restriction kernel")
    sp.add_argument("spec")
    sp.add_argument("--class", dest="subgroup_class", choices=[analysis.NILPOTENT, analysis.SOLVABLE],
                    default=analysis.NILPOTENT)
    sp = sub.add_parser("verify", parents=[common], help="run verification checks")
    sp.add_argument("target", choices=VERIFY_TARGETS)
    where = sp.add_mutually_exclusive_group()
    where.add_argument("--group", help="group spec to check")
    where.add_argument("--catalog", action="store_true", help="check every catalog group (default)")
    return p


# ---------------------------------------------------------------------------
# Commands.  Each returns (payload, csv rows, text lines, exit code).


def _cmd_list(args):
    entries = catalog(args.max_order)
    payload = [{"name": e.name, "order": e.order} for e in entries]
    rows = [["name", "order"]] + [[e.name, e.order] for e in entries]
    text = [f"{e.name:<12} {e.order}" for e in entries]
    return payload, rows, text, EXIT_OK


def _cmd_analyze(args):
    G = build_group(args.spec)
    L = enumerate_subgroups(G)
    B = analysis.beta(G)
    normals = []
    for N in L.normal_subgroups():
        normals.append({"class": L.class_label(L.class_index(N)), "order": N.order, "m": str(m_coefficient(G, N))})
    payload = {
        "group": args.spec,
        "order": G.order,
        "nilpotent": is_nilpotent(G),
        "solvable": is_solvable(G),
        "subgroups": len(L),
        "subgroup_classes": len(L.classes),
        "b_group": analysis.is_b_group(G),
        "beta": describe(B),
        "beta_order": B.order,
        "normal_subgroups": normals,
    }
    rows = [["normal_subgroup", "order", "m"]] + [[n["class"], n["order"], n["m"]] for n in normals]
    yes = {True: "yes", False: "no"}
    text = [
        f"group: {args.spec}",
        f"order: {G.order}",
        f"nilpotent: {yes[payload['nilpotent']]}",
        f"solvable: {yes[payload['solvable']]}",
        f"subgroups: {len(L)} in {len(L.classes)} classes",
        f"B-group: {yes[payload['b_group']]}",
        f"beta ≅ {payload['beta']}",
        "normal subgroups (class, order, m_{G,N}):",
    ] + [f"  {n['class']:<8} {n['order']:<6} {n['m']}" for n in normals]
    return payload, rows, text, EXIT_OK


def _cmd_idempotents(args):
    G = build_group(args.spec)
    L = enumerate_subgroups(G)
    labels = L.class_labels()
    items = [{"subgroup": labels[c], "element": idempotent(G, c).to_json()} for c in range(len(labels))]
    rows = [["subgroup"] + labels] + [[it["subgroup"]] + it["element"]["coeffs"] for it in items]
    text = []
    for it in items:
        coeffs = [Fraction(c) for c in it["element"]["coeffs"]]
        terms = [f"{c}[{b}]" for c, b in zip(coeffs, labels) if c]
        text.append(f"e_{it['subgroup']} = " + " + ".join(terms))
    return {"group": args.spec, "basis": labels, "idempotents": items}, rows, text, EXIT_OK


def _cmd_marks(args):
    G = build_group(args.spec)
    M = marks_table(G)
    labels = list(M.labels)
    rows = [["H\\K"] + labels] + [[labels[h]] + list(M.matrix[h]) for h in range(len(labels))]
    width = max(6, max(len(x) for x in labels) + 1)
    text = ["".join(f"{str(x):>{width}}" for x in r) for r in rows]
    return {"group": args.spec, "labels": labels, "marks": [list(r) for r in M.matrix]}, rows, text, EXIT_OK


def _cmd_beta(args):
    G = build_group(args.spec)
    B = analysis.beta(G)
    name = describe(B)
    payload = {"group": args.spec, "beta": name, "order": B.order}
    return payload, [["group", "beta", "order"], [args.spec, name, B.order]], [f"beta({args.spec}) ≅ {name}"], EXIT_OK


def _cmd_kernel(args):
    G = build_group(args.spec)
    kb = analysis.kernel_basis(G, args.subgroup_class)
    labels = enumerate_subgroups(G).class_labels()
    payload = {"group": args.spec, "class": args.subgroup_class, "rank": kb.rank,
               "basis_labels": labels, "basis": kb.vectors}
    rows = [labels] + kb.vectors
    text = [f"rank {kb.rank} ({args.subgroup_class}) over basis {' '.join(labels)}"]
    text += ["  " + " ".join(str(x) for x in v) for v in kb.vectors]
    return payload, rows, text, EXIT_OK


def _run_group(job):
    spec, checks, cap = job
    if cap is not None:
        os.environ["BGROUPS_MAX_ORDER"] = str(cap)
    G = build_group(spec)
    return [CHECKS[c](G).to_dict() for c in checks]


def _exit_code(reports: list[dict]) -> int:
    kinds = {(r["witness"] or {}).get("kind") for r in reports if r["status"] == "fail"}
    if "bug" in kinds:
        return EXIT_BUG
    if "counterexample" in kinds:
        return EXIT_COUNTEREXAMPLE
    return EXIT_OK


def _cmd_verify(args):
    checks = list(CHECKS) if args.target == "all" else [c for c in CHECKS if c == args.target]
    if args.group:
        specs = [args.group]
    else:
        specs = [e.name for e in catalog(args.max_order)]
    jobs = [(s, checks, args.max_order) for s in specs] if checks else []
    if args.jobs and args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(_run_group, jobs))
    else:
        results = [_run_group(j) for j in jobs]
    reports = [r for rs in results for r in rs]
    if args.target in ("all", "classification") and not args.group:
        groups = [build_group(s) for s in specs]
        reports.append(analysis.check_nilpotent_bgroup_classification(groups).to_dict())
    elif args.target == "classification":
        reports.append(analysis.check_nilpotent_bgroup_classification([build_group(args.group)]).to_dict())
    if args.no_timing:
        for r in reports:
            r["millis"] = 0
    reports.sort(key=lambda r: (r["order"], r["group"], r["check"]))
    rows = [REPORT_FIELDS] + [[r[k] for k in REPORT_FIELDS] for r in reports]
    text = []
    for r in reports:
        line = f"{r['status'].upper():<5} {r['group']:<12} {r['check']:<13} {r['millis']:.1f}ms"
        if r["status"] == "fail":
            line += f"  [{r['witness'].get('kind')}]"
        text.append(line)
    npass = sum(r["status"] == "pass" for r in reports)
    text.append(f"{npass}/{len(reports)} passed")
    return reports, rows, text, _exit_code(reports)


COMMANDS = {
    "list": _cmd_list,
    "analyze": _cmd_analyze,
    "idempotents": _cmd_idempotents,
    "marks": _cmd_marks,
    "beta": _cmd_beta,
    "kernel": _cmd_kernel,
    "verify": _cmd_verify,
}


def _render(fmt: str, payload, rows, text) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        return buf.getvalue()
    return "\n".join(text) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"bgroups: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for key, default in [("format", "text"), ("out", None), ("max_order", None), ("jobs", 1), ("no_timing", False)]:
        if not hasattr(args, key):
            setattr(args, key, default)
    saved = os.environ.get("BGROUPS_MAX_ORDER")
    if args.max_order is not None:
        os.environ["BGROUPS_MAX_ORDER"] = str(args.max_order)
    try:
        payload, rows, text, code = COMMANDS[args.command](args)
    except GroupError as exc:
        print(f"bgroups: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if saved is None:
            os.environ.pop("BGROUPS_MAX_ORDER", None)
        else:
            os.environ["BGROUPS_MAX_ORDER"] = saved
    out = _render(args.format, payload, rows, text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
