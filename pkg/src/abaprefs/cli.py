"""Command-line front end.

Exit status: 0 success, 1 verification failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Iterable

from . import __version__
from .analysis import analyze_all
from .core import AtomicPreference, Framework, close_preferences, fmt_prefs, fmt_set, set_key
from .derivation import attack_graph
from .elicitation import Case3Mode, elicit
from .errors import (
    AbaError,
    InconsistencyError,
    NotConflictFree,
    ParseError,
    ResourceError,
    UnknownAssumption,
)
from .oracle import check_set, verify_completeness, verify_soundness, preorders_yielding
from .parsing import InputDocument, parse
from .semantics import DEFAULT_MAX_ASSUMPTIONS, Semantics, enumerate_extensions

ENV_CAP = "ABA_PREFS_MAX_ASSUMPTIONS"
SEMANTICS = [s.value for s in Semantics]


class UsageError(AbaError):
    pass


# -- JSON shapes ---------------------------------------------------------------


def j_set(s: Iterable[str]) -> list[str]:
    return sorted(s)


def j_pref(p: AtomicPreference) -> dict:
    return {"left": p.left, "rel": p.rel.value, "right": p.right}


def j_prefs(prefs) -> list[dict]:
    return [j_pref(p) for p in sorted(p.canonical() for p in prefs)]


def j_sets(sets) -> list[list[str]]:
    return [j_set(s) for s in sorted(sets, key=set_key)]


def j_check(c) -> dict:
    return {
        "preferences": j_prefs(c.prefs),
        "passed": c.passed,
        "closure_consistent": c.consistent,
        "closed_member": c.closed_member,
        "raw_member": c.raw_member,
        "extensions": j_sets(c.extensions),
    }


def t_check(c) -> str:
    verdict = "PASS" if c.passed else "FAIL"
    notes = []
    if not c.consistent:
        notes.append("closure inconsistent; raw relation used")
    elif c.divergent:
        notes.append("raw relation disagrees")
    if not c.passed:
        notes.append("extensions: " + (" ".join(fmt_set(s) for s in c.extensions) or "none"))
    return verdict + (" (" + "; ".join(notes) + ")" if notes else "")


# -- helpers -------------------------------------------------------------------


def _load(path: str) -> InputDocument:
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    doc = parse(data, source=path)
    for w in doc.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return doc


def _extension(f: Framework, text: str) -> frozenset[str]:
    names = [t.strip() for t in text.split(",") if t.strip()]
    try:
        return f.check_assumptions(names)
    except UnknownAssumption as exc:
        raise UsageError(str(exc)) from None


def _ignore_prefs(doc: InputDocument) -> None:
    if doc.preferences:
        print("warning: 'prefer' declarations are ignored by this command", file=sys.stderr)


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        for line in lines:
            print(line)


# -- commands ------------------------------------------------------------------


def cmd_extensions(args) -> int:
    doc = _load(args.file)
    f = doc.framework
    try:
        po = close_preferences(f, doc.preferences)
    except InconsistencyError as exc:
        raise UsageError(f"inconsistent preferences: {exc}") from None
    exts = enumerate_extensions(f, po, args.semantics, args.max_assumptions)
    payload = {
        "command": "extensions",
        "semantics": args.semantics,
        "preferences": j_prefs(doc.preferences),
        "extensions": [
            {"assumptions": j_set(x.assumptions), **({"conclusions": j_set(x.conclusions)} if args.conclusions else {})}
            for x in exts
        ],
        "attacks": [{"from": j_set(x), "to": j_set(y), "kind": k.value} for x, y, k in attack_graph(f, po)],
    }
    lines = []
    for x in exts:
        lines.append(str(x) + (f"  Cn={fmt_set(x.conclusions)}" if args.conclusions else ""))
    if args.attacks:
        lines += [f"attack {fmt_set(x)} -> {fmt_set(y)} {k.value}" for x, y, k in attack_graph(f, po)]
    _emit(args, payload, lines)
    return 0


def cmd_elicit(args) -> int:
    doc = _load(args.file)
    _ignore_prefs(doc)
    f = doc.framework
    e = _extension(f, args.extension)
    result = elicit(f, e, args.case3_mode)
    sets = result.ordered(args.stage)
    payload = {
        "command": "elicit",
        "semantics": args.semantics,
        "extension": j_set(e),
        "stage": args.stage,
        "case3_mode": args.case3_mode,
        "preference_sets": [j_prefs(p) for p in sets],
    }
    lines = [fmt_prefs(p) for p in sets]
    status = 0
    if args.verify:
        report = verify_soundness(f, e, args.semantics, sets)
        payload["verification"] = [j_check(c) for c in report.checks]
        lines = [f"{fmt_prefs(c.prefs)}  {t_check(c)}" for c in report.checks]
        status = 0 if report.passed else 1
    _emit(args, payload, lines)
    return status


def cmd_analyze(args) -> int:
    doc = _load(args.file)
    _ignore_prefs(doc)
    report = analyze_all(doc.framework, args.semantics, args.case3_mode, args.max_assumptions)
    payload = {
        "command": "analyze",
        "semantics": args.semantics,
        "extensions": [
            {
                "extension": j_set(row.extension),
                "preference_sets": [j_prefs(p) for p in row.ordered()],
                "unique": j_prefs(row.unique),
                "common": j_prefs(row.common),
            }
            for row in report.rows
        ],
    }
    lines = []
    for row in report.rows:
        lines.append(f"extension {fmt_set(row.extension)}")
        lines += [f"  {fmt_prefs(p)}" for p in row.ordered()]
        lines.append(f"  unique: {fmt_prefs(row.unique)}")
        lines.append(f"  common: {fmt_prefs(row.common)}")
    _emit(args, payload, lines)
    return 0


def _parse_prefs(f: Framework, text: str) -> tuple[AtomicPreference, ...]:
    try:
        prefs = [AtomicPreference.parse(p) for p in text.split(";") if p.strip()]
        for p in prefs:
            f.check_assumptions((p.left, p.right))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return tuple(prefs)


def cmd_verify(args) -> int:
    doc = _load(args.file)
    _ignore_prefs(doc)
    f = doc.framework
    e = _extension(f, args.extension)
    prefs = _parse_prefs(f, args.prefs)
    try:
        check = check_set(f, e, Semantics.parse(args.semantics), prefs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    payload = {"command": "verify", "semantics": args.semantics, "extension": j_set(e), **j_check(check)}
    _emit(args, payload, [f"{fmt_prefs(check.prefs)}  {t_check(check)}"])
    return 0 if check.passed else 1


def cmd_oracle(args) -> int:
    doc = _load(args.file)
    _ignore_prefs(doc)
    f = doc.framework
    e = _extension(f, args.extension)
    yielding = preorders_yielding(f, e, args.semantics)
    pset = elicit(f, e, args.case3_mode).pset
    sound = verify_soundness(f, e, args.semantics, pset)
    complete = verify_completeness(f, e, args.semantics, pset)
    payload = {
        "command": "oracle",
        "semantics": args.semantics,
        "extension": j_set(e),
        "yielding_preorders": len(yielding),
        "soundness": [j_check(c) for c in sound.checks],
        "covered": [j_prefs(_relations(po)) for po in complete.covered],
        "uncovered": [j_prefs(_relations(po)) for po in complete.uncovered],
    }
    lines = [f"preorders yielding {fmt_set(e)} under {args.semantics}: {len(yielding)}", "soundness:"]
    lines += [f"  {fmt_prefs(c.prefs)}  {t_check(c)}" for c in sound.checks]
    lines.append(f"completeness: {len(complete.covered)} covered, {len(complete.uncovered)} uncovered")
    lines += [f"  uncovered {fmt_prefs(_relations(po))}" for po in complete.uncovered]
    _emit(args, payload, lines)
    return 0


def _relations(po) -> list[AtomicPreference]:
    names = po.assumptions
    rels = (po.relation(x, y) for i, x in enumerate(names) for y in names[i + 1 :])
    return [r for r in rels if r is not None]


# -- argument parsing ------------------------------------------------------------


def _default_cap() -> int:
    raw = os.environ.get(ENV_CAP)
    if raw is None:
        return DEFAULT_MAX_ASSUMPTIONS
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{ENV_CAP} must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    cap = _default_cap()
    parser = argparse.ArgumentParser(prog="abaprefs", description="ABA / ABA+ reasoning and preference elicitation")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    def global_opts(p, default):
        p.add_argument("--format", choices=["text", "json"], default=default if default else argparse.SUPPRESS)
        p.add_argument(
            "--max-assumptions",
            type=int,
            default=cap if default else argparse.SUPPRESS,
            help=f"enumeration cap (default {cap}; env {ENV_CAP})",
        )

    global_opts(parser, "text")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help):
        p = sub.add_parser(name, help=help)
        global_opts(p, None)
        p.add_argument("--semantics", required=True, choices=SEMANTICS)
        p.set_defaults(func=func)
        return p

    p = command("extensions", cmd_extensions, "enumerate extensions (prefer lines define the preorder)")
    p.add_argument("--conclusions", action="store_true", help="also print Cn of each extension")
    p.add_argument("--attacks", action="store_true", help="also print the attack graph in text mode")
    p.add_argument("file")

    p = command("elicit", cmd_elicit, "elicit preference sets for an extension")
    p.add_argument("--extension", required=True, help="comma-separated assumptions")
    p.add_argument("--stage", type=int, choices=[1, 2, 3], default=3)
    p.add_argument("--case3-mode", choices=[m.value for m in Case3Mode], default="literal")
    p.add_argument("--verify", action="store_true", help="check each set for soundness")
    p.add_argument("file")

    p = command("analyze", cmd_analyze, "unique and common preferences across all extensions")
    p.add_argument("--case3-mode", choices=[m.value for m in Case3Mode], default="literal")
    p.add_argument("file")

    p = command("verify", cmd_verify, "check one preference set for an extension")
    p.add_argument("--extension", required=True)
    p.add_argument("--prefs", required=True, help='e.g. "a<b;b=c"')
    p.add_argument("file")

    p = command("oracle", cmd_oracle, "sweep all preorders (at most 5 assumptions)")
    p.add_argument("--extension", required=True)
    p.add_argument("--case3-mode", choices=[m.value for m in Case3Mode], default="literal")
    p.add_argument("file")
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except ParseError as exc:
        for d in exc.diagnostics:
            print(f"error: {d}", file=sys.stderr)
        return 2
    except NotConflictFree as exc:
        print(f"error: extension is not conflict-free: {exc}", file=sys.stderr)
        return 1
    except (UsageError, ResourceError, AbaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
