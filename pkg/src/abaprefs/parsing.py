"""Line-based text format for ABA and ABA+ frameworks.

::

    # comment
    assumption a
    contrary a e
    rule d <- a c
    rule f <-
    prefer a < b
    prefer b = c

Declarations may come in any order. Sentences mentioned only in rules or
contraries join the language implicitly.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .core import IDENTIFIER, AtomicPreference, Framework, Rel, Rule, canonicalize
from .errors import ParseError


@dataclass(frozen=True)
class Diagnostic:
    line: int
    column: int
    message: str
    source: str = "<input>"

    def __str__(self):
        return f"{self.source}:{self.line}:{self.column}: {self.message}"


@dataclass(frozen=True)
class Decl:
    kind: str  # assumption | contrary | rule | prefer
    args: tuple
    line: int
    column: int


@dataclass
class InputDocument:
    declarations: list[Decl]
    framework: Framework
    preferences: tuple[AtomicPreference, ...]
    warnings: list[Diagnostic] = field(default_factory=list)


def _tokens(line: str) -> list[tuple[int, str]]:
    out, i = [], 0
    while i < len(line):
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < len(line) and not line[j].isspace():
            j += 1
        out.append((i + 1, line[i:j]))
        i = j
    return out


def _syntax(lineno: int, toks: list[tuple[int, str]], source: str) -> tuple[Decl | None, list[Diagnostic]]:
    errs: list[Diagnostic] = []
    col, word = toks[0]

    def bad(c, msg):
        errs.append(Diagnostic(lineno, c, msg, source))
        return None, errs

    def idents(items):
        for c, t in items:
            if not IDENTIFIER.match(t):
                errs.append(Diagnostic(lineno, c, f"invalid identifier {t!r}", source))
        return tuple(t for _, t in items)

    if word == "assumption":
        if len(toks) != 2:
            return bad(col, "expected: assumption <id>")
        args = idents(toks[1:])
    elif word == "contrary":
        if len(toks) != 3:
            return bad(col, "expected: contrary <assumption> <sentence>")
        args = idents(toks[1:])
    elif word == "rule":
        if len(toks) < 3 or toks[2][1] != "<-":
            return bad(col, "expected: rule <head> <- [<body> ...]")
        head = idents(toks[1:2])
        body = idents(toks[3:])
        args = (head[0], body)
    elif word == "prefer":
        if len(toks) != 4 or toks[2][1] not in ("<", "="):
            return bad(col, "expected: prefer <id> < <id>  or  prefer <id> = <id>")
        left, right = idents([toks[1], toks[3]])
        if left == right:
            return bad(toks[3][0], f"preference relates {left} to itself")
        args = (left, toks[2][1], right)
    else:
        return bad(col, f"unknown declaration {word!r}")
    if errs:
        return None, errs
    return Decl(word, args, lineno, col), errs


def parse(text: str | bytes, source: str = "<input>") -> InputDocument:
    """Parse a framework document; all problems are collected into one ParseError."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    decls: list[Decl] = []
    errors: list[Diagnostic] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = _tokens(raw.split("#", 1)[0])
        if not toks:
            continue
        decl, errs = _syntax(lineno, toks, source)
        errors.extend(errs)
        if decl:
            decls.append(decl)

    assumptions = {d.args[0] for d in decls if d.kind == "assumption"}
    contrary: dict[str, tuple[str, Decl]] = {}
    rules: set[Rule] = set()
    prefs: dict[frozenset[str], tuple[AtomicPreference, Decl]] = {}
    warnings: list[Diagnostic] = []

    for d in decls:
        if d.kind == "contrary":
            a, c = d.args
            if a not in assumptions:
                errors.append(Diagnostic(d.line, d.column, f"contrary of undeclared assumption {a}", source))
            elif a in contrary and contrary[a][0] != c:
                errors.append(
                    Diagnostic(d.line, d.column, f"second contrary {c} for {a} (already {contrary[a][0]})", source)
                )
            else:
                contrary.setdefault(a, (c, d))
        elif d.kind == "rule":
            head, body = d.args
            if head in assumptions:
                errors.append(Diagnostic(d.line, d.column, f"flatness violated: assumption {head} is a rule head", source))
            rules.add(Rule(head, body))
        elif d.kind == "prefer":
            left, rel, right = d.args
            unknown = [x for x in (left, right) if x not in assumptions]
            if unknown:
                errors.append(
                    Diagnostic(d.line, d.column, "preference over non-assumption " + ", ".join(unknown), source)
                )
                continue
            p = AtomicPreference(left, Rel(rel), right).canonical()
            prev = prefs.setdefault(p.pair, (p, d))
            if prev[0] != p:
                errors.append(
                    Diagnostic(d.line, d.column, f"preference {p} conflicts with {prev[0]} on line {prev[1].line}", source)
                )

    for a in sorted(assumptions - contrary.keys()):
        d = next(x for x in decls if x.kind == "assumption" and x.args[0] == a)
        errors.append(Diagnostic(d.line, d.column, f"assumption {a} has no contrary", source))
    if not assumptions and not errors:
        errors.append(Diagnostic(1, 1, "no assumptions declared", source))
    if errors:
        raise ParseError(sorted(errors, key=lambda e: (e.line, e.column)))

    in_rules = {s for r in rules for s in (r.head, *r.body)}
    for a, (c, d) in sorted(contrary.items()):
        if c not in assumptions and c not in in_rules:
            warnings.append(Diagnostic(d.line, d.column, f"sentence {c} occurs only as a contrary; added to the language", source))

    f = Framework.build(assumptions, {a: c for a, (c, _) in contrary.items()}, rules)
    return InputDocument(decls, f, canonicalize(p for p, _ in prefs.values()), warnings)


def dump(f: Framework, prefs=()) -> str:
    """Serialize a framework (and optional preferences) back to the text format."""
    lines = [f"assumption {a}" for a in f.order]
    lines += [f"contrary {a} {f.contrary[a]}" for a in f.order]
    lines += [f"rule {r}" for r in sorted(f.rules, key=lambda r: (r.head, r.body))]
    lines += [f"prefer {p.left} {p.rel.value} {p.right}" for p in canonicalize(prefs)]
    return "\n".join(lines) + "\n"
