"""Domain model: flat ABA frameworks, atomic preferences and preorders over assumptions.

Sentences and assumptions are plain strings. Sets of assumptions are
``frozenset[str]`` in the public API; internally each framework assigns every
assumption a bit (in sorted order) so that enumeration code can work on ints.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .errors import InconsistencyError, InvalidFramework, UnknownAssumption

Sentence = str
AssumptionSet = frozenset  # frozenset[str]

IDENTIFIER = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


def set_key(s: Iterable[str]) -> tuple[int, tuple[str, ...]]:
    """Canonical sort key for assumption sets: by size, then lexicographically."""
    members = tuple(sorted(s))
    return len(members), members


def fmt_set(s: Iterable[str]) -> str:
    return "{" + ",".join(sorted(s)) + "}"


@dataclass(frozen=True)
class Rule:
    head: str
    body: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "body", tuple(self.body))

    def __str__(self):
        return " ".join((self.head, "<-") + self.body)


@dataclass(frozen=True, eq=False)
class Framework:
    """The ABA tuple (language, rules, assumptions, contrary).

    Construction does not validate; see :func:`validate_framework`.
    """

    language: frozenset[str]
    rules: frozenset[Rule]
    assumptions: frozenset[str]
    contrary: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "language", frozenset(self.language))
        object.__setattr__(self, "rules", frozenset(self.rules))
        object.__setattr__(self, "assumptions", frozenset(self.assumptions))
        object.__setattr__(self, "contrary", MappingProxyType(dict(self.contrary)))

    @classmethod
    def build(
        cls,
        assumptions: Iterable[str],
        contrary: Mapping[str, str],
        rules: Iterable[Rule | tuple[str, Iterable[str]]] = (),
        language: Iterable[str] = (),
    ) -> Framework:
        """Convenience constructor; the language is extended with every mentioned sentence."""
        rules = [r if isinstance(r, Rule) else Rule(r[0], tuple(r[1])) for r in rules]
        lang = set(language) | set(assumptions) | set(contrary.values())
        for r in rules:
            lang.add(r.head)
            lang.update(r.body)
        return cls(frozenset(lang), frozenset(rules), frozenset(assumptions), contrary)

    def _key(self):
        return (
            self.language,
            self.rules,
            self.assumptions,
            tuple(sorted(self.contrary.items())),
        )

    def __eq__(self, other):
        if not isinstance(other, Framework):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    @cached_property
    def order(self) -> tuple[str, ...]:
        """Assumptions in canonical (sorted) order; position i is bit i."""
        return tuple(sorted(self.assumptions))

    @cached_property
    def bit(self) -> dict[str, int]:
        return {a: 1 << i for i, a in enumerate(self.order)}

    @property
    def full_mask(self) -> int:
        return (1 << len(self.order)) - 1

    def to_mask(self, names: Iterable[str]) -> int:
        mask = 0
        for n in names:
            try:
                mask |= self.bit[n]
            except KeyError:
                raise UnknownAssumption(f"{n!r} is not an assumption") from None
        return mask

    def from_mask(self, mask: int) -> frozenset[str]:
        return frozenset(a for i, a in enumerate(self.order) if mask >> i & 1)

    def check_assumptions(self, names: Iterable[str]) -> frozenset[str]:
        names = frozenset(names)
        unknown = sorted(names - self.assumptions)
        if unknown:
            raise UnknownAssumption("not assumptions: " + ", ".join(unknown))
        return names


@dataclass(frozen=True)
class Violation:
    code: str
    message: str

    def __str__(self):
        return f"{self.code}: {self.message}"


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def codes(self) -> set[str]:
        return {v.code for v in self.violations}


def validate_framework(f: Framework) -> ValidationReport:
    report = ValidationReport()
    add = lambda code, msg: report.violations.append(Violation(code, msg))  # noqa: E731

    if not f.assumptions:
        add("empty-assumptions", "the set of assumptions is empty")
    for a in sorted(f.assumptions - f.language):
        add("assumption-outside-language", f"assumption {a} is not in the language")
    for a in sorted(f.assumptions):
        if a not in f.contrary:
            add("contrary-not-total", f"assumption {a} has no contrary")
    for a, c in sorted(f.contrary.items()):
        if a not in f.assumptions:
            add("contrary-of-non-assumption", f"contrary given for non-assumption {a}")
        if c not in f.language:
            add("contrary-outside-language", f"contrary {c} of {a} is not in the language")
    for r in sorted(f.rules, key=lambda r: (r.head, r.body)):
        outside = [s for s in (r.head, *r.body) if s not in f.language]
        if outside:
            add("rule-outside-language", f"rule '{r}' mentions {', '.join(outside)} outside the language")
        if r.head in f.assumptions:
            add("non-flat", f"assumption {r.head} is the head of rule '{r}'")
    return report


def require_valid(f: Framework) -> Framework:
    report = validate_framework(f)
    if not report.valid:
        raise InvalidFramework(report)
    return f


# -- preferences -------------------------------------------------------------


class Rel(str, Enum):
    STRICT = "<"
    EQUAL = "="


@dataclass(frozen=True, order=True)
class AtomicPreference:
    """``left < right`` (left strictly less preferred) or ``left = right``."""

    left: str
    rel: Rel
    right: str

    def __post_init__(self):
        object.__setattr__(self, "rel", Rel(self.rel))
        if self.left == self.right:
            raise ValueError(f"preference relates {self.left} to itself")

    @classmethod
    def lt(cls, x: str, y: str) -> AtomicPreference:
        return cls(x, Rel.STRICT, y)

    @classmethod
    def eq(cls, x: str, y: str) -> AtomicPreference:
        return cls(min(x, y), Rel.EQUAL, max(x, y))

    @classmethod
    def parse(cls, text: str) -> AtomicPreference:
        m = re.fullmatch(r"\s*([A-Za-z]\w*)\s*([<=])\s*([A-Za-z]\w*)\s*", text)
        if not m:
            raise ValueError(f"malformed preference {text!r}")
        return cls(m[1], Rel(m[2]), m[3])

    @property
    def pair(self) -> frozenset[str]:
        return frozenset((self.left, self.right))

    def canonical(self) -> AtomicPreference:
        if self.rel is Rel.EQUAL and self.left > self.right:
            return AtomicPreference(self.right, Rel.EQUAL, self.left)
        return self

    def __str__(self):
        return f"{self.left}{self.rel.value}{self.right}"


PreferenceSet = frozenset  # frozenset[AtomicPreference], atoms in canonical form
PSet = frozenset  # frozenset[PreferenceSet]


def canonicalize(prefs: Iterable[AtomicPreference]) -> tuple[AtomicPreference, ...]:
    """Canonical, deduplicated, sorted form of a preference set."""
    return tuple(sorted({p.canonical() for p in prefs}))


def preference_set(prefs: Iterable[AtomicPreference | str]) -> frozenset[AtomicPreference]:
    atoms = (AtomicPreference.parse(p) if isinstance(p, str) else p for p in prefs)
    return frozenset(canonicalize(atoms))


def check_preference_set(prefs: Iterable[AtomicPreference]) -> None:
    """Raise ValueError unless every unordered pair carries at most one relation."""
    seen: dict[frozenset[str], AtomicPreference] = {}
    for p in {q.canonical() for q in prefs}:
        other = seen.setdefault(p.pair, p)
        if other != p:
            raise ValueError(f"conflicting preferences {other} and {p}")


def ordered_pset(pset: Iterable[Iterable[AtomicPreference]]) -> list[tuple[AtomicPreference, ...]]:
    """Deterministic listing of a set of preference sets."""
    return sorted({canonicalize(ps) for ps in pset}, key=lambda t: (len(t), t))


def fmt_prefs(prefs: Iterable[AtomicPreference]) -> str:
    return "{" + ", ".join(str(p) for p in canonicalize(prefs)) + "}"


# -- orderings -----------------------------------------------------------------


@dataclass(frozen=True)
class Ordering:
    """A reflexive relation ``leq`` on the assumptions; ``lt`` is its strict part.

    Plain orderings need not be transitive. They model elicited preference
    sets read literally, without closure. :class:`Preorder` adds transitivity.
    """

    assumptions: tuple[str, ...]
    pairs: frozenset[tuple[str, str]]

    def __post_init__(self):
        object.__setattr__(self, "assumptions", tuple(sorted(self.assumptions)))
        refl = {(x, x) for x in self.assumptions}
        object.__setattr__(self, "pairs", frozenset(self.pairs) | refl)
        known = set(self.assumptions)
        for x, y in self.pairs:
            if x not in known or y not in known:
                raise UnknownAssumption(f"pair ({x}, {y}) mentions a non-assumption")

    @classmethod
    def identity(cls, assumptions: Iterable[str]):
        return cls(tuple(assumptions), frozenset())

    def leq(self, x: str, y: str) -> bool:
        return (x, y) in self.pairs

    def lt(self, x: str, y: str) -> bool:
        return (x, y) in self.pairs and (y, x) not in self.pairs

    @cached_property
    def strict(self) -> frozenset[tuple[str, str]]:
        return frozenset((x, y) for x, y in self.pairs if (y, x) not in self.pairs)

    def relation(self, x: str, y: str) -> AtomicPreference | None:
        """The pair {x, y} as an atomic preference, or None when incomparable."""
        up, down = self.leq(x, y), self.leq(y, x)
        if up and down:
            return AtomicPreference.eq(x, y)
        if up:
            return AtomicPreference.lt(x, y)
        if down:
            return AtomicPreference.lt(y, x)
        return None

    def __str__(self):
        rels = [self.relation(x, y) for i, x in enumerate(self.assumptions) for y in self.assumptions[i + 1 :]]
        return fmt_prefs(r for r in rels if r is not None)


@dataclass(frozen=True)
class Preorder(Ordering):
    def __post_init__(self):
        super().__post_init__()
        pairs = self.pairs
        for x, y in pairs:
            for z in self.assumptions:
                if (y, z) in pairs and (x, z) not in pairs:
                    raise ValueError(f"not transitive: {x}<={y}<={z} but not {x}<={z}")


def _prefs_for(f: Framework, ps: Iterable[AtomicPreference]) -> list[AtomicPreference]:
    ps = [p.canonical() for p in ps]
    for p in ps:
        f.check_assumptions((p.left, p.right))
    check_preference_set(ps)
    return ps


def _generators(ps: Iterable[AtomicPreference]) -> Iterator[tuple[str, str]]:
    for p in ps:
        yield p.left, p.right
        if p.rel is Rel.EQUAL:
            yield p.right, p.left


def close_preferences(f: Framework, ps: Iterable[AtomicPreference]) -> Preorder:
    """Smallest preorder containing the preferences; strict ones must stay strict."""
    ps = _prefs_for(f, ps)
    idx = {a: i for i, a in enumerate(f.order)}
    up = [1 << i for i in range(len(f.order))]  # up[i]: bits j with i <= j
    for x, y in _generators(ps):
        up[idx[x]] |= 1 << idx[y]
    for k in range(len(up)):
        kbit = 1 << k
        for i in range(len(up)):
            if up[i] & kbit:
                up[i] |= up[k]
    for p in ps:
        if p.rel is Rel.STRICT and up[idx[p.right]] >> idx[p.left] & 1:
            raise InconsistencyError(f"closure forces {p.right} <= {p.left}, contradicting {p}")
    pairs = frozenset((x, y) for x in f.order for j, y in enumerate(f.order) if up[idx[x]] >> j & 1)
    return Preorder(f.order, pairs)


def raw_relation(f: Framework, ps: Iterable[AtomicPreference]) -> Ordering:
    """The preferences exactly as listed (reflexive, not transitively closed)."""
    ps = _prefs_for(f, ps)
    return Ordering(f.order, frozenset(_generators(ps)))


def identity_preorder(f: Framework) -> Preorder:
    return Preorder.identity(f.order)
