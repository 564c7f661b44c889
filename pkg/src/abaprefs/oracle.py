"""Brute-force checks of elicitation output against every preorder on the assumptions.

Everything here is exponential twice over (preorders times subsets) and is
capped at :data:`MAX_ORACLE_ASSUMPTIONS` assumptions.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .core import (
    AtomicPreference,
    Framework,
    Ordering,
    Preorder,
    Rule,
    canonicalize,
    close_preferences,
    ordered_pset,
    raw_relation,
    set_key,
)
from .analysis import unique_preferences
from .derivation import contrary_supports
from .elicitation import Case3Mode, elicit
from .errors import CapExceeded, InconsistencyError, NotConflictFree
from .semantics import Semantics, enumerate_extensions, extension_masks

log = logging.getLogger(__name__)

MAX_ORACLE_ASSUMPTIONS = 5


def _check_cap(n: int) -> None:
    if n > MAX_ORACLE_ASSUMPTIONS:
        raise CapExceeded(f"oracle supports at most {MAX_ORACLE_ASSUMPTIONS} assumptions, got {n}")


def _extend(ups: list[int], k: int):
    """All ways to add element k to the preorder given by up-sets ``ups``."""
    downs = [sum(1 << x for x in range(k) if ups[x] >> i & 1) for i in range(k)]
    for d in range(1 << k):
        if any(d >> i & 1 and downs[i] & ~d for i in range(k)):
            continue
        for u in range(1 << k):
            if any(u >> i & 1 and ups[i] & ~u for i in range(k)):
                continue
            if any(d >> i & 1 and u & ~ups[i] for i in range(k)):
                continue
            new = [up | (1 << k) if d >> i & 1 else up for i, up in enumerate(ups)]
            new.append(1 << k | u)
            yield new


def enumerate_preorders(n: int, labels: Sequence[str] | None = None) -> list[Preorder]:
    """Every preorder on n labelled elements, built one element at a time."""
    _check_cap(n)
    labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
    if len(labels) != n:
        raise ValueError("need one label per element")
    layer: list[list[int]] = [[]]
    for k in range(n):
        layer = [new for ups in layer for new in _extend(ups, k)]
    idx = sorted(range(n), key=lambda i: labels[i])
    out = []
    for ups in layer:
        pairs = frozenset((labels[i], labels[j]) for i in idx for j in idx if ups[i] >> j & 1)
        out.append(Preorder(labels, pairs))
    return out


def preorders_yielding(f: Framework, e: Iterable[str], sem: Semantics | str) -> list[Preorder]:
    """Preorders under which ``e`` is a sigma-extension."""
    _check_cap(len(f.assumptions))
    target = f.to_mask(e)
    return [po for po in enumerate_preorders(len(f.order), f.order) if target in extension_masks(f, po, sem)]


@dataclass(frozen=True)
class SetCheck:
    prefs: tuple[AtomicPreference, ...]
    consistent: bool
    closed_member: bool | None
    raw_member: bool
    extensions: tuple[frozenset[str], ...]

    @property
    def passed(self) -> bool:
        """Membership under the closure, or under the raw relation when the closure is inconsistent."""
        return self.closed_member if self.consistent else self.raw_member

    @property
    def divergent(self) -> bool:
        return self.consistent and self.closed_member != self.raw_member


@dataclass(frozen=True)
class SoundnessReport:
    extension: frozenset[str]
    semantics: Semantics
    checks: tuple[SetCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[SetCheck]:
        return [c for c in self.checks if not c.passed]


def _sigma(f, order, sem):
    return tuple(f.from_mask(m) for m in extension_masks(f, order, sem))


def check_set(f: Framework, e: frozenset[str], sem: Semantics, prefs) -> SetCheck:
    prefs = canonicalize(prefs)
    raw_exts = _sigma(f, raw_relation(f, prefs), sem)
    try:
        closed = close_preferences(f, prefs)
    except InconsistencyError:
        return SetCheck(prefs, False, None, e in raw_exts, raw_exts)
    closed_exts = _sigma(f, closed, sem)
    return SetCheck(prefs, True, e in closed_exts, e in raw_exts, closed_exts)


def verify_soundness(f: Framework, e: Iterable[str], sem: Semantics | str, pset) -> SoundnessReport:
    """Check that each preference set makes ``e`` a sigma-extension of the ABA+ framework."""
    sem = Semantics.parse(sem)
    e = f.check_assumptions(e)
    checks = tuple(check_set(f, e, sem, p) for p in ordered_pset(pset))
    return SoundnessReport(e, sem, checks)


@dataclass(frozen=True)
class CompletenessReport:
    extension: frozenset[str]
    semantics: Semantics
    covered: tuple[Preorder, ...]
    uncovered: tuple[Preorder, ...]


def compatible(po: Ordering, prefs, pairs: set[frozenset[str]]) -> bool:
    """No disagreement on any pair of ``pairs`` that both ``po`` and ``prefs`` relate."""
    given = {p.pair: p.canonical() for p in prefs}
    for pair in pairs:
        mine = given.get(pair)
        if mine is None:
            continue
        x, y = sorted(pair)
        theirs = po.relation(x, y)
        if theirs is not None and theirs != mine:
            return False
    return True


def verify_completeness(f: Framework, e: Iterable[str], sem: Semantics | str, pset) -> CompletenessReport:
    sem = Semantics.parse(sem)
    e = f.check_assumptions(e)
    pset = list(pset)
    mentioned = {p.pair for prefs in pset for p in prefs}
    covered, uncovered = [], []
    for po in preorders_yielding(f, e, sem):
        if any(compatible(po, prefs, mentioned) for prefs in pset):
            covered.append(po)
        else:
            uncovered.append(po)
    for po in uncovered:
        log.info("preorder %s yields %s but matches no elicited set", po, sorted(e))
    return CompletenessReport(e, sem, tuple(covered), tuple(uncovered))


@dataclass(frozen=True)
class ReadingWitness:
    preorder: Preorder
    attacker: str
    target: frozenset[str]


def support_reading_witness(f: Framework) -> ReadingWitness | None:
    """Find a reverse attack that exists only if supports may carry unused assumptions.

    Under that looser reading S supports phi whenever some exact support T of
    phi has T <= S. Normal attacks are unaffected (take S = T), so only the
    reverse clause is compared: {a} attacks Y when a support of a's contrary
    lies inside Y and some member of the support (exact) or of Y (loose) is
    strictly below a.
    """
    _check_cap(len(f.assumptions))
    sups = contrary_supports(f)
    full = f.full_mask
    for po in enumerate_preorders(len(f.order), f.order):
        below = {a: f.to_mask(x for x in f.order if po.lt(x, a)) for a in f.order}
        for a in f.order:
            for y in range(full + 1):
                inside = [t for t in sups[a] if t & ~y == 0]
                exact = any(t & below[a] for t in inside)
                loose = bool(inside) and bool(y & below[a])
                if exact != loose:
                    return ReadingWitness(po, a, f.from_mask(y))
    return None


# -- random sweeps ------------------------------------------------------------


def random_framework(rng: random.Random, max_assumptions: int = 4, max_rules: int = 6) -> Framework:
    """A random flat framework; contraries are occasionally other assumptions."""
    n = rng.randint(1, max_assumptions)
    assumptions = [chr(ord("a") + i) for i in range(n)]
    others = [f"p{i}" for i in range(rng.randint(1, 4))]
    contrary = {a: rng.choice(others + assumptions if rng.random() < 0.15 else others) for a in assumptions}
    rules = set()
    for _ in range(rng.randint(0, max_rules)):
        body = rng.sample(assumptions + others, rng.randint(0, min(3, n + len(others))))
        if rng.random() < 0.2 and body:
            body = body[:1]
        rules.add(Rule(rng.choice(others), tuple(sorted(body))))
    return Framework.build(assumptions, contrary, rules, others)


def minimize_framework(f: Framework, still_fails) -> Framework:
    """Greedily drop rules while ``still_fails(framework)`` keeps holding."""
    rules = sorted(f.rules, key=lambda r: (r.head, r.body))
    i = 0
    while i < len(rules):
        trial = rules[:i] + rules[i + 1 :]
        g = Framework(f.language, frozenset(trial), f.assumptions, f.contrary)
        if still_fails(g):
            rules, f = trial, g
        else:
            i += 1
    return f


@dataclass
class Counterexample:
    framework: Framework
    extension: frozenset[str]
    semantics: Semantics
    prefs: tuple[AtomicPreference, ...]
    extensions: tuple[frozenset[str], ...]


@dataclass
class SweepReport:
    frameworks: int = 0
    extensions: int = 0
    sets_checked: int = 0
    inconsistent: int = 0
    reading_sensitive: int = 0
    failures: list[Counterexample] = field(default_factory=list)


def _first_failure(f, e, sem, mode):
    if e - f.assumptions or f.to_mask(e) not in extension_masks(f, None, sem):
        return None
    try:
        pset = elicit(f, e, mode).pset
    except NotConflictFree:
        return None
    for prefs in ordered_pset(pset):
        check = check_set(f, e, sem, prefs)
        if check.consistent and not check.closed_member:
            return check
    return None


def soundness_sweep(
    count: int,
    seed: int = 0,
    semantics: Sequence[Semantics] = (Semantics.PREFERRED, Semantics.STABLE, Semantics.GROUNDED, Semantics.COMPLETE),
    mode: Case3Mode | str = Case3Mode.LITERAL,
    max_assumptions: int = 4,
    max_rules: int = 6,
) -> SweepReport:
    """Elicit for every sigma-extension of random frameworks and check closed-form membership.

    Failures are minimized (by rule removal) and collected, never raised.
    """
    rng = random.Random(seed)
    report = SweepReport()
    for _ in range(count):
        f = random_framework(rng, max_assumptions, max_rules)
        report.frameworks += 1
        if support_reading_witness(f) is not None:
            report.reading_sensitive += 1
        for sem in semantics:
            for ext in enumerate_extensions(f, None, sem):
                e = ext.assumptions
                report.extensions += 1
                for prefs in ordered_pset(elicit(f, e, mode).pset):
                    check = check_set(f, e, sem, prefs)
                    report.sets_checked += 1
                    if not check.consistent:
                        report.inconsistent += 1
                        continue
                    if check.closed_member:
                        continue
                    small = minimize_framework(f, lambda g: _first_failure(g, e, sem, mode) is not None)
                    bad = _first_failure(small, e, sem, mode)
                    report.failures.append(Counterexample(small, e, sem, bad.prefs, bad.extensions))
                    log.info("soundness counterexample under %s for %s: %s", sem.value, sorted(e), bad.prefs)
                    break
    return report


def unique_combination_diagnostic(f: Framework, sem: Semantics | str) -> dict[frozenset[str], list[tuple[tuple[AtomicPreference, ...], bool]]]:
    """For each extension, combine one pairwise-unique preference per rival extension.

    Each combination is closed and checked to yield the extension while none
    of the rivals is an extension. Combinations with inconsistent closure are skipped.
    """
    sem = Semantics.parse(sem)
    exts = [x.assumptions for x in enumerate_extensions(f, None, sem)]
    psets = {e: elicit(f, e).pset for e in exts}
    out = {}
    for e in sorted(exts, key=set_key):
        rivals = [o for o in exts if o != e]
        choices = [sorted(unique_preferences(psets[e], [psets[o]])) for o in rivals]
        results = []
        for combo in product(*choices) if rivals else ():
            prefs = canonicalize(combo)
            try:
                po = close_preferences(f, prefs)
            except (InconsistencyError, ValueError):
                continue
            got = _sigma(f, po, sem)
            results.append((prefs, e in got and not any(o in got for o in rivals)))
        out[e] = results
    return out
