"""Preference elicitation: which preference sets make a given extension acceptable.

Given a framework and a conflict-free set E, three stages build a set of
candidate preference sets over assumptions:

* stage 1: each a in E attacked by some B with no unattacked defender gets
  ``b <= a`` for every b in B and ``b < a`` for at least one of them;
* stage 2: each b whose contrary is derivable with help of some a in E gets
  ``b < a`` or ``b = a``;
* stage 3: attacks on a in E that are countered by an unattacked defender
  leave the pair free (``b < a``, ``b = a`` or ``a < b``).

Every stage skips a pair that is already related in the sets built so far,
so the processing order (sorted assumptions, canonically sorted attackers)
is part of the result.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .core import (
    AtomicPreference,
    Framework,
    Rel,
    identity_preorder,
    ordered_pset,
    require_valid,
    set_key,
)
from .derivation import contrary_supports
from .errors import NotConflictFree
from .semantics import is_conflict_free

EMPTY = frozenset({frozenset()})


class Case3Mode(Enum):
    LITERAL = "literal"
    PROSE = "prose"


def _pairs(pset) -> set[frozenset[str]]:
    return {p.pair for prefs in pset for p in prefs}


def _branch(pset, options):
    return frozenset(prefs | opt for prefs in pset for opt in options)


def attackers_of(f: Framework, e: Iterable[str], a: str) -> list[frozenset[str]]:
    """Supports of the contrary of ``a`` that are not contained in ``e``."""
    e_mask = f.to_mask(e)
    found = [s for s in contrary_supports(f)[a] if s & ~e_mask]
    return sorted((f.from_mask(s) for s in found), key=set_key)


def _attacked_from_outside(f: Framework, e_mask: int, x: int) -> bool:
    sups = contrary_supports(f)
    return any(s & ~e_mask for i, a in enumerate(f.order) if x >> i & 1 for s in sups[a])


def defense_supports(f: Framework, e: Iterable[str], a: str, b_set: Iterable[str]) -> list[frozenset[str]]:
    """Unattacked supports of some contrary of ``b_set`` that use a member of ``e`` other than ``a``.

    "Unattacked" means no support of a contrary of any member lies outside ``e``.
    """
    e_mask = f.to_mask(e)
    others = e_mask & ~f.bit[a]
    sups = contrary_supports(f)
    found = set()
    for b in f.check_assumptions(b_set):
        for x in sups[b]:
            if x & others and not _attacked_from_outside(f, e_mask, x):
                found.add(x)
    return sorted((f.from_mask(x) for x in found), key=set_key)


def _all_equal(prefs) -> bool:
    return bool(prefs) and all(p.rel is Rel.EQUAL for p in prefs)


def compute_case1(f: Framework, e: Iterable[str]) -> frozenset:
    e = f.check_assumptions(e)
    acc: frozenset = frozenset()
    for a in sorted(e):
        for attacker in attackers_of(f, e, a):
            if defense_supports(f, e, a, attacker):
                continue
            related = _pairs(acc)
            block = EMPTY
            for b in sorted(attacker):
                if b == a or frozenset((a, b)) in related:
                    continue
                block = _branch(block, ({AtomicPreference.lt(b, a)}, {AtomicPreference.eq(b, a)}))
            block = frozenset(p for p in block if not _all_equal(p))
            acc = block if not acc else _branch(block, acc)
    return acc or EMPTY


def compute_case2(f: Framework, e: Iterable[str], pset) -> frozenset:
    e = f.check_assumptions(e)
    pset = frozenset(pset) or EMPTY
    sups = contrary_supports(f)
    for a in sorted(e):
        abit = f.bit[a]
        attacked = [b for b in f.order if any(s & abit for s in sups[b])]
        for b in attacked:
            if b == a or frozenset((a, b)) in _pairs(pset):
                continue
            pset = _branch(pset, ({AtomicPreference.lt(b, a)}, {AtomicPreference.eq(b, a)}))
    return pset


def _prose_block(a: str, bs: list[str]) -> list[frozenset]:
    """Some b below a, all equal, or a below some b; never mixed directions."""
    lt, eq = AtomicPreference.lt, AtomicPreference.eq
    below = [frozenset(c) for c in itertools.product(*[(lt(b, a), eq(b, a)) for b in bs])]
    above = [frozenset(c) for c in itertools.product(*[(lt(a, b), eq(b, a)) for b in bs])]
    equal = frozenset(eq(b, a) for b in bs)
    return [p for p in below if p != equal] + [equal] + [p for p in above if p != equal]


def compute_case3(f: Framework, e: Iterable[str], pset, mode: Case3Mode | str = Case3Mode.LITERAL) -> frozenset:
    e = f.check_assumptions(e)
    mode = Case3Mode(mode)
    pset = frozenset(pset) or EMPTY
    lt, eq = AtomicPreference.lt, AtomicPreference.eq
    for a in sorted(e):
        for attacker in attackers_of(f, e, a):
            if not defense_supports(f, e, a, attacker):
                continue
            if mode is Case3Mode.PROSE:
                related = _pairs(pset)
                bs = [b for b in sorted(attacker) if b != a and frozenset((a, b)) not in related]
                if bs:
                    pset = _branch(pset, _prose_block(a, bs))
                continue
            for b in sorted(attacker):
                if b == a or frozenset((a, b)) in _pairs(pset):
                    continue
                pset = _branch(pset, ({lt(b, a)}, {eq(b, a)}, {lt(a, b)}))
    return pset


@dataclass(frozen=True)
class Elicitation:
    framework: Framework
    extension: frozenset[str]
    case1: frozenset
    case2: frozenset
    case3: frozenset

    @property
    def pset(self) -> frozenset:
        return self.case3

    def stage(self, n: int) -> frozenset:
        return (self.case1, self.case2, self.case3)[n - 1]

    def ordered(self, stage: int = 3) -> list[tuple[AtomicPreference, ...]]:
        return ordered_pset(self.stage(stage))


def elicit(f: Framework, e: Iterable[str], case3_mode: Case3Mode | str = Case3Mode.LITERAL) -> Elicitation:
    """Run all three stages, keeping each stage's output."""
    require_valid(f)
    e = f.check_assumptions(e)
    if not is_conflict_free(f, identity_preorder(f), e):
        raise NotConflictFree("{" + ",".join(sorted(e)) + "} attacks itself")
    s1 = compute_case1(f, e)
    s2 = compute_case2(f, e, s1)
    s3 = compute_case3(f, e, s2, case3_mode)
    return Elicitation(f, e, s1, s2, s3)


def compute_all_preferences(f: Framework, e: Iterable[str], case3_mode: Case3Mode | str = Case3Mode.LITERAL) -> frozenset:
    return elicit(f, e, case3_mode).pset
