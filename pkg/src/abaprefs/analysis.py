"""Unique and common preferences across the extensions of a multi-extension semantics."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .core import AtomicPreference, Framework, ordered_pset, set_key
from .elicitation import Case3Mode, elicit
from .semantics import DEFAULT_MAX_ASSUMPTIONS, Semantics, enumerate_extensions


def _atoms(pset) -> set[AtomicPreference]:
    return {p.canonical() for prefs in pset for p in prefs}


def unique_preferences(target, others: Iterable) -> set[AtomicPreference]:
    """Preferences of ``target`` that occur in no set of any other extension."""
    seen = set().union(*(_atoms(o) for o in others))
    return _atoms(target) - seen


def common_preferences(target, others: Iterable) -> set[AtomicPreference]:
    """Preferences of ``target`` that every other extension has in at least one set."""
    common = _atoms(target)
    for o in others:
        common &= _atoms(o)
    return common


@dataclass(frozen=True)
class ReportRow:
    extension: frozenset[str]
    pset: frozenset
    unique: frozenset[AtomicPreference]
    common: frozenset[AtomicPreference]

    def ordered(self):
        return ordered_pset(self.pset)


@dataclass(frozen=True)
class PreferenceReport:
    semantics: Semantics
    rows: tuple[ReportRow, ...]


def analyze_all(
    f: Framework,
    sem: Semantics | str,
    case3_mode: Case3Mode | str = Case3Mode.LITERAL,
    max_assumptions: int = DEFAULT_MAX_ASSUMPTIONS,
) -> PreferenceReport:
    sem = Semantics.parse(sem)
    exts = [x.assumptions for x in enumerate_extensions(f, None, sem, max_assumptions)]
    psets = {e: elicit(f, e, case3_mode).pset for e in exts}
    rows = []
    for e in sorted(exts, key=set_key):
        others = [psets[o] for o in exts if o != e]
        rows.append(
            ReportRow(
                e,
                psets[e],
                frozenset(unique_preferences(psets[e], others)),
                frozenset(common_preferences(psets[e], others)),
            )
        )
    return PreferenceReport(sem, tuple(rows))
