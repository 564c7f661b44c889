"""Assumption-based argumentation with preferences, and elicitation of those preferences."""

__version__ = "0.1.0"

from .core import (
    AtomicPreference,
    Framework,
    Ordering,
    Preorder,
    Rel,
    Rule,
    canonicalize,
    close_preferences,
    identity_preorder,
    raw_relation,
    validate_framework,
)
from .derivation import AttackKind, attacks, conclusions, lt_attacks, supports
from .semantics import Extension, Semantics, defends, enumerate_extensions, is_conflict_free
from .elicitation import (
    Case3Mode,
    compute_all_preferences,
    compute_case1,
    compute_case2,
    compute_case3,
    elicit,
)
from .analysis import analyze_all, common_preferences, unique_preferences
from .parsing import dump, parse

__all__ = [
    "AtomicPreference", "AttackKind", "Case3Mode", "Extension", "Framework", "Ordering",
    "Preorder", "Rel", "Rule", "Semantics", "analyze_all", "attacks", "canonicalize",
    "close_preferences", "common_preferences", "compute_all_preferences", "compute_case1",
    "compute_case2", "compute_case3", "conclusions", "defends", "dump", "elicit",
    "enumerate_extensions", "identity_preorder", "is_conflict_free", "lt_attacks", "parse",
    "raw_relation", "supports", "unique_preferences", "validate_framework",
]
