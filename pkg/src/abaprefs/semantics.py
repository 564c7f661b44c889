"""Extension semantics for ABA and ABA+ by exhaustive enumeration.

Plain ABA is the special case of the identity preorder, whose strict part is
empty. Candidates are all 2^|A| subsets; :data:`DEFAULT_MAX_ASSUMPTIONS`
bounds |A| so oversized inputs fail fast instead of hanging.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .core import Framework, Ordering, identity_preorder, require_valid, set_key
from .derivation import AttackIndex, conclusions, lt_attacks, subsets
from .errors import ResourceError

DEFAULT_MAX_ASSUMPTIONS = 20


class Semantics(Enum):
    CONFLICT_FREE = "cf"
    ADMISSIBLE = "adm"
    PREFERRED = "prf"
    STABLE = "stb"
    COMPLETE = "com"
    GROUNDED = "grd"

    @classmethod
    def parse(cls, name: str | Semantics) -> Semantics:
        if isinstance(name, Semantics):
            return name
        for s in cls:
            if name in (s.value, s.name.lower(), s.name.lower().replace("_", "-")):
                return s
        raise ValueError(f"unknown semantics {name!r}")


@dataclass(frozen=True)
class Extension:
    assumptions: frozenset[str]
    conclusions: frozenset[str]

    def __str__(self):
        return "{" + ",".join(sorted(self.assumptions)) + "}"


def is_conflict_free(f: Framework, po: Ordering, e: Iterable[str]) -> bool:
    e = f.check_assumptions(e)
    return not lt_attacks(f, po, e, e)


def defends(f: Framework, po: Ordering, e: Iterable[str], x: Iterable[str]) -> bool:
    """Whether ``e`` counter-attacks every subset of A that attacks ``x``."""
    e, x = f.check_assumptions(e), f.check_assumptions(x)
    return all(lt_attacks(f, po, e, b) for b in subsets(f.assumptions) if lt_attacks(f, po, b, x))


def _popcount(m: int) -> int:
    return bin(m).count("1")


class _Evaluator:
    def __init__(self, f: Framework, po: Ordering):
        self.f = f
        self.index = AttackIndex(f, po)
        self.n = len(f.order)
        self._minimal = {}

    def minimal_attackers(self, y: int) -> set[int]:
        got = self._minimal.get(y)
        if got is None:
            got = self._minimal[y] = self.index.minimal_attackers(y)
        return got

    def conflict_free(self, m: int) -> bool:
        return not self.index.attacks(m, m)

    def defends(self, e: int, x: int) -> bool:
        return all(self.index.attacks(e, b) for b in self.minimal_attackers(x))

    def admissible(self, m: int) -> bool:
        return self.conflict_free(m) and self.defends(m, m)

    def stable(self, m: int) -> bool:
        if not self.conflict_free(m):
            return False
        return all(self.index.attacks(m, 1 << i) for i in range(self.n) if not m >> i & 1)

    def complete(self, m: int) -> bool:
        if not self.admissible(m):
            return False
        return not any(self.defends(m, 1 << i) for i in range(self.n) if not m >> i & 1)


def _maximal(masks: list[int]) -> list[int]:
    return [m for m in masks if not any(o != m and o & m == m for o in masks)]


def _minimal(masks: list[int]) -> list[int]:
    return [m for m in masks if not any(o != m and o & m == o for o in masks)]


def extension_masks(
    f: Framework,
    po: Ordering | None,
    sem: Semantics | str,
    max_assumptions: int = DEFAULT_MAX_ASSUMPTIONS,
) -> list[int]:
    sem = Semantics.parse(sem)
    n = len(f.assumptions)
    if n > max_assumptions:
        raise ResourceError(
            f"{n} assumptions exceed the enumeration cap of {max_assumptions} (2^{n} candidate sets)"
        )
    require_valid(f)
    if po is None:
        po = identity_preorder(f)
    if tuple(po.assumptions) != f.order:
        raise ValueError("ordering is over a different set of assumptions")

    ev = _Evaluator(f, po)
    candidates = range(1 << n)
    if sem is Semantics.CONFLICT_FREE:
        found = [m for m in candidates if ev.conflict_free(m)]
    elif sem is Semantics.ADMISSIBLE:
        found = [m for m in candidates if ev.admissible(m)]
    elif sem is Semantics.PREFERRED:
        found = _maximal([m for m in candidates if ev.admissible(m)])
    elif sem is Semantics.STABLE:
        found = [m for m in candidates if ev.stable(m)]
    elif sem is Semantics.COMPLETE:
        found = [m for m in candidates if ev.complete(m)]
    else:
        found = _minimal([m for m in candidates if ev.complete(m)])
    return sorted(found, key=lambda m: set_key(f.from_mask(m)))


def enumerate_extensions(
    f: Framework,
    po: Ordering | None = None,
    sem: Semantics | str = Semantics.PREFERRED,
    max_assumptions: int = DEFAULT_MAX_ASSUMPTIONS,
) -> list[Extension]:
    """All sigma-extensions of ``f`` under ``po`` (identity when omitted), canonically sorted.

    Raises ResourceError if |A| exceeds ``max_assumptions``.
    """
    out = []
    for m in extension_masks(f, po, sem, max_assumptions):
        e = f.from_mask(m)
        out.append(Extension(e, conclusions(f, e)))
    return out


def is_extension(f: Framework, po: Ordering | None, sem: Semantics | str, e: Iterable[str], **kw) -> bool:
    target = f.to_mask(e)
    return target in extension_masks(f, po, sem, **kw)
