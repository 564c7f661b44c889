"""Deductions, conclusions and the attack relations of ABA and ABA+."""
from __future__ import annotations

from enum import Enum
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .core import Framework, Ordering, set_key
from .errors import AbaError


class AttackKind(Enum):
    NONE = "none"
    NORMAL = "normal"
    REVERSE = "reverse"
    BOTH = "both"

    def __bool__(self):
        return self is not AttackKind.NONE


def conclusions(f: Framework, s: Iterable[str]) -> frozenset[str]:
    """Cn(s) by forward chaining to a fixpoint."""
    known = set(f.check_assumptions(s))
    pending = list(f.rules)
    fired = True
    while fired:
        fired = False
        rest = []
        for r in pending:
            if all(b in known for b in r.body):
                known.add(r.head)
                fired = True
            else:
                rest.append(r)
        pending = rest
    return frozenset(known)


@lru_cache(maxsize=512)
def support_table(f: Framework) -> dict[str, frozenset[int]]:
    """Exact supports (as bitmasks) of every sentence in the language.

    A support is the set of assumption leaves of one deduction tree. Computed
    bottom-up until no rule produces a new leaf set; each sentence has at most
    2^|A| supports, so the iteration terminates on cyclic rule graphs too.
    """
    table: dict[str, set[int]] = {s: set() for s in f.language}
    for a in f.assumptions:
        table[a] = {f.bit[a]}
    rules = sorted(f.rules, key=lambda r: (r.head, r.body))
    changed = True
    while changed:
        changed = False
        for r in rules:
            combos = {0}
            for b in r.body:
                combos = {c | s for c in combos for s in table.get(b, ())}
                if not combos:
                    break
            head = table.setdefault(r.head, set())
            if not combos <= head:
                head |= combos
                changed = True
    return {s: frozenset(v) for s, v in table.items()}


def supports(f: Framework, phi: str) -> frozenset[frozenset[str]]:
    if phi not in f.language:
        raise AbaError(f"{phi!r} is not in the language")
    return frozenset(f.from_mask(m) for m in support_table(f)[phi])


def contrary_supports(f: Framework) -> dict[str, frozenset[int]]:
    """Supports of the contrary of each assumption, keyed by assumption."""
    table = support_table(f)
    return {a: table.get(f.contrary[a], frozenset()) for a in f.order}


def attacks(f: Framework, att: Iterable[str], tgt: Iterable[str]) -> bool:
    cn = conclusions(f, att)
    return any(f.contrary[b] in cn for b in f.check_assumptions(tgt))


class AttackIndex:
    """Bitmask attack oracle for one framework under one ordering.

    ``normal`` holds (support, target) witnesses where no support member is
    strictly below the target; ``reverse`` holds (support, a) witnesses where
    some member is strictly below ``a``. A set X attacks Y normally iff some
    normal witness has support within X and target in Y; X reverse-attacks Y
    iff some reverse witness has ``a`` in X and support within Y.
    """

    def __init__(self, f: Framework, order: Ordering | None = None):
        self.framework = f
        n = len(f.order)
        below = [0] * n  # below[i]: bits j with order.lt(j, i)
        if order is not None:
            for x, y in order.strict:
                below[f.order.index(y)] |= f.bit[x]
        self.normal: list[tuple[int, int]] = []
        self.reverse: list[tuple[int, int]] = []
        for i, (a, sups) in enumerate(contrary_supports(f).items()):
            for s in sorted(sups):
                if s & below[i]:
                    self.reverse.append((s, 1 << i))
                else:
                    self.normal.append((s, 1 << i))

    def normal_attack(self, x: int, y: int) -> bool:
        return any(s & x == s and t & y for s, t in self.normal)

    def reverse_attack(self, x: int, y: int) -> bool:
        return any(a & x and s & y == s for s, a in self.reverse)

    def attacks(self, x: int, y: int) -> bool:
        return self.normal_attack(x, y) or self.reverse_attack(x, y)

    def kind(self, x: int, y: int) -> AttackKind:
        n, r = self.normal_attack(x, y), self.reverse_attack(x, y)
        if n and r:
            return AttackKind.BOTH
        if n:
            return AttackKind.NORMAL
        if r:
            return AttackKind.REVERSE
        return AttackKind.NONE

    def minimal_attackers(self, y: int) -> set[int]:
        """Sets such that every attacker of y includes one of them.

        Both attack clauses are monotone in attacker and target, so these
        generate all attackers of y by taking supersets.
        """
        out = {s for s, t in self.normal if t & y}
        out.update(a for s, a in self.reverse if s & y == s)
        return out


def lt_attacks(f: Framework, po: Ordering, att: Iterable[str], tgt: Iterable[str]) -> AttackKind:
    """Kind of the <-attack from ``att`` on ``tgt`` under ``po``."""
    att, tgt = f.check_assumptions(att), f.check_assumptions(tgt)
    table = support_table(f)
    normal = any(
        s <= att and not any(po.lt(x, b) for x in s)
        for b in tgt
        for s in map(f.from_mask, table[f.contrary[b]])
    )
    reverse = any(
        s <= tgt and any(po.lt(x, a) for x in s)
        for a in att
        for s in map(f.from_mask, table[f.contrary[a]])
    )
    if normal and reverse:
        return AttackKind.BOTH
    return AttackKind.NORMAL if normal else AttackKind.REVERSE if reverse else AttackKind.NONE


def attack_graph(f: Framework, po: Ordering | None = None) -> list[tuple[frozenset[str], frozenset[str], AttackKind]]:
    """Attack edges among singletons and supports of contraries (the usual drawing nodes)."""
    index = AttackIndex(f, po)
    nodes = {f.bit[a] for a in f.order}
    nodes.update(s for sups in contrary_supports(f).values() for s in sups if s)
    ordered = sorted(nodes, key=lambda m: set_key(f.from_mask(m)))
    edges = []
    for x in ordered:
        for y in ordered:
            kind = index.kind(x, y)
            if kind:
                edges.append((f.from_mask(x), f.from_mask(y), kind))
    return edges


def subsets(items: Iterable[str]) -> list[frozenset[str]]:
    items = sorted(items)
    return [frozenset(c) for k in range(len(items) + 1) for c in combinations(items, k)]
