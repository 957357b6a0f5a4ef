"""Levelwise meanings and the search for globally consistent sections.

Every bond of a derivation carries a finite, ordered set of candidate
meanings.  A bond whose support contains bonds (an *internal* bond) also
carries admissible tuples ``(child meanings, own meaning)``.  A section picks
one meaning per distinct bond such that every internal bond's tuple is
admissible.  A bond shared by several parents is one node with one meaning.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .core import DerivationTree
from .errors import MissingConstraint, MissingMeaning
from .units import UnitId, key_tier

Tuple = tuple[tuple[str, ...], str]


@dataclass(frozen=True)
class MeaningAssignment:
    """Λ for one tier: bond key -> candidate meanings in preference order."""

    tier: int
    table: Mapping[str, tuple[str, ...]]

    def __post_init__(self):
        for key, ms in self.table.items():
            if not ms:
                raise ValueError(f"empty meaning set for {key!r}")
            if len(set(ms)) != len(ms):
                raise ValueError(f"repeated meaning for {key!r}")


@dataclass(frozen=True)
class CompatibilityRelation:
    table: Mapping[UnitId, frozenset[Tuple]] = field(default_factory=dict)


@dataclass(frozen=True)
class MeaningSection:
    choice: tuple[tuple[UnitId, str], ...]

    def as_dict(self) -> dict[UnitId, str]:
        return dict(self.choice)

    def __getitem__(self, u: UnitId) -> str:
        return self.as_dict()[u]


@dataclass(frozen=True)
class Certificate:
    bond: UnitId
    reason: str


@dataclass(frozen=True)
class GlobalizerResult:
    section: MeaningSection | None
    certificate: Certificate | None = None

    def __bool__(self) -> bool:
        return self.section is not None


@dataclass(frozen=True)
class SectionList:
    sections: tuple[MeaningSection, ...]
    truncated: bool

    @property
    def count(self) -> int | None:
        """Exact number of sections, or None when truncated."""
        return None if self.truncated else len(self.sections)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


Meanings = Mapping[int, MeaningAssignment]


def meanings_by_tier(table: Mapping[str, Iterable[str]]) -> dict[int, MeaningAssignment]:
    """Group a flat ``{bond key: meanings}`` map by the tier read off each key."""
    grouped: dict[int, dict[str, tuple[str, ...]]] = {}
    for key, ms in table.items():
        grouped.setdefault(key_tier(key), {})[key] = tuple(ms)
    return {t: MeaningAssignment(t, grouped[t]) for t in sorted(grouped)}


def compatibility(entries: Mapping[UnitId, Iterable[tuple[Iterable[str], str]]]) -> CompatibilityRelation:
    return CompatibilityRelation({u: frozenset((tuple(cs), m) for cs, m in ts) for u, ts in entries.items()})


class _Problem:
    def __init__(self, tree: DerivationTree, meanings: Meanings, compat: CompatibilityRelation):
        self.order = [b.id for b in tree.bonds()]
        self.children = tree.child_bonds()
        self.domain: dict[UnitId, tuple[str, ...]] = {}
        for u in self.order:
            ma = meanings.get(u.tier)
            if ma is None or u.key not in ma.table:
                raise MissingMeaning(f"no meanings for bond {u.key!r}")
            self.domain[u] = tuple(ma.table[u.key])
        self.internal = [u for u in self.order if self.children[u]]
        self.tuples: dict[UnitId, frozenset[Tuple]] = {}
        for u in self.internal:
            if u not in compat.table:
                raise MissingConstraint(f"no compatibility tuples for bond {u.key!r}")
            self.tuples[u] = compat.table[u]

        # bottom-up feasible meanings
        self.feasible: dict[UnitId, set[str]] = {}
        self.certificate: Certificate | None = None
        for u in sorted(self.order, key=lambda v: (v.tier, self.order.index(v))):
            kids = self.children[u]
            if not kids:
                self.feasible[u] = set(self.domain[u])
                continue
            ok = set()
            for cs, m in self.tuples[u]:
                if m in self.domain[u] and self._fits(kids, cs, self.feasible):
                    ok.add(m)
            self.feasible[u] = ok
            if not ok and self.certificate is None:
                why = ("no admissible tuples" if not self.tuples[u]
                       else "every admissible tuple is ruled out by the children's feasible meanings")
                self.certificate = Certificate(u, why)

        # each constraint is checked once its last variable (in search order) is set
        pos = {u: i for i, u in enumerate(self.order)}
        self.checks_at: dict[int, list[UnitId]] = {}
        for u in self.internal:
            last = max(pos[v] for v in (u, *self.children[u]))
            self.checks_at.setdefault(last, []).append(u)

    @staticmethod
    def _fits(kids, cs, allowed) -> bool:
        if len(cs) != len(kids):
            return False
        chosen: dict[UnitId, str] = {}
        for k, c in zip(kids, cs):
            if c not in allowed[k] or chosen.setdefault(k, c) != c:
                return False
        return True

    def _admissible(self, u: UnitId, assign: dict[UnitId, str]) -> bool:
        return (tuple(assign[k] for k in self.children[u]), assign[u]) in self.tuples[u]

    def search(self, limit: int | None):
        found: list[MeaningSection] = []
        assign: dict[UnitId, str] = {}
        extra = [False]

        def rec(i: int) -> bool:
            if i == len(self.order):
                if limit is not None and len(found) >= limit:
                    extra[0] = True
                    return True
                found.append(MeaningSection(tuple((u, assign[u]) for u in self.order)))
                return False
            u = self.order[i]
            for m in self.domain[u]:
                if m not in self.feasible[u]:
                    continue
                assign[u] = m
                if all(self._admissible(v, assign) for v in self.checks_at.get(i, ())):
                    if rec(i + 1):
                        return True
                del assign[u]
            return False

        rec(0)
        return found, extra[0]


def find_globalizer(tree: DerivationTree, meanings: Meanings, compat: CompatibilityRelation) -> GlobalizerResult:
    """The lexicographically first section, or None with a certificate.

    Sections are ordered by the declared rank of each bond's meaning, bonds
    taken in pre-order of first occurrence.  The certificate names the
    lowest bond whose feasible meanings are empty, or the root when the
    failure only shows up jointly across shared sub-bonds.
    """
    p = _Problem(tree, meanings, compat)
    if p.certificate is None:
        found, _ = p.search(1)
        if found:
            return GlobalizerResult(found[0])
        return GlobalizerResult(None, Certificate(tree.root.id, "shared sub-bonds admit no joint choice"))
    return GlobalizerResult(None, p.certificate)


def enumerate_globalizers(tree: DerivationTree, meanings: Meanings, compat: CompatibilityRelation,
                          limit: int) -> SectionList:
    if limit < 1:
        raise ValueError("limit must be >= 1")
    p = _Problem(tree, meanings, compat)
    if p.certificate is not None:
        return SectionList((), False)
    found, truncated = p.search(limit)
    return SectionList(tuple(found), truncated)


def verify_section(tree: DerivationTree, meanings: Meanings, compat: CompatibilityRelation,
                   section: MeaningSection) -> Verdict:
    """Direct check of a proposed section, independent of the search."""
    chosen = section.as_dict()
    if len(chosen) != len(section.choice):
        return Verdict(False, "a bond is assigned twice")
    children = tree.child_bonds()
    wanted = set(children)
    if not wanted <= set(chosen):
        return Verdict(False, "partial")
    if set(chosen) - wanted:
        return Verdict(False, "assigns bonds outside the tree")
    for u, m in chosen.items():
        ma = meanings.get(u.tier)
        if ma is None or m not in ma.table.get(u.key, ()):
            return Verdict(False, f"{m!r} is not a meaning of {u.key!r}")
    for u, kids in children.items():
        if not kids:
            continue
        tup = (tuple(chosen[k] for k in kids), chosen[u])
        if tup not in compat.table.get(u, frozenset()):
            return Verdict(False, f"tuple {tup} is not admissible at {u.key!r}")
    return Verdict(True)
