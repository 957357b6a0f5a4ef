"""In-memory form of a hyperstructure spec document."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cfg import Cfg
from .core import Hyperstructure, TierSpec, build
from .globalizer import CompatibilityRelation, MeaningAssignment

SPEC_VERSION = 1
DEFAULT_GRAMMAR_HEIGHT = 8


@dataclass(frozen=True)
class StartSpec:
    """Which top bonds count as a parse: those emitting ``emits`` (and, when
    ``tags`` is given, produced by one of those rules)."""

    emits: str
    tags: frozenset[str] | None = None


@dataclass(frozen=True)
class SpecDocument:
    atoms: tuple[str, ...]
    tiers: tuple[TierSpec, ...] = ()
    version: int = SPEC_VERSION
    start: StartSpec | None = None
    grammar: Cfg | None = None
    grammar_height: int = DEFAULT_GRAMMAR_HEIGHT
    meanings: tuple[MeaningAssignment, ...] = ()
    compatibility: CompatibilityRelation | None = None
    name: str | None = None

    def build(self, within: Sequence[str] | None = None, upto: int | None = None) -> Hyperstructure:
        return build(self.atoms, self.tiers, within=within, upto=upto)

    def meaning_map(self) -> dict[int, MeaningAssignment]:
        return {m.tier: m for m in self.meanings}
