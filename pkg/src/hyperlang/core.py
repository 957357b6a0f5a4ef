"""Tiered hyperstructures: generation, promotion of bonds to units, boundaries.

Tier 0 holds the atoms.  Generating tier ``i`` realizes its bonds from the
tier's property assignment and bond rules; lifting tier ``i`` turns those
bonds into the units of tier ``i + 1``.  Every step returns a new
:class:`Hyperstructure`; existing ones are never mutated.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, Mapping, Sequence

from .bonds import DEFAULT_LENGTH_BOUND, BondRule
from .bonds import generate as generate_bonds
from .errors import EmptyTier, LiftBeforeGeneration, TierZero, UnknownUnit
from .presheaf import PropertyAssignment, PropertySpec
from .units import Bond, UnitId, check_name


@dataclass(frozen=True)
class TierSpec:
    """Declared Ω_i and B_i for one tier."""

    properties: PropertySpec
    rules: tuple[BondRule, ...] = ()
    length_bound: int = DEFAULT_LENGTH_BOUND


@dataclass(frozen=True)
class TierRecord:
    index: int
    units: Mapping[str, Bond | None]
    yields: Mapping[str, tuple[str, ...]]
    omega: PropertyAssignment | None = None
    rules: tuple[BondRule, ...] = ()
    length_bound: int = DEFAULT_LENGTH_BOUND
    bonds: tuple[Bond, ...] | None = None
    _by_key: Mapping[str, Bond] = field(default_factory=dict, repr=False, compare=False)

    @property
    def generated(self) -> bool:
        return self.bonds is not None

    def unit_ids(self) -> frozenset[UnitId]:
        return frozenset(UnitId(self.index, k) for k in self.units)


@dataclass(frozen=True)
class Hyperstructure:
    atoms: frozenset[UnitId]
    layers: tuple[TierSpec, ...]
    tiers: tuple[TierRecord, ...]

    @property
    def height(self) -> int:
        return len(self.tiers)

    def tier(self, i: int) -> TierRecord:
        if not 0 <= i < len(self.tiers):
            raise IndexError(f"tier {i} has not been built (height {self.height})")
        return self.tiers[i]

    def units(self, i: int) -> frozenset[UnitId]:
        return self.tier(i).unit_ids()

    def bond(self, u: UnitId) -> Bond:
        """The realized bond whose identity is ``u``."""
        if u.tier == 0:
            raise TierZero(f"{u.key!r} is an atom and binds nothing")
        if u.tier > len(self.tiers):
            raise UnknownUnit(f"no tier below {u}")
        rec = self.tiers[u.tier - 1]
        b = rec._by_key.get(u.key)
        if b is None:
            raise UnknownUnit(f"{u} is not a realized bond")
        return b

    def all_bonds(self) -> Iterator[Bond]:
        for rec in self.tiers:
            yield from rec.bonds or ()

    def leaves(self, u: UnitId) -> tuple[str, ...]:
        """Atom keys reached from ``u`` by iterated boundary, in pattern order."""
        return self.tier(u.tier).yields[u.key]


def _record(index: int, units: Mapping[str, Bond | None], yields, layers: Sequence[TierSpec]) -> TierRecord:
    if index < len(layers):
        spec = layers[index]
        return TierRecord(index, units, yields, PropertyAssignment(spec.properties, index, units),
                          spec.rules, spec.length_bound)
    return TierRecord(index, units, yields)


def hyperstructure(atoms: Iterable[str], layers: Sequence[TierSpec] = ()) -> Hyperstructure:
    """A hyperstructure with only tier 0 built."""
    keys = sorted({check_name(a, "atom") for a in atoms})
    units = {k: None for k in keys}
    yields = {k: (k,) for k in keys}
    layers = tuple(layers)
    return Hyperstructure(frozenset(UnitId(0, k) for k in keys), layers, (_record(0, units, yields, layers),))


def generate(h: Hyperstructure, i: int, within: Sequence[str] | None = None) -> Hyperstructure:
    """Realize the bonds of tier ``i``; tiers above it are dropped."""
    rec = h.tier(i)
    if rec.omega is None:
        made: tuple[Bond, ...] = ()
    else:
        made = generate_bonds(rec.rules, rec.omega, rec.length_bound, rec.yields, within)
    if rec.bonds == made:
        return h
    new = replace(rec, bonds=made, _by_key={b.id.key: b for b in made})
    return replace(h, tiers=h.tiers[:i] + (new,))


def lift(h: Hyperstructure, i: int) -> Hyperstructure:
    """Promote the bonds of tier ``i`` to the units of tier ``i + 1``."""
    rec = h.tier(i)
    if rec.bonds is None:
        raise LiftBeforeGeneration(f"tier {i} has no generated bond set")
    if not rec.bonds:
        raise EmptyTier(f"tier {i} produced no bonds")
    if len(h.tiers) > i + 1 and set(h.tiers[i + 1].units) == set(rec._by_key):
        return h
    units = {b.id.key: b for b in rec.bonds}
    yields = {b.id.key: sum((rec.yields[k] for k in b.pattern), ()) for b in rec.bonds}
    return replace(h, tiers=h.tiers[: i + 1] + (_record(i + 1, units, yields, h.layers),))


def build(atoms: Iterable[str], layers: Sequence[TierSpec], within: Sequence[str] | None = None,
          upto: int | None = None) -> Hyperstructure:
    """Generate and lift every declared tier (or the first ``upto``).

    Stops early, without error, at the first tier that yields no bonds.
    """
    h = hyperstructure(atoms, layers)
    n = len(layers) if upto is None else min(upto, len(layers))
    for i in range(n):
        h = generate(h, i, within)
        if not h.tier(i).bonds:
            break
        h = lift(h, i)
    return h


def boundary(h: Hyperstructure, u: UnitId) -> frozenset[UnitId]:
    """∂: the set of units a bond binds (order and multiplicity forgotten)."""
    return h.bond(u).members


@dataclass(frozen=True)
class DerivationTree:
    root: Bond
    children: tuple[UnitId | DerivationTree, ...]

    @property
    def depth(self) -> int:
        return self.root.id.tier

    def leaves(self) -> tuple[UnitId, ...]:
        out: list[UnitId] = []
        for c in self.children:
            if isinstance(c, DerivationTree):
                out.extend(c.leaves())
            else:
                out.append(c)
        return tuple(out)

    def leaf_keys(self) -> tuple[str, ...]:
        return tuple(u.key for u in self.leaves())

    def subtrees(self) -> Iterator[DerivationTree]:
        """Pre-order walk over bond nodes (shared sub-bonds repeat)."""
        yield self
        for c in self.children:
            if isinstance(c, DerivationTree):
                yield from c.subtrees()

    def bonds(self) -> tuple[Bond, ...]:
        """Distinct bonds in pre-order of first occurrence."""
        seen: dict[UnitId, Bond] = {}
        for t in self.subtrees():
            seen.setdefault(t.root.id, t.root)
        return tuple(seen.values())

    def child_bonds(self) -> dict[UnitId, tuple[UnitId, ...]]:
        """For every bond node, the identities of its bond children by position."""
        out: dict[UnitId, tuple[UnitId, ...]] = {}
        for t in self.subtrees():
            out.setdefault(t.root.id, tuple(c.root.id for c in t.children if isinstance(c, DerivationTree)))
        return out

    def levels(self) -> list[frozenset[UnitId]]:
        """Unit sets per tier from the root down to the atoms."""
        out = [frozenset([self.root.id])]
        layer: list[UnitId | DerivationTree] = [self]
        while layer:
            nxt = [c for t in layer if isinstance(t, DerivationTree) for c in t.children]
            if not nxt:
                break
            out.append(frozenset(c.root.id if isinstance(c, DerivationTree) else c for c in nxt))
            layer = nxt
        return out


def derivation_tree(h: Hyperstructure, top: UnitId) -> DerivationTree:
    """Expand ``top`` by repeated boundary down to the atoms."""
    memo: dict[UnitId, DerivationTree] = {}

    def expand(u: UnitId) -> DerivationTree:
        if u not in memo:
            b = h.bond(u)
            memo[u] = DerivationTree(b, tuple(c if c.tier == 0 else expand(c) for c in b.support))
        return memo[u]

    return expand(top)
