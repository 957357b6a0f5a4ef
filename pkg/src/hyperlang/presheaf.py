"""Property assignments on finite subsets of a tier, with restriction maps.

A :class:`PropertySpec` is the declarative part (as written in a spec file);
a :class:`PropertyAssignment` binds it to the concrete units of one tier.
Two modes exist: ``"table"`` lists properties per subset, ``"rules"`` derives
them from size and member predicates and is evaluated only up to
``eval_bound`` members.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping

from .errors import (
    BoundExceeded,
    EmptySupport,
    MissingRestriction,
    NotASubset,
    TierMismatch,
    UnknownProperty,
    UnknownUnit,
)
from .units import ANY, Bond, Matcher, PropertyId, UnitId

DEFAULT_EVAL_BOUND = 6


@dataclass(frozen=True)
class PropertyRule:
    """Subsets whose size lies in ``[min_size, max_size]`` and whose members
    all satisfy ``members`` carry the property ``name``."""

    name: str
    members: Matcher = ANY
    min_size: int = 1
    max_size: int | None = None

    def admits_size(self, n: int) -> bool:
        return n >= self.min_size and (self.max_size is None or n <= self.max_size)


@dataclass(frozen=True)
class RestrictionRule:
    """Restrict ``source`` to ``target`` on subsets (of size ``size``, if given)."""

    source: str
    target: str
    size: int | None = None


@dataclass(frozen=True)
class RestrictionEntry:
    superset: frozenset[str]
    subset: frozenset[str]
    property: str
    image: str


@dataclass(frozen=True)
class PropertySpec:
    mode: str = "rules"
    rules: tuple[PropertyRule, ...] = ()
    table: Mapping[frozenset[str], frozenset[str]] = field(default_factory=dict)
    restriction_rules: tuple[RestrictionRule, ...] = ()
    restriction_entries: tuple[RestrictionEntry, ...] = ()
    presheaf: bool = True
    eval_bound: int = DEFAULT_EVAL_BOUND

    def __post_init__(self):
        if self.mode not in ("rules", "table"):
            raise ValueError(f"unknown property mode {self.mode!r}")
        if self.eval_bound < 1:
            raise ValueError("eval_bound must be >= 1")

    def names(self) -> frozenset[str]:
        if self.mode == "rules":
            return frozenset(r.name for r in self.rules)
        return frozenset().union(*self.table.values()) if self.table else frozenset()


@dataclass(frozen=True)
class Violation:
    kind: str  # "identity" | "missing" | "image" | "composition"
    chain: tuple[tuple[str, ...], ...]
    property: str
    detail: str = ""

    def __str__(self) -> str:
        sets = " ⊇ ".join("{" + ",".join(s) + "}" for s in self.chain)
        return f"{self.kind}: {sets} on {self.property}" + (f" ({self.detail})" if self.detail else "")


@dataclass(frozen=True)
class LawReport:
    tier: int
    size_bound: int
    violations: tuple[Violation, ...] = ()
    chains_checked: int = 0
    skipped: bool = False

    @property
    def ok(self) -> bool:
        return not self.violations


def _sorted(s: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(s))


def _proper_subsets(s: frozenset[str]):
    items = _sorted(s)
    for r in range(len(items) - 1, 0, -1):
        for combo in combinations(items, r):
            yield frozenset(combo)


class PropertyAssignment:
    """Ω for one tier: ``units`` maps each unit key to the bond it promotes
    (``None`` for atoms)."""

    def __init__(self, spec: PropertySpec, tier: int, units: Mapping[str, Bond | None]):
        self.spec = spec
        self.tier = tier
        self.units = dict(units)
        self.universe = frozenset(self.units)
        self._pools = [
            frozenset(k for k, b in self.units.items() if r.members.matches(k, b)) for r in spec.rules
        ]
        self._entries = {(e.superset, e.subset, e.property): e.image for e in spec.restriction_entries}

    def __repr__(self) -> str:
        return f"PropertyAssignment(tier={self.tier}, mode={self.spec.mode!r}, units={len(self.universe)})"

    @property
    def mode(self) -> str:
        return self.spec.mode

    # -- keys ------------------------------------------------------------
    def _keys(self, support: Iterable[UnitId]) -> frozenset[str]:
        keys = set()
        for u in support:
            if u.tier != self.tier:
                raise TierMismatch(f"unit {u} is not at tier {self.tier}")
            if u.key not in self.universe:
                raise UnknownUnit(f"unit {u} is not in tier {self.tier}")
            keys.add(u.key)
        if not keys:
            raise EmptySupport("observation of the empty collection")
        return frozenset(keys)

    def observe_keys(self, keys: frozenset[str]) -> frozenset[str]:
        if self.spec.mode == "table":
            return frozenset(self.spec.table.get(keys, frozenset()))
        if len(keys) > self.spec.eval_bound:
            raise BoundExceeded(f"{len(keys)} units exceed the evaluation bound {self.spec.eval_bound}")
        n = len(keys)
        out = set()
        for i, r in enumerate(self.spec.rules):
            if r.admits_size(n) and keys <= self._pools[i]:
                out.add(r.name)
        return frozenset(out)

    def observe(self, support: Iterable[UnitId]) -> frozenset[PropertyId]:
        return frozenset(PropertyId(n, self.tier) for n in self.observe_keys(self._keys(support)))

    def observable_over(self, keys: frozenset[str]) -> frozenset[str]:
        """Names ω such that some subset S ⊇ keys of this tier has ω ∈ Ω(S)."""
        out = set()
        if self.spec.mode == "table":
            for s, props in self.spec.table.items():
                if keys <= s and s <= self.universe:
                    out.update(props)
            return frozenset(out)
        n = len(keys)
        for i, r in enumerate(self.spec.rules):
            pool = self._pools[i]
            need = max(n, r.min_size)
            if (keys <= pool and (r.max_size is None or n <= r.max_size) and need <= len(pool)
                    and need <= self.spec.eval_bound and r.admits_size(need)):
                out.add(r.name)
        return frozenset(out)

    def witness(self, keys: frozenset[str], name: str) -> frozenset[str] | None:
        """A smallest S ⊇ keys with ``name`` ∈ Ω(S), or None."""
        if self.spec.mode == "table":
            found = [s for s, props in self.spec.table.items()
                     if keys <= s and s <= self.universe and name in props]
            return min(found, key=lambda s: (len(s), _sorted(s))) if found else None
        for i, r in enumerate(self.spec.rules):
            if r.name != name:
                continue
            pool = self._pools[i]
            need = max(len(keys), r.min_size)
            if not keys <= pool or not r.admits_size(need) or need > self.spec.eval_bound:
                continue
            extra = [k for k in sorted(pool) if k not in keys][: need - len(keys)]
            if len(keys) + len(extra) == need:
                return keys | frozenset(extra)
        return None

    # -- restriction ----------------------------------------------------
    def _restrict_raw(self, s: frozenset[str], sub: frozenset[str], name: str) -> str | None:
        hit = self._entries.get((s, sub, name))
        if hit is not None:
            return hit
        if s == sub:
            return name
        observed = None
        for rr in self.spec.restriction_rules:
            if rr.source != name or (rr.size is not None and rr.size != len(sub)):
                continue
            if observed is None:
                observed = self.observe_keys(sub)
            if rr.target in observed:
                return rr.target
        return None

    def restrict(self, support: Iterable[UnitId], sub: Iterable[UnitId], prop: PropertyId) -> PropertyId:
        s, t = self._keys(support), self._keys(sub)
        if not t <= s:
            raise NotASubset(f"{_sorted(t)} is not contained in {_sorted(s)}")
        if prop.tier != self.tier or prop.name not in self.observe_keys(s):
            raise UnknownProperty(f"{prop.name!r} is not observed on {_sorted(s)}")
        if not self.spec.presheaf:
            raise MissingRestriction(f"tier {self.tier} is a plain assignment without restriction maps")
        image = self._restrict_raw(s, t, prop.name)
        if image is None:
            raise MissingRestriction(f"no restriction of {prop.name!r} from {_sorted(s)} to {_sorted(t)}")
        if image not in self.observe_keys(t):
            raise MissingRestriction(f"restriction image {image!r} is not observed on {_sorted(t)}")
        return PropertyId(image, self.tier)

    # -- table form -------------------------------------------------------
    def subsets(self, size_bound: int):
        """Every nonempty subset of the universe with at most ``size_bound`` members."""
        items = _sorted(self.universe)
        for r in range(1, min(size_bound, len(items)) + 1):
            for combo in combinations(items, r):
                yield frozenset(combo)

    def materialize(self) -> PropertyAssignment:
        """Equivalent table-mode assignment over all subsets up to the evaluation bound."""
        if self.spec.mode == "table":
            return self
        table = {}
        for s in self.subsets(self.spec.eval_bound):
            props = self.observe_keys(s)
            if props:
                table[s] = props
        spec = PropertySpec(
            mode="table",
            table=table,
            restriction_rules=self.spec.restriction_rules,
            restriction_entries=self.spec.restriction_entries,
            presheaf=self.spec.presheaf,
            eval_bound=self.spec.eval_bound,
        )
        return PropertyAssignment(spec, self.tier, self.units)


def observe(omega: PropertyAssignment, support: Iterable[UnitId]) -> frozenset[PropertyId]:
    return omega.observe(support)


def restrict(omega: PropertyAssignment, support: Iterable[UnitId], sub: Iterable[UnitId],
             prop: PropertyId) -> PropertyId:
    return omega.restrict(support, sub, prop)


def check_presheaf_laws(omega: PropertyAssignment, size_bound: int) -> LawReport:
    """Exhaustively check identity, definedness, image and composition laws.

    Every chain S'' ⊆ S' ⊆ S with ``|S| <= size_bound`` is visited.  Chains
    with an identity step reduce to the identity law, so composition is only
    compared on strict chains.  Rule-mode assignments are capped at their
    evaluation bound.
    """
    if size_bound < 1:
        raise ValueError("size_bound must be >= 1")
    if not omega.spec.presheaf:
        return LawReport(omega.tier, size_bound, skipped=True)
    bound = size_bound if omega.mode == "table" else min(size_bound, omega.spec.eval_bound)
    if omega.mode == "table":
        tops = sorted((s for s in omega.spec.table if len(s) <= bound and s <= omega.universe),
                      key=lambda s: (len(s), _sorted(s)))
    else:
        tops = list(omega.subsets(bound))

    violations: list[Violation] = []
    seen_missing = set()
    chains = 0

    def step(s, t, name):
        image = omega._restrict_raw(s, t, name)
        if image is None:
            if (s, t, name) not in seen_missing:
                seen_missing.add((s, t, name))
                violations.append(Violation("missing", (_sorted(s), _sorted(t)), name))
            return None
        return image

    for s in tops:
        for name in sorted(omega.observe_keys(s)):
            chains += 1
            if omega._restrict_raw(s, s, name) != name:
                violations.append(Violation("identity", (_sorted(s),), name,
                                            f"maps to {omega._restrict_raw(s, s, name)!r}"))
            for mid in _proper_subsets(s):
                r1 = step(s, mid, name)
                if r1 is None:
                    continue
                if r1 not in omega.observe_keys(mid):
                    violations.append(Violation("image", (_sorted(s), _sorted(mid)), name,
                                                f"{r1!r} not observed on the subset"))
                    continue
                for low in _proper_subsets(mid):
                    chains += 1
                    r2 = step(mid, low, r1)
                    r3 = step(s, low, name)
                    if r2 is not None and r3 is not None and r2 != r3:
                        violations.append(Violation(
                            "composition", (_sorted(s), _sorted(mid), _sorted(low)), name,
                            f"stepwise {r2!r} != direct {r3!r}"))
    return LawReport(omega.tier, bound, tuple(violations), chains)
