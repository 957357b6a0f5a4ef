"""Bond rules, bond generation over situations, and bond composition.

Three rule kinds are supported:

* :class:`ConcatRule` -- an ordered pattern of matchers with bounded repetition;
* :class:`SetBindRule` -- an unordered support selected by a member matcher;
* :class:`TableRule` -- an explicit list of supports.

A bond is always emitted together with the property ω of a situation
(S, ω) whose support S contains the bond's members.  Bonds with equal
content (tag, support, property) are the same bond, whichever rule or
situation produced them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import TYPE_CHECKING, Callable, Iterable, Iterator, Mapping, Sequence, Union

from .errors import IncompatibleGlue, LengthBoundExceeded, MixedTiers, NoRulesForTier
from .presheaf import PropertyAssignment
from .units import ANY, Bond, Matcher, PropertyId, UnitId, make_bond

if TYPE_CHECKING:
    from .core import Hyperstructure

DEFAULT_LENGTH_BOUND = 16


@dataclass(frozen=True)
class Repeat:
    """One pattern element: ``min``..``max`` consecutive units matching ``matcher``.

    ``max=None`` repeats up to the length bound in force.
    """

    matcher: Matcher = ANY
    min: int = 1
    max: int | None = 1


@dataclass(frozen=True)
class ConcatRule:
    tier: int
    tag: str
    pattern: tuple[Repeat, ...]
    emit: str | None = None
    guard: frozenset[str] | None = None
    # at least one unit of the sequence must satisfy this matcher
    require: Matcher | None = None


@dataclass(frozen=True)
class SetBindRule:
    tier: int
    tag: str
    members: Matcher = ANY
    min_size: int = 1
    max_size: int | None = None
    emit: str | None = None
    guard: frozenset[str] | None = None


@dataclass(frozen=True)
class TableEntry:
    support: tuple[str, ...]
    ordered: bool
    property: str


@dataclass(frozen=True)
class TableRule:
    tier: int
    tag: str
    entries: tuple[TableEntry, ...]
    emit: str | None = None


BondRule = Union[ConcatRule, SetBindRule, TableRule]


@dataclass(frozen=True)
class Situation:
    support: frozenset[UnitId]
    property: PropertyId

    @property
    def tier(self) -> int:
        return self.property.tier


def situation(omega: PropertyAssignment, support: Iterable[UnitId], prop: PropertyId | str) -> Situation:
    """Validated situation: ``prop`` must be observed on ``support``."""
    support = frozenset(support)
    if isinstance(prop, str):
        prop = PropertyId(prop, omega.tier)
    if prop not in omega.observe(support):
        raise ValueError(f"{prop.name!r} is not observed on {sorted(u.key for u in support)}")
    return Situation(support, prop)


def bond_order(b: Bond):
    return (b.pattern, b.rule_tag, b.property.name)


# -- candidate supports -------------------------------------------------

class _Pool:
    """Units available to a rule, with per-unit yields for substring pruning."""

    def __init__(self, keys: Iterable[str], lookup: Mapping[str, Bond | None],
                 yields: Mapping[str, tuple[str, ...]] | None = None,
                 within: Sequence[str] | None = None):
        self.keys = sorted(keys)
        self.lookup = lookup
        self.yields = yields
        self.factors = None
        if within is not None:
            w = tuple(within)
            self.factors = {w[i:j] for i in range(len(w)) for j in range(i + 1, len(w) + 1)}

    def matching(self, m: Matcher) -> list[str]:
        return [k for k in self.keys if m.matches(k, self.lookup.get(k))]

    def fits(self, seq: Sequence[str]) -> bool:
        if self.factors is None:
            return True
        out: tuple[str, ...] = ()
        for k in seq:
            out += self.yields[k]
        return out in self.factors


def _concat_sequences(rule: ConcatRule, pool: _Pool, length_bound: int) -> set[tuple[str, ...]]:
    cands = [pool.matching(el.matcher) for el in rule.pattern]
    found: set[tuple[str, ...]] = set()
    pattern = rule.pattern
    mins_after = [sum(el.min for el in pattern[i:]) for i in range(len(pattern) + 1)]

    def extend(seq: tuple[str, ...], yld: tuple[str, ...], i: int, used: int):
        # used: units already placed for element i
        if len(seq) + mins_after[i + 1] + max(pattern[i].min - used, 0) > length_bound:
            return
        el = pattern[i]
        hi = length_bound if el.max is None else el.max
        if used >= el.min:
            if i + 1 == len(pattern):
                if seq:
                    found.add(seq)
            else:
                extend(seq, yld, i + 1, 0)
        if used < hi and len(seq) < length_bound:
            for k in cands[i]:
                nyld = yld
                if pool.factors is not None:
                    nyld = yld + pool.yields[k]
                    if nyld not in pool.factors:
                        continue
                extend(seq + (k,), nyld, i, used + 1)

    if pattern:
        extend((), (), 0, 0)
    if rule.require is not None:
        need = rule.require
        found = {s for s in found if any(need.matches(k, pool.lookup.get(k)) for k in s)}
    return found


def _setbind_sets(rule: SetBindRule, pool: _Pool, length_bound: int) -> set[tuple[str, ...]]:
    cands = pool.matching(rule.members)
    hi = min(len(cands), length_bound if rule.max_size is None else min(rule.max_size, length_bound))
    out = set()
    for r in range(max(rule.min_size, 1), hi + 1):
        for combo in combinations(cands, r):
            if pool.fits(combo):
                out.add(combo)
    return out


def _realize(rules: Sequence[BondRule], tier: int, pool: _Pool, length_bound: int,
             props_for: Callable[[frozenset[str], frozenset[str] | None], Iterable[str]],
             table_ok: Callable[[TableEntry], bool]) -> tuple[Bond, ...]:
    made: dict[str, Bond] = {}
    for rule in rules:
        if rule.tier != tier:
            continue
        if isinstance(rule, TableRule):
            for e in rule.entries:
                if len(e.support) <= length_bound and table_ok(e) and all(k in pool.lookup for k in e.support):
                    if pool.fits(e.support if e.ordered else sorted(set(e.support))):
                        b = make_bond(tier, e.support, e.ordered, e.property, rule.tag, rule.emit)
                        made.setdefault(b.id.key, b)
            continue
        if isinstance(rule, ConcatRule):
            supports, ordered = _concat_sequences(rule, pool, length_bound), True
        else:
            supports, ordered = _setbind_sets(rule, pool, length_bound), False
        for seq in supports:
            for name in sorted(props_for(frozenset(seq), rule.guard)):
                b = make_bond(tier, seq, ordered, name, rule.tag, rule.emit)
                made.setdefault(b.id.key, b)
    return tuple(sorted(made.values(), key=bond_order))


def bonds(rules: Sequence[BondRule], sit: Situation, length_bound: int = DEFAULT_LENGTH_BOUND,
          lookup: Mapping[str, Bond | None] | None = None) -> tuple[Bond, ...]:
    """All bonds of ``rules`` over members of ``sit.support`` admitted under ``sit.property``.

    ``lookup`` supplies the bonds that tier-``i`` units promote, needed by
    matchers on emitted properties or tags; atoms map to ``None``.
    """
    tier = sit.property.tier
    if not any(r.tier == tier for r in rules):
        raise NoRulesForTier(f"no bond rules for tier {tier}")
    keys = {u.key for u in sit.support}
    lookup = dict(lookup or {})
    for k in keys:
        lookup.setdefault(k, None)
    name = sit.property.name

    def props_for(seq, guard):
        return (name,) if guard is None or name in guard else ()

    def table_ok(e):
        return e.property == name and set(e.support) <= keys

    return _realize(rules, tier, _Pool(keys, lookup), length_bound, props_for, table_ok)


def generate(rules: Sequence[BondRule], omega: PropertyAssignment, length_bound: int = DEFAULT_LENGTH_BOUND,
             yields: Mapping[str, tuple[str, ...]] | None = None,
             within: Sequence[str] | None = None) -> tuple[Bond, ...]:
    """Union of :func:`bonds` over every situation (S, ω) of ``omega``'s tier.

    Supports are enumerated from the patterns; a property ω is attached when
    some S containing the support observes it.  With ``within``, only bonds
    whose leaf sequence is a contiguous factor of ``within`` are produced.
    """
    tier = omega.tier

    def props_for(seq, guard):
        names = omega.observable_over(seq)
        return names if guard is None else names & guard

    def table_ok(e):
        return e.property in omega.observable_over(frozenset(e.support))

    pool = _Pool(omega.universe, omega.units, yields, within)
    return _realize(rules, tier, pool, length_bound, props_for, table_ok)


def enumerate_bonds(h: Hyperstructure, tier: int, length_bound: int) -> Iterator[Bond]:
    """Stream the bonds of ``tier`` whose pattern has at most ``length_bound`` units."""
    if length_bound < 1:
        raise ValueError("length_bound must be >= 1")
    rec = h.tier(tier)
    if rec.omega is None:
        return iter(())
    return iter(generate(rec.rules, rec.omega, length_bound))


# -- composition --------------------------------------------------------

CONCAT_JOIN = "concat-join"
SET_UNION = "set-union"


@dataclass(frozen=True)
class GlueSpec:
    """How :func:`compose` glues bonds.

    ``resolution`` maps the tuple of input property names (sorted, for
    set-union) to the composite's property; ``None`` as a value vetoes the
    composite.  When no entry applies and ``uniform`` is true, inputs that all
    share one property keep it.  ``uniform`` defaults to true for
    concat-join and false for set-union.
    """

    mode: str = CONCAT_JOIN
    resolution: Mapping[tuple[str, ...], str | None] = field(default_factory=dict)
    uniform: bool | None = None
    tag: str = "glue"
    emit: str | None = None
    length_bound: int = DEFAULT_LENGTH_BOUND

    def __post_init__(self):
        if self.mode not in (CONCAT_JOIN, SET_UNION):
            raise ValueError(f"unknown glue mode {self.mode!r}")

    def resolve(self, props: Sequence[str]) -> str:
        combo = tuple(props) if self.mode == CONCAT_JOIN else tuple(sorted(props))
        if combo in self.resolution:
            out = self.resolution[combo]
            if out is None:
                raise IncompatibleGlue(f"composite of {combo} is vetoed")
            return out
        uniform = self.uniform if self.uniform is not None else self.mode == CONCAT_JOIN
        if uniform and len(set(combo)) == 1:
            return combo[0]
        raise IncompatibleGlue(f"no property resolution for {combo}")


def compose(bs: Sequence[Bond], glue: GlueSpec = GlueSpec()) -> Bond:
    """b₁ □ b₂ □ … □ b_k at the tier of the inputs."""
    bs = list(bs)
    if not bs:
        raise ValueError("compose needs at least one bond")
    tiers = {b.id.tier for b in bs}
    if len(tiers) > 1:
        raise MixedTiers(f"bonds span tiers {sorted(tiers)}")
    if len(bs) == 1:
        return bs[0]
    tier = bs[0].tier
    prop = glue.resolve([b.property.name for b in bs])
    if glue.mode == CONCAT_JOIN:
        if not all(b.ordered for b in bs):
            raise IncompatibleGlue("concat-join needs sequence-patterned bonds")
        keys = [k for b in bs for k in b.pattern]
        if len(keys) > glue.length_bound:
            raise LengthBoundExceeded(f"composite length {len(keys)} exceeds {glue.length_bound}")
        return make_bond(tier, keys, True, prop, glue.tag, glue.emit)
    keys = sorted(set().union(*(b.pattern for b in bs)))
    if len(keys) > glue.length_bound:
        raise LengthBoundExceeded(f"composite support {len(keys)} exceeds {glue.length_bound}")
    return make_bond(tier, keys, False, prop, glue.tag, glue.emit)
