"""Units, properties and bonds, plus the content-derived key scheme.

A bond over tier-``i`` units is identified by a key built from its rule tag,
its support keys and the property it was observed under, e.g.
``ab(a,b)@letters`` for an ordered support or ``bag{a,b}@letters`` for an
unordered one.  Keys nest, so the tier of a unit can be read back from its
key alone (see :func:`parse_key`).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple

NAME_RE = re.compile(r"^[^\s(){},@]+$")


def check_name(name: str, what: str = "name") -> str:
    if not isinstance(name, str) or not NAME_RE.match(name):
        raise ValueError(f"invalid {what} {name!r}: must be nonempty, without whitespace or any of (){{}},@")
    return name


@dataclass(frozen=True, order=True)
class UnitId:
    tier: int
    key: str

    def __str__(self) -> str:
        return f"{self.key}#{self.tier}"


@dataclass(frozen=True, order=True)
class PropertyId:
    name: str
    tier: int


@dataclass(frozen=True)
class Bond:
    """A binding of tier-``i`` units; its own identity lives at tier ``i + 1``.

    ``support`` keeps the gluing pattern: the sequence as written for ordered
    bonds, the sorted members for unordered ones.  Repeats are allowed in
    ordered supports.
    """

    id: UnitId
    support: tuple[UnitId, ...]
    ordered: bool
    property: PropertyId
    rule_tag: str
    emit: str | None = None

    def __post_init__(self):
        if not self.support:
            raise ValueError("bond support must be nonempty")
        if any(u.tier != self.id.tier - 1 for u in self.support):
            raise ValueError(f"support of {self.id.key!r} must lie exactly one tier below")

    @property
    def tier(self) -> int:
        """Tier of the supporting units."""
        return self.id.tier - 1

    @property
    def members(self) -> frozenset[UnitId]:
        return frozenset(self.support)

    @property
    def pattern(self) -> tuple[str, ...]:
        return tuple(u.key for u in self.support)


def bond_key(tag: str, keys: Iterable[str], ordered: bool, prop: str) -> str:
    open_, close = ("(", ")") if ordered else ("{", "}")
    return f"{tag}{open_}{','.join(keys)}{close}@{prop}"


def make_bond(tier: int, keys: Iterable[str], ordered: bool, prop: str, tag: str,
              emit: str | None = None) -> Bond:
    """Build a bond over tier-``tier`` units with a content-derived identity."""
    keys = tuple(keys) if ordered else tuple(sorted(set(keys)))
    return Bond(
        id=UnitId(tier + 1, bond_key(tag, keys, ordered, prop)),
        support=tuple(UnitId(tier, k) for k in keys),
        ordered=ordered,
        property=PropertyId(prop, tier),
        rule_tag=tag,
        emit=emit,
    )


class KeyParts(NamedTuple):
    tag: str
    ordered: bool
    children: tuple[str, ...]
    prop: str
    tier: int


def parse_key(key: str) -> KeyParts | None:
    """Split a bond key into its parts; ``None`` for an atom key.

    Raises ``ValueError`` on a malformed key.
    """
    if NAME_RE.match(key):
        return None
    m = re.match(r"^([^\s(){},@]+)([({])", key)
    if not m:
        raise ValueError(f"malformed unit key {key!r}")
    tag, open_ = m.group(1), m.group(2)
    close = ")" if open_ == "(" else "}"
    depth = 0
    children, start = [], m.end()
    end = None
    for pos in range(m.end() - 1, len(key)):
        ch = key[pos]
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
            if depth == 0:
                if ch != close:
                    raise ValueError(f"unbalanced brackets in {key!r}")
                children.append(key[start:pos])
                end = pos
                break
        elif ch == "," and depth == 1:
            children.append(key[start:pos])
            start = pos + 1
    if end is None or key[end + 1:end + 2] != "@" or not NAME_RE.match(key[end + 2:]):
        raise ValueError(f"malformed unit key {key!r}")
    tiers = set()
    for child in children:
        sub = parse_key(child)
        tiers.add(0 if sub is None else sub.tier)
    if len(tiers) != 1:
        raise ValueError(f"children of {key!r} span several tiers")
    return KeyParts(tag, open_ == "(", tuple(children), key[end + 2:], tiers.pop() + 1)


def key_tier(key: str) -> int:
    parts = parse_key(key)
    return 0 if parts is None else parts.tier


@dataclass(frozen=True)
class Matcher:
    """Conjunctive test on a unit: by key, by emitted property, by rule tag.

    An empty matcher accepts every unit.  ``emits`` and ``tags`` never match
    atoms, which carry neither.
    """

    keys: frozenset[str] | None = None
    emits: frozenset[str] | None = None
    tags: frozenset[str] | None = None

    def matches(self, key: str, bond: Bond | None) -> bool:
        if self.keys is not None and key not in self.keys:
            return False
        if self.emits is not None and (bond is None or bond.emit not in self.emits):
            return False
        if self.tags is not None and (bond is None or bond.rule_tag not in self.tags):
            return False
        return True


ANY = Matcher()
