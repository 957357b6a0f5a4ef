import pytest
from hypothesis import given, strategies as st

from hyperlang.units import (
    ANY, Bond, Matcher, PropertyId, UnitId, bond_key, check_name, key_tier, make_bond, parse_key,
)

names = st.text(alphabet="abcxyz01_-.", min_size=1, max_size=4)


def test_bond_key_shapes():
    assert bond_key("ab", ["a", "b"], True, "letters") == "ab(a,b)@letters"
    assert bond_key("bag", ["a", "b"], False, "d") == "bag{a,b}@d"


def test_unordered_support_sorted_and_deduplicated():
    b = make_bond(0, ["b", "a", "b"], False, "d", "bag")
    assert b.pattern == ("a", "b")
    assert b.id == UnitId(1, "bag{a,b}@d")


def test_ordered_support_keeps_repeats():
    b = make_bond(0, ["a", "a"], True, "letters", "pair")
    assert b.pattern == ("a", "a")
    assert b.members == {UnitId(0, "a")}


def test_bond_rejects_empty_or_misplaced_support():
    with pytest.raises(ValueError):
        Bond(UnitId(1, "x"), (), True, PropertyId("p", 0), "t")
    with pytest.raises(ValueError):
        Bond(UnitId(2, "x"), (UnitId(0, "a"),), True, PropertyId("p", 0), "t")


def test_parse_key_nested():
    inner = "ab(a,b)@letters"
    key = f"s({inner},{inner})@words"
    parts = parse_key(key)
    assert parts.tag == "s" and parts.ordered and parts.prop == "words"
    assert parts.children == (inner, inner)
    assert parts.tier == 2
    assert parse_key("a") is None
    assert key_tier(key) == 2


@pytest.mark.parametrize("bad", ["ab(a,b", "ab(a,b)", "ab(a,b}@p", "x(a,ab(a,b)@p)@q"])
def test_parse_key_malformed(bad):
    with pytest.raises(ValueError):
        parse_key(bad)


def test_check_name():
    assert check_name("noun") == "noun"
    for bad in ["", "a b", "a(b", "x@y", "a,b"]:
        with pytest.raises(ValueError):
            check_name(bad)


def test_matcher():
    b = make_bond(0, ["a"], True, "p", "t", emit="E")
    assert ANY.matches("a", None)
    assert Matcher(keys=frozenset(["a"])).matches("a", None)
    assert not Matcher(emits=frozenset(["E"])).matches("a", None)
    assert Matcher(emits=frozenset(["E"]), tags=frozenset(["t"])).matches(b.id.key, b)
    assert not Matcher(emits=frozenset(["E"]), tags=frozenset(["u"])).matches(b.id.key, b)


@given(st.lists(names, min_size=1, max_size=5), st.booleans(), names, names)
def test_key_round_trip(keys, ordered, prop, tag):
    b = make_bond(0, keys, ordered, prop, tag)
    parts = parse_key(b.id.key)
    assert parts.children == b.pattern
    assert (parts.tag, parts.ordered, parts.prop, parts.tier) == (tag, ordered, prop, 1)
    outer = make_bond(1, [b.id.key, b.id.key], True, "q", "o")
    assert parse_key(outer.id.key).children == (b.id.key, b.id.key)
    assert key_tier(outer.id.key) == 2
