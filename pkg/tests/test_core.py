from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from hyperlang.bonds import ConcatRule, Repeat
from hyperlang.core import (
    TierSpec, boundary, build, derivation_tree, generate, hyperstructure, lift,
)
from hyperlang.errors import EmptyTier, LiftBeforeGeneration, TierZero, UnknownUnit
from hyperlang.presheaf import PropertyRule, PropertySpec, RestrictionRule
from hyperlang.spec_io import dump_spec, load_spec
from hyperlang.units import Matcher, UnitId

LETTERS = PropertySpec(
    mode="rules",
    rules=(PropertyRule("letter", max_size=1), PropertyRule("letters", min_size=2)),
    restriction_rules=(RestrictionRule("letters", "letter", 1), RestrictionRule("letters", "letters")),
)


def only(*keys):
    return Matcher(keys=frozenset(keys))


def pair_tier(guard=("letters",)):
    return TierSpec(LETTERS, (ConcatRule(0, "pair", (Repeat(min=2, max=2),), guard=frozenset(guard)),))


def test_lift_single_bond():
    layer = TierSpec(LETTERS, (ConcatRule(0, "ab", (Repeat(only("a")), Repeat(only("b"))), guard=None),))
    h = lift(generate(hyperstructure("ab", [layer]), 0), 0)
    (b,) = h.tier(0).bonds
    assert h.units(1) == {b.id}


def test_lift_refuses_empty_tier():
    h = generate(hyperstructure("ab", [pair_tier(guard=("nothing",))]), 0)
    assert h.tier(0).bonds == ()
    with pytest.raises(EmptyTier):
        lift(h, 0)


def test_lift_before_generation():
    with pytest.raises(LiftBeforeGeneration):
        lift(hyperstructure("ab", [pair_tier()]), 0)


def test_lift_is_idempotent():
    h = lift(generate(hyperstructure("ab", [pair_tier()]), 0), 0)
    assert lift(h, 0) is h
    assert generate(h, 0) is h


def test_ab_words_tier_one(fixture):
    h = fixture("ab-words").build()
    # oracle: every ordered pair over {a, b}
    expected = {f"pair({x},{y})@letters" for x, y in product("ab", repeat=2)}
    assert {u.key for u in h.units(1)} == expected
    assert len(h.units(1)) == 4


def test_boundary_examples(fixture):
    h = fixture("ab-words").build()
    a, b = UnitId(0, "a"), UnitId(0, "b")
    assert boundary(h, UnitId(1, "pair(a,b)@letters")) == {a, b}
    assert boundary(h, UnitId(1, "pair(a,a)@letters")) == {a}
    assert h.bond(UnitId(1, "pair(a,a)@letters")).pattern == ("a", "a")
    with pytest.raises(TierZero):
        boundary(h, a)
    with pytest.raises(UnknownUnit):
        boundary(h, UnitId(1, "pair(b,b,b)@letters"))
    with pytest.raises(UnknownUnit):
        boundary(h, UnitId(5, "x(y)@z"))


def test_sentence_tree(fixture):
    h = fixture("sentences").build()
    top = UnitId(2, "sentence(ab(a,b)@letters,ba(b,a)@letters)@words")
    t = derivation_tree(h, top)
    assert t.depth == 2
    assert t.leaf_keys() == ("a", "b", "b", "a")
    assert [c.root.id.key for c in t.children] == ["ab(a,b)@letters", "ba(b,a)@letters"]


def test_depth_one_tree(fixture):
    h = fixture("ab-words").build()
    t = derivation_tree(h, UnitId(1, "pair(a,b)@letters"))
    assert t.depth == 1 and t.leaf_keys() == ("a", "b")


def test_levels_match_iterated_boundary(fixture):
    for name in ["sentences", "multiplicity", "ab-words"]:
        h = fixture(name).build()
        for b in h.all_bonds():
            t = derivation_tree(h, b.id)
            frontier = {b.id}
            for level in t.levels():
                assert level == frontier
                frontier = set().union(*(boundary(h, u) for u in frontier if u.tier > 0)) if frontier else set()
            assert t.depth == b.id.tier
            assert t.leaf_keys() == h.leaves(b.id)


def test_build_stops_at_empty_tier():
    h = build("ab", [pair_tier(guard=("nothing",)), pair_tier()])
    assert h.height == 1


def test_generate_drops_higher_tiers(fixture):
    h = fixture("sentences").build()
    assert h.height == 3
    assert generate(h, 0) is h


def test_build_order_invariance(fixture):
    doc = fixture("multiplicity")
    full = doc.build()
    # partial build, then re-generate every lower tier before each further lift
    h = doc.build(upto=1)
    for i in range(1, len(doc.tiers)):
        for j in range(i):
            h = generate(h, j)
        h = lift(generate(h, i), i)
    assert [h.units(i) for i in range(h.height)] == [full.units(i) for i in range(full.height)]


def test_round_trip_stability(fixture):
    for name in ["sentences", "multiplicity", "ab-star", "mixed-rules"]:
        doc = fixture(name)
        again = load_spec(dump_spec(doc))
        h1, h2 = doc.build(), again.build()
        assert [b.id for b in h1.all_bonds()] == [b.id for b in h2.all_bonds()]
        for b in h1.all_bonds():
            assert sorted(derivation_tree(h1, b.id).leaf_keys()) == sorted(derivation_tree(h2, b.id).leaf_keys())


@settings(max_examples=30, deadline=None)
@given(st.lists(st.sampled_from("abc"), min_size=1, max_size=3, unique=True), st.integers(1, 3))
def test_boundary_is_support_set(atoms, n):
    spec = TierSpec(PropertySpec(mode="rules", rules=(PropertyRule("any"),)),
                    (ConcatRule(0, "seq", (Repeat(min=1, max=None),)),), length_bound=n)
    h = build(atoms, [spec])
    made = list(h.tier(0).bonds)
    assert len(made) == sum(len(atoms) ** k for k in range(1, n + 1))
    for b in made:
        assert boundary(h, b.id) == set(b.support)
