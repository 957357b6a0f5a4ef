import random

import pytest
from hypothesis import given, settings, strategies as st

from hyperlang.errors import MissingConstraint, MissingMeaning
from hyperlang.globalizer import (
    CompatibilityRelation, MeaningSection, compatibility, enumerate_globalizers, find_globalizer,
    meanings_by_tier, verify_section,
)
from hyperlang.units import UnitId

from helpers import brute_force, random_instance

AB = UnitId(1, "ab(a,b)@letters")
BA = UnitId(1, "ba(b,a)@letters")
SENT = UnitId(2, "sentence(ab(a,b)@letters,ba(b,a)@letters)@words")


@pytest.fixture
def demo(fixture):
    doc = fixture("sentences")
    tree = next(t for t in _trees(doc) if t.root.id == SENT)
    return tree, doc.meaning_map(), doc.compatibility


def _trees(doc):
    from hyperlang.grammar import parse_text
    return parse_text(doc, "abba").derivations


def test_demo_section(demo):
    tree, lam, compat = demo
    res = find_globalizer(tree, lam, compat)
    assert res.section.as_dict() == {SENT: "M", AB: "m2", BA: "m3"}
    assert verify_section(tree, lam, compat, res.section)


def test_empty_constraint_gives_certificate(demo):
    tree, lam, _ = demo
    res = find_globalizer(tree, lam, compatibility({SENT: []}))
    assert not res and res.certificate.bond == SENT


def test_two_sections_and_truncation(demo):
    tree, lam, _ = demo
    c = compatibility({SENT: [(("m1", "m3"), "M"), (("m2", "m3"), "M")]})
    full = enumerate_globalizers(tree, lam, c, 10)
    assert full.count == 2 and not full.truncated
    assert [s[AB] for s in full.sections] == ["m1", "m2"]
    first = enumerate_globalizers(tree, lam, c, 1)
    assert first.truncated and first.count is None and len(first.sections) == 1
    assert first.sections[0] == find_globalizer(tree, lam, c).section
    with pytest.raises(ValueError):
        enumerate_globalizers(tree, lam, c, 0)


def test_none_instance_enumerates_nothing(demo):
    tree, lam, _ = demo
    got = enumerate_globalizers(tree, lam, compatibility({SENT: []}), 5)
    assert got.sections == () and got.count == 0


def test_verify_rejections(demo):
    tree, lam, compat = demo
    bad = MeaningSection(((SENT, "M"), (AB, "m1"), (BA, "m3")))
    v = verify_section(tree, lam, compat, bad)
    assert not v and "not admissible" in v.reason
    partial = verify_section(tree, lam, compat, MeaningSection(((SENT, "M"), (AB, "m2"))))
    assert not partial and partial.reason == "partial"
    foreign = verify_section(tree, lam, compat, MeaningSection(((SENT, "M"), (AB, "zz"), (BA, "m3"))))
    assert not foreign


def test_missing_inputs(demo):
    tree, lam, compat = demo
    with pytest.raises(MissingMeaning):
        find_globalizer(tree, {1: lam[1]}, compat)
    with pytest.raises(MissingConstraint):
        find_globalizer(tree, lam, CompatibilityRelation())


def test_local_without_global(fixture):
    for name, solvable in [("local-global", False), ("local-global-fixed", True)]:
        doc = fixture(name)
        (tree,) = _trees(doc)
        lam = doc.meaning_map()
        assert all(lam[b.id.tier].table[b.id.key] for b in tree.bonds())
        res = find_globalizer(tree, lam, doc.compatibility)
        assert bool(res) is solvable
        if not solvable:
            assert res.certificate.bond == tree.root.id and res.certificate.bond.tier == 3
        assert bool(brute_force(tree, lam, doc.compatibility)) is solvable


def test_multiplicity_needs_every_tier(fixture):
    doc = fixture("multiplicity")
    (tree,) = _trees(doc)
    lam = doc.meaning_map()
    assert tree.depth >= 3
    assert find_globalizer(tree, lam, doc.compatibility)
    flat = {k: v for t in lam.values() for k, v in t.table.items()}
    middle = [b for b in tree.bonds() if 1 < b.id.tier < tree.depth]
    for b in middle:
        collapsed = dict(flat)
        collapsed[b.id.key] = flat[b.id.key][:1]
        assert not find_globalizer(tree, meanings_by_tier(collapsed), doc.compatibility)


def test_random_instances_small():
    rng = random.Random(7)
    for _ in range(100):
        tree, lam, compat = random_instance(rng)
        every = brute_force(tree, lam, compat)
        res = find_globalizer(tree, lam, compat)
        assert bool(res) == bool(every)
        if every:
            assert res.section.choice == every[0]
            assert verify_section(tree, lam, compat, res.section)
            listed = enumerate_globalizers(tree, lam, compat, 1000)
            assert [s.choice for s in listed.sections] == every
        else:
            assert res.certificate is not None


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.data())
def test_monotonicity(seed, data):
    tree, lam, compat = random_instance(random.Random(seed))
    if not compat.table or not find_globalizer(tree, lam, compat):
        return
    u = data.draw(st.sampled_from(sorted(compat.table, key=lambda x: x.key)))
    kids = tree.child_bonds()[u]
    extra = (tuple(data.draw(st.sampled_from(lam[k.tier].table[k.key])) for k in kids),
             data.draw(st.sampled_from(lam[u.tier].table[u.key])))
    grown = CompatibilityRelation({**compat.table, u: compat.table[u] | {extra}})
    assert find_globalizer(tree, lam, grown)
