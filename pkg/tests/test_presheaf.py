from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from hyperlang.errors import (
    BoundExceeded, EmptySupport, MissingRestriction, NotASubset, TierMismatch, UnknownProperty,
)
from hyperlang.presheaf import (
    PropertyAssignment, PropertyRule, PropertySpec, RestrictionRule, check_presheaf_laws, observe, restrict,
)
from hyperlang.units import Matcher, PropertyId, UnitId


def atoms(*keys, tier=0):
    return {UnitId(tier, k) for k in keys}


def P(name, tier=0):
    return PropertyId(name, tier)


@pytest.fixture
def omega0(fixture):
    return fixture("ab-words").build().tier(0).omega


def test_observe_examples(omega0):
    assert observe(omega0, atoms("a")) == {P("letter")}
    assert observe(omega0, atoms("a", "b")) == {P("letters")}
    with pytest.raises(EmptySupport):
        observe(omega0, set())
    with pytest.raises(TierMismatch):
        observe(omega0, atoms("a", tier=1))


def test_observe_may_be_empty():
    spec = PropertySpec(mode="rules", rules=(PropertyRule("vowel", members=Matcher(keys=frozenset("a"))),))
    omega = PropertyAssignment(spec, 0, {"a": None, "b": None})
    assert observe(omega, atoms("b")) == frozenset()


def test_bound_exceeded():
    spec = PropertySpec(mode="rules", rules=(PropertyRule("any"),), eval_bound=2)
    omega = PropertyAssignment(spec, 0, {k: None for k in "abc"})
    assert observe(omega, atoms("a", "b")) == {P("any")}
    with pytest.raises(BoundExceeded):
        observe(omega, atoms("a", "b", "c"))


def test_restrict_examples(omega0):
    ab = atoms("a", "b")
    assert restrict(omega0, ab, ab, P("letters")) == P("letters")
    assert restrict(omega0, ab, atoms("a"), P("letters")) == P("letter")
    with pytest.raises(NotASubset):
        restrict(omega0, atoms("a"), ab, P("letter"))
    with pytest.raises(UnknownProperty):
        restrict(omega0, ab, atoms("a"), P("letter"))


def test_non_presheaf_mode(fixture):
    omega = fixture("nonpresheaf").build().tier(0).omega
    with pytest.raises(MissingRestriction):
        restrict(omega, atoms("a", "b"), atoms("a"), P("letters"))
    assert check_presheaf_laws(omega, 2).skipped


def test_missing_restriction_rule():
    spec = PropertySpec(mode="rules", rules=(PropertyRule("one", max_size=1), PropertyRule("many", min_size=2)))
    omega = PropertyAssignment(spec, 0, {"a": None, "b": None})
    with pytest.raises(MissingRestriction):
        restrict(omega, atoms("a", "b"), atoms("a"), P("many"))
    report = check_presheaf_laws(omega, 2)
    assert [v.kind for v in report.violations] == ["missing", "missing"]


def test_demo_laws_hold(omega0):
    report = check_presheaf_laws(omega0, 2)
    assert report.ok and report.chains_checked > 0


def test_broken_fixture_has_exactly_the_planted_violation(fixture):
    omega = fixture("presheaf-broken").build().tier(0).omega
    report = check_presheaf_laws(omega, 3)
    assert [(v.kind, v.chain, v.property) for v in report.violations] == [
        ("composition", (("a", "b", "c"), ("a", "b"), ("a",)), "t"),
    ]


def test_singleton_bound_is_vacuous(fixture):
    omega = fixture("presheaf-broken").build().tier(0).omega
    report = check_presheaf_laws(omega, 1)
    assert report.ok


def test_size_bound_must_be_positive(omega0):
    with pytest.raises(ValueError):
        check_presheaf_laws(omega0, 0)


def brute_observe(spec, units, keys):
    # direct reading of the rule definitions, independent of the engine's pools
    out = set()
    for r in spec.rules:
        if len(keys) < r.min_size or (r.max_size is not None and len(keys) > r.max_size):
            continue
        if all(r.members.matches(k, units[k]) for k in keys):
            out.add(r.name)
    return out


rule_st = st.builds(
    PropertyRule,
    name=st.sampled_from(["p", "q", "r"]),
    members=st.sampled_from([Matcher(), Matcher(keys=frozenset("ab")), Matcher(keys=frozenset("bc"))]),
    min_size=st.integers(1, 3),
    max_size=st.one_of(st.none(), st.integers(1, 4)),
)


@settings(max_examples=60, deadline=None)
@given(st.lists(rule_st, min_size=1, max_size=3), st.integers(1, 4))
def test_rules_and_table_agree(rules, n):
    spec = PropertySpec(mode="rules", rules=tuple(rules), eval_bound=4)
    units = {k: None for k in "abcd"[:n]}
    omega = PropertyAssignment(spec, 0, units)
    table = omega.materialize()
    assert table.mode == "table"
    for r in range(1, n + 1):
        for combo in combinations(sorted(units), r):
            s = frozenset(combo)
            got = omega.observe_keys(s)
            assert got == table.observe_keys(s) == brute_observe(spec, units, s)
            assert got == omega.observe_keys(s)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4))
def test_full_restriction_family_is_a_presheaf(n):
    spec = PropertySpec(
        mode="rules",
        rules=(PropertyRule("one", max_size=1), PropertyRule("many", min_size=2)),
        restriction_rules=(RestrictionRule("many", "one", 1), RestrictionRule("many", "many")),
    )
    omega = PropertyAssignment(spec, 0, {k: None for k in "abcd"[:n]})
    assert check_presheaf_laws(omega, n).ok
