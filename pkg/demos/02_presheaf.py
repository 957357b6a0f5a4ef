"""
Property assignments: what a collection of units is observed as, and how an
observation restricts to a smaller collection.
"""
from hyperlang import check_presheaf_laws, load_fixture, observe, restrict
from hyperlang.units import PropertyId, UnitId

a, b = UnitId(0, "a"), UnitId(0, "b")
omega = load_fixture("ab-words.json").build().tier(0).omega

print("Ω{a}   =", sorted(p.name for p in observe(omega, {a})))
print("Ω{a,b} =", sorted(p.name for p in observe(omega, {a, b})))
print("letters on {a,b} restricted to {a}:", restrict(omega, {a, b}, {a}, PropertyId("letters", 0)).name)

## laws hold on the demo assignment
print(check_presheaf_laws(omega, 2))

## the shipped broken table has one planted composition failure
broken = load_fixture("presheaf-broken.json").build().tier(0).omega
for v in check_presheaf_laws(broken, 3).violations:
    print("violation:", v)

## a plain assignment carries no restriction maps at all
plain = load_fixture("nonpresheaf.json").build().tier(0).omega
print("plain assignment skipped:", check_presheaf_laws(plain, 2).skipped)

## rule mode and table mode agree
table = omega.materialize()
print("materialized entries:", {tuple(sorted(k)): sorted(v) for k, v in table.spec.table.items()})
