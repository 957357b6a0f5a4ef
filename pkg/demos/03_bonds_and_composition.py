"""
Bond generation, gluing with □, and the growth of bond counts with the
length bound.
"""
from hyperlang import GlueSpec, SET_UNION, compose, enumerate_bonds, load_fixture

############################## Gluing words ##############################
h = load_fixture("ab-words.json").build()
words = {"".join(b.pattern): b for b in h.tier(0).bonds}
print("words:", sorted(words))

abba = compose([words["ab"], words["ba"]])
print("ab □ ba =", "".join(abba.pattern), "support", sorted(u.key for u in abba.members))
left = compose([compose([words["ab"], words["ba"]]), words["ab"]])
right = compose([words["ab"], compose([words["ba"], words["ab"]])])
print("associative:", left == right, "".join(left.pattern))
print("singleton identity:", compose([words["ab"]]) is words["ab"])

bag = compose([words["ab"], words["ba"]], GlueSpec(SET_UNION, resolution={("letters", "letters"): "mixed"}))
print("set-union:", bag.id.key)

############################## Generativity ##############################
star = load_fixture("ab-star.json").build(upto=0)
for n in range(1, 7):
    print(f"bound {n}: {len(list(enumerate_bonds(star, 0, n)))} bonds")
