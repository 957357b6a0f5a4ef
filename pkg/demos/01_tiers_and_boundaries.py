"""
Tiers, lifting and boundaries: letters bind into words, words into a sentence,
and the boundary maps take the sentence apart again.
"""
from hyperlang import boundary, derivation_tree, load_fixture
from hyperlang.units import UnitId

###################### Build the two-tier sentence fixture ######################
doc = load_fixture("sentences.json")
h = doc.build()
for i in range(h.height):
    print(f"tier {i}: {sorted(u.key for u in h.units(i))}")

###################### Boundary: a bond knows what it binds ######################
sentence = UnitId(2, "sentence(ab(a,b)@letters,ba(b,a)@letters)@words")
print("∂ sentence =", sorted(u.key for u in boundary(h, sentence)))
print("∂ ab       =", sorted(u.key for u in boundary(h, UnitId(1, "ab(a,b)@letters"))))

# a repeated letter survives in the bond's pattern but not in its boundary
pairs = load_fixture("ab-words.json").build()
aa = UnitId(1, "pair(a,a)@letters")
print("pattern of aa:", pairs.bond(aa).pattern, " boundary:", sorted(u.key for u in boundary(pairs, aa)))

###################### Derivation tree, level by level ######################
tree = derivation_tree(h, sentence)
print("depth", tree.depth, "leaves", "".join(tree.leaf_keys()))
for n, level in enumerate(tree.levels()):
    print(f"  level {tree.depth - n}:", sorted(u.key for u in level))
