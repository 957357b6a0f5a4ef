"""
Context-free grammars as stratified hyperstructures, checked against a
brute-force derivation oracle.
"""
from hyperlang import Cfg, cross_validate, from_cfg, oracle_language, parse_text, to_cfg_tree
from hyperlang.errors import HeightBoundTooSmall

g = Cfg.of([("S", "ab"), ("S", "aSb")])
print("oracle up to 6:", sorted("".join(w) for w in oracle_language(g, 6)))

doc = from_cfg(g, 4)
for word in ["ab", "ba", "aabb", "aaabbb"]:
    r = parse_text(doc, word)
    print(f"{word!r}: accepted={r.accepted}", [to_cfg_tree(t) for t in r.derivations])

# the tree for aaabbb has height 3, so two tiers are not enough
try:
    parse_text(from_cfg(g, 2), "aaabbb")
except HeightBoundTooSmall as e:
    print("height 2:", e)

## ambiguity: every tree is returned
amb = Cfg.of([("S", ["S", "S"]), ("S", ["A", "B"]), ("A", "a"), ("B", "b")])
print("ababab has", len(parse_text(from_cfg(amb, 8), "ababab").derivations), "derivations")

## language equality at bounded length
report = cross_validate(g, 8, 8)
print(f"{report.strings_checked} strings, {len(report.mismatches)} discrepancies")
print(report.justification)
