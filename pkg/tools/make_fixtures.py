"""Regenerate the bundled fixture documents under src/hyperlang/fixtures/."""
import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "hyperlang" / "fixtures"

LETTERS = {
    "properties": {"mode": "rules", "rules": [
        {"name": "letter", "max_size": 1},
        {"name": "letters", "min_size": 2},
    ]},
    "restrictions": {"rules": [
        {"from": "letters", "to": "letter", "size": 1},
        {"from": "letters", "to": "letters"},
    ]},
}


def family(one, many, emits):
    return {
        "properties": {"mode": "rules", "rules": [
            {"name": one, "members": {"emits": [emits]}, "max_size": 1},
            {"name": many, "members": {"emits": [emits]}, "min_size": 2},
        ]},
        "restrictions": {"rules": [
            {"from": many, "to": one, "size": 1},
            {"from": many, "to": many},
        ]},
    }


def tier(props, rules, length_bound=None):
    out = dict(props)
    out["bond_rules"] = rules
    if length_bound is not None:
        out["length_bound"] = length_bound
    return out


AB = {"kind": "concat", "tag": "ab", "emit": "word", "guard": ["letters"],
      "pattern": [{"match": {"keys": ["a"]}}, {"match": {"keys": ["b"]}}]}
BA = {"kind": "concat", "tag": "ba", "emit": "word", "guard": ["letters"],
      "pattern": [{"match": {"keys": ["b"]}}, {"match": {"keys": ["a"]}}]}
WORDS = tier(LETTERS, [AB, BA])
K_AB, K_BA = "ab(a,b)@letters", "ba(b,a)@letters"
K_PHRASE = f"phrase({K_AB},{K_BA})@words"
K_CLAUSE = f"clause({K_PHRASE})@phrase1"
K_TEXT = f"text({K_CLAUSE})@clause1"


def phrase_tiers(levels):
    tiers = [WORDS, tier(family("word1", "words", "word"), [
        {"kind": "concat", "tag": "phrase", "emit": "phrase", "guard": ["words"],
         "pattern": [{"match": {"emits": ["word"]}, "min": 2, "max": 2}]}])]
    if levels >= 3:
        tiers.append(tier(family("phrase1", "phrases", "phrase"), [
            {"kind": "concat", "tag": "clause", "emit": "clause", "guard": ["phrase1"],
             "pattern": [{"match": {"emits": ["phrase"]}}]}]))
    if levels >= 4:
        tiers.append(tier(family("clause1", "clauses", "clause"), [
            {"kind": "concat", "tag": "text", "emit": "text", "guard": ["clause1"],
             "pattern": [{"match": {"emits": ["clause"]}}]}]))
    return tiers


def compat(bond, *tuples):
    return {"bond": bond, "tuples": [{"children": list(cs), "meaning": m} for cs, m in tuples]}


FIXTURES = {
    "ab-words.json": {
        "version": 1, "name": "ab-words", "atoms": ["a", "b"],
        "tiers": [tier(LETTERS, [{"kind": "concat", "tag": "pair", "emit": "word", "guard": ["letters"],
                                  "pattern": [{"min": 2, "max": 2}]}])],
        "grammar": {"start": "S", "productions": [{"head": "S", "body": ["a", "b"]}], "height_bound": 4},
    },
    "ab-star.json": {
        "version": 1, "name": "ab-star", "atoms": ["a", "b"],
        "tiers": [tier(LETTERS, [{"kind": "concat", "tag": "seq", "emit": "word", "guard": ["letters"],
                                  "pattern": [{"min": 2, "max": None}]}], length_bound=6)],
    },
    "sentences.json": {
        "version": 1, "name": "sentences", "atoms": ["a", "b"],
        "tiers": [WORDS, tier(family("word1", "words", "word"), [
            {"kind": "concat", "tag": "sentence", "emit": "sentence", "guard": ["words"],
             "pattern": [{"match": {"emits": ["word"]}, "min": 2, "max": 2}]}])],
        "start": {"emits": "sentence"},
        "meanings": {K_AB: ["m1", "m2"], K_BA: ["m3"], f"sentence({K_AB},{K_BA})@words": ["M"]},
        "compatibility": [compat(f"sentence({K_AB},{K_BA})@words", (("m2", "m3"), "M"))],
    },
    "local-global.json": {
        "version": 1, "name": "local-global", "atoms": ["a", "b"],
        "tiers": phrase_tiers(3),
        "start": {"emits": "clause"},
        "meanings": {K_AB: ["x"], K_BA: ["y"], K_PHRASE: ["p", "q"], K_CLAUSE: ["Z"]},
        "compatibility": [compat(K_PHRASE, (("x", "y"), "p")), compat(K_CLAUSE, (("q",), "Z"))],
    },
    "local-global-fixed.json": {
        "version": 1, "name": "local-global-fixed", "atoms": ["a", "b"],
        "tiers": phrase_tiers(3),
        "start": {"emits": "clause"},
        "meanings": {K_AB: ["x"], K_BA: ["y"], K_PHRASE: ["p", "q"], K_CLAUSE: ["Z"]},
        "compatibility": [compat(K_PHRASE, (("x", "y"), "p")), compat(K_CLAUSE, (("p",), "Z"))],
    },
    "multiplicity.json": {
        "version": 1, "name": "multiplicity", "atoms": ["a", "b"],
        "tiers": phrase_tiers(4),
        "start": {"emits": "text"},
        "meanings": {K_AB: ["x"], K_BA: ["y"], K_PHRASE: ["p", "q"], K_CLAUSE: ["c1", "c2"], K_TEXT: ["T"]},
        "compatibility": [
            compat(K_PHRASE, (("x", "y"), "p"), (("x", "y"), "q")),
            compat(K_CLAUSE, (("p",), "c1"), (("q",), "c2")),
            compat(K_TEXT, (("c2",), "T")),
        ],
    },
    "presheaf-broken.json": {
        "version": 1, "name": "presheaf-broken", "atoms": ["a", "b", "c"],
        "tiers": [{
            "properties": {"mode": "table", "table": [
                {"subset": ["a"], "properties": ["s", "u"]},
                {"subset": ["b"], "properties": ["s"]},
                {"subset": ["c"], "properties": ["s"]},
                {"subset": ["a", "b"], "properties": ["d"]},
                {"subset": ["a", "c"], "properties": ["d"]},
                {"subset": ["b", "c"], "properties": ["d"]},
                {"subset": ["a", "b", "c"], "properties": ["t"]},
            ]},
            "restrictions": {
                "rules": [{"from": "t", "to": "d", "size": 2}, {"from": "t", "to": "s", "size": 1},
                          {"from": "d", "to": "s", "size": 1}],
                # the planted defect: via {a,b} the point a lands on u, directly on s
                "entries": [{"superset": ["a", "b"], "subset": ["a"], "property": "d", "image": "u"}],
            },
            "bond_rules": [{"kind": "setbind", "tag": "bag", "emit": "bag", "guard": ["d", "t"],
                            "min_size": 2}],
        }],
    },
    "nonpresheaf.json": {
        "version": 1, "name": "nonpresheaf", "atoms": ["a", "b"],
        "tiers": [{
            "properties": {"mode": "rules", "presheaf": False,
                           "rules": [{"name": "letter", "max_size": 1}, {"name": "letters", "min_size": 2}]},
            "bond_rules": [{"kind": "concat", "tag": "pair", "emit": "word", "guard": ["letters"],
                            "pattern": [{"min": 2, "max": 2}]}],
        }],
    },
    "mixed-rules.json": {
        "version": 1, "name": "mixed-rules", "atoms": ["x", "y", "z"],
        "tiers": [{
            "properties": {"mode": "rules", "rules": [{"name": "item", "max_size": 1},
                                                       {"name": "group", "min_size": 2}]},
            "restrictions": {"rules": [{"from": "group", "to": "item", "size": 1},
                                       {"from": "group", "to": "group"}]},
            "bond_rules": [
                {"kind": "setbind", "tag": "bag", "emit": "bag", "guard": ["group"], "min_size": 2, "max_size": 3},
                {"kind": "table", "tag": "fixed", "emit": "pair",
                 "entries": [{"support": ["x", "y"], "ordered": True, "property": "group"},
                             {"support": ["z"], "ordered": True, "property": "item"}]},
            ],
        }],
    },
    "broken.json": {"version": 1, "name": "broken", "tiers": []},
    "bad-reference.json": {
        "version": 1, "name": "bad-reference", "atoms": ["a", "b"],
        "tiers": [tier(LETTERS, [{"kind": "concat", "tag": "pair", "emit": "word", "guard": ["noun"],
                                  "pattern": [{"min": 2, "max": 2}]}])],
    },
    "anbn.json": {
        "version": 1, "name": "anbn", "atoms": ["a", "b"], "tiers": [],
        "grammar": {"start": "S", "height_bound": 8, "productions": [
            {"head": "S", "body": ["a", "b"]}, {"head": "S", "body": ["a", "S", "b"]}]},
    },
    "ambiguous.json": {
        "version": 1, "name": "ambiguous", "atoms": ["a", "b"], "tiers": [],
        "grammar": {"start": "S", "height_bound": 8, "productions": [
            {"head": "S", "body": ["S", "S"]}, {"head": "S", "body": ["A", "B"]},
            {"head": "A", "body": ["a"]}, {"head": "B", "body": ["b"]}]},
    },
    "unreachable.json": {
        "version": 1, "name": "unreachable", "atoms": ["a", "b"], "tiers": [],
        "grammar": {"start": "S", "height_bound": 6, "productions": [
            {"head": "S", "body": ["A", "B"]}, {"head": "A", "body": ["a"]},
            {"head": "B", "body": ["b"]}, {"head": "U", "body": ["b", "a"]}]},
    },
}


def corrupted():
    """anbn's embedding with the recursive production S -> a S b dropped from the tiers."""
    import sys
    sys.path.insert(0, str(OUT.parents[1]))
    from hyperlang.grammar import from_cfg
    from hyperlang.spec_io import from_json, to_json

    doc = from_json(FIXTURES["anbn.json"])
    derived = to_json(from_cfg(doc.grammar, doc.grammar_height, atoms=doc.atoms))
    for t in derived["tiers"]:
        t["bond_rules"] = [r for r in t["bond_rules"] if r["tag"] != "S.1"]
    derived["tiers"] = [t for t in derived["tiers"] if t["bond_rules"]]
    derived["name"] = "corrupted"
    derived["start"]["tags"] = ["S.0"]
    return derived


MANIFEST = [
    (["check", "ab-words.json"], 0),
    (["check", "ab-star.json"], 0),
    (["check", "sentences.json"], 0),
    (["check", "multiplicity.json"], 0),
    (["check", "mixed-rules.json"], 0),
    (["check", "nonpresheaf.json"], 0),
    (["check", "presheaf-broken.json"], 1),
    (["check", "broken.json"], 2),
    (["check", "bad-reference.json"], 2),
    (["parse", "ab-words.json", "--input", "a", "b"], 0),
    (["parse", "ab-words.json", "--input", "b", "a"], 1),
    (["parse", "sentences.json", "--input", "a", "b", "b", "a", "--emit", "dot"], 0),
    (["parse", "anbn.json", "--input", "a", "a", "b", "b", "--emit", "json"], 0),
    (["parse", "ambiguous.json", "--input", "a", "b", "a", "b", "a", "b"], 0),
    (["parse", "anbn.json", "--input", "a", "b", "a"], 1),
    (["parse", "anbn.json", "--input", "a", "c"], 2),
    (["generate", "ab-star.json", "--tier", "0", "--bound", "3"], 0),
    (["generate", "mixed-rules.json", "--tier", "0", "--bound", "3"], 0),
    (["generate", "sentences.json", "--tier", "1", "--bound", "2"], 0),
    (["globalize", "sentences.json", "--input", "a", "b", "b", "a"], 0),
    (["globalize", "local-global.json", "--input", "a", "b", "b", "a"], 1),
    (["globalize", "local-global-fixed.json", "--input", "a", "b", "b", "a"], 0),
    (["globalize", "multiplicity.json", "--input", "a", "b", "b", "a"], 0),
    (["oracle", "anbn.json", "--max-len", "8"], 0),
    (["oracle", "ambiguous.json", "--max-len", "8"], 0),
    (["oracle", "unreachable.json", "--max-len", "6"], 0),
    (["oracle", "corrupted.json", "--max-len", "8"], 1),
    (["oracle", "ab-star.json", "--max-len", "4"], 2),
]


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    docs = dict(FIXTURES)
    docs["corrupted.json"] = corrupted()
    for name, data in sorted(docs.items()):
        (OUT / name).write_text(json.dumps(data, indent=2, ensure_ascii=False) + "\n", "utf-8")
    manifest = [{"args": args, "exit": code} for args, code in MANIFEST]
    (OUT / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n", "utf-8")
    print(f"wrote {len(docs)} fixtures to {OUT}")


if __name__ == "__main__":
    main()
