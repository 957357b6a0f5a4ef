"""
Spec documents, validation errors and derivation export.
"""
from hyperlang import dump_spec, export_derivation, import_derivation, load_fixture, load_spec, parse_text
from hyperlang.errors import SpecError
from hyperlang.spec_io import fixture_text

doc = load_fixture("sentences.json")
print("round trip identical:", load_spec(dump_spec(doc)) == doc)

for bad in ["broken.json", "bad-reference.json"]:
    try:
        load_spec(fixture_text(bad))
    except SpecError as e:
        print(f"{bad}: {type(e).__name__}: {e}")

(tree,) = parse_text(doc, "abba").derivations
print(export_derivation(tree, "dot"))
print("json round trip:", import_derivation(export_derivation(tree, "json")) == tree)
