"""
Levelwise meanings and global sections, including an instance where every
level has meanings but no global choice exists.
"""
from hyperlang import enumerate_globalizers, find_globalizer, load_fixture, parse_text, verify_section
from hyperlang.globalizer import compatibility, meanings_by_tier


def show(name):
    doc = load_fixture(name)
    (tree,) = parse_text(doc, "abba").derivations
    res = find_globalizer(tree, doc.meaning_map(), doc.compatibility)
    print(f"--- {name}")
    if res:
        for u, m in res.section.choice:
            print(f"  {u.key} ↦ {m}")
        print("  verified:", bool(verify_section(tree, doc.meaning_map(), doc.compatibility, res.section)))
    else:
        print(f"  NONE, certificate at tier {res.certificate.bond.tier}: {res.certificate.reason}")
    return doc, tree


doc, tree = show("sentences.json")
show("local-global.json")
show("local-global-fixed.json")

## two admissible tuples, two sections
sent = tree.root.id
both = compatibility({sent: [(("m1", "m3"), "M"), (("m2", "m3"), "M")]})
listed = enumerate_globalizers(tree, doc.meaning_map(), both, 10)
print("sections:", listed.count)

## collapsing a middle tier to one meaning per bond breaks the section
doc, tree = show("multiplicity.json")
flat = {k: v for t in doc.meaning_map().values() for k, v in t.table.items()}
phrase = next(b for b in tree.bonds() if b.id.tier == 2)
flat[phrase.id.key] = flat[phrase.id.key][:1]
print("collapsed middle tier solvable:", bool(find_globalizer(tree, meanings_by_tier(flat), doc.compatibility)))
