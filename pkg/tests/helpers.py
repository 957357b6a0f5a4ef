"""Random small globalizer instances and a full-product brute-force solver."""
from itertools import product
import random

from hyperlang.core import DerivationTree
from hyperlang.globalizer import CompatibilityRelation, MeaningAssignment
from hyperlang.units import UnitId, make_bond

POOL = ("m0", "m1", "m2")


def random_tree(rng: random.Random, max_bonds: int = 5) -> DerivationTree:
    budget = [max_bonds]
    counter = [0]

    def node(tier: int) -> DerivationTree:
        budget[0] -= 1
        counter[0] += 1
        tag = f"n{counter[0]}"
        if tier == 1:
            leaves = tuple(UnitId(0, rng.choice("ab")) for _ in range(rng.randint(1, 2)))
            b = make_bond(0, [u.key for u in leaves], True, "p", tag)
            return DerivationTree(b, leaves)
        kids = [node(tier - 1)]
        while budget[0] >= tier - 1 and rng.random() < 0.5:
            kids.append(node(tier - 1))
        if rng.random() < 0.15:
            kids.append(kids[0])  # shared sub-bond
        b = make_bond(tier - 1, [k.root.id.key for k in kids], True, "p", tag)
        return DerivationTree(b, tuple(kids))

    depth = rng.randint(1, 3)
    return node(depth)


def random_instance(rng: random.Random):
    tree = random_tree(rng)
    bonds = tree.bonds()
    tables: dict[int, dict[str, tuple[str, ...]]] = {}
    for b in bonds:
        ms = tuple(rng.sample(POOL, rng.randint(1, 3)))
        tables.setdefault(b.id.tier, {})[b.id.key] = ms
    meanings = {t: MeaningAssignment(t, tab) for t, tab in tables.items()}
    density = rng.choice([0.2, 0.4, 0.7])
    compat = {}
    for u, kids in tree.child_bonds().items():
        if not kids:
            continue
        doms = [tables[k.tier][k.key] for k in kids]
        own = tables[u.tier][u.key]
        compat[u] = frozenset((cs, m) for cs in product(*doms) for m in own if rng.random() < density)
    return tree, meanings, CompatibilityRelation(compat)


def brute_force(tree, meanings, compat):
    """Every section, in lexicographic order, by looping over the full product."""
    order = [b.id for b in tree.bonds()]
    kids = tree.child_bonds()
    doms = [meanings[u.tier].table[u.key] for u in order]
    out = []
    for combo in product(*doms):
        pick = dict(zip(order, combo))
        if all((tuple(pick[k] for k in ks), pick[u]) in compat.table.get(u, ())
               for u, ks in kids.items() if ks):
            out.append(tuple(zip(order, combo)))
    return out
