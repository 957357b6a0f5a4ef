"""Rendering derivation trees as Graphviz DOT or round-trippable JSON."""
from __future__ import annotations

import json
from typing import Any

from .core import DerivationTree
from .units import Bond, PropertyId, UnitId


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(tree: DerivationTree, name: str = "derivation") -> str:
    """One node per tree position, ranked by tier, edges labelled ∂_i."""
    ranks: dict[int, list[str]] = {}
    edges: list[str] = []
    counter = iter(range(1 << 30))

    def visit(node) -> str:
        nid = f"n{next(counter)}"
        if isinstance(node, DerivationTree):
            b = node.root
            label = b.rule_tag if b.emit is None else f"{b.rule_tag} ▸ {b.emit}"
            ranks.setdefault(b.id.tier, []).append(
                f"{nid} [label={_quote(label)}, tooltip={_quote(b.id.key)}];")
            for c in node.children:
                cid = visit(c)
                edges.append(f"{nid} -> {cid} [label={_quote(f'∂_{b.id.tier - 1}')}];")
        else:
            ranks.setdefault(node.tier, []).append(f"{nid} [label={_quote(node.key)}, shape=plaintext];")
        return nid

    visit(tree)
    lines = [f"digraph {_quote(name)} {{", "  rankdir=TB;", "  node [shape=box];"]
    for tier in sorted(ranks, reverse=True):
        lines.append(f"  subgraph tier{tier} {{")
        lines.append("    rank=same;")
        lines.extend(f"    {n}" for n in ranks[tier])
        lines.append("  }")
    lines.extend(f"  {e}" for e in edges)
    lines.append("}")
    return "\n".join(lines) + "\n"


def _bond_json(b: Bond) -> dict[str, Any]:
    return {
        "tier": b.id.tier,
        "key": b.id.key,
        "support": [u.key for u in b.support],
        "ordered": b.ordered,
        "property": b.property.name,
        "rule_tag": b.rule_tag,
        "emit": b.emit,
    }


def tree_to_json(tree: DerivationTree) -> dict[str, Any]:
    return {
        "bond": _bond_json(tree.root),
        "children": [tree_to_json(c) if isinstance(c, DerivationTree) else {"atom": c.key}
                     for c in tree.children],
    }


def tree_from_json(data: dict[str, Any]) -> DerivationTree:
    b = data["bond"]
    tier = b["tier"]
    bond = Bond(
        id=UnitId(tier, b["key"]),
        support=tuple(UnitId(tier - 1, k) for k in b["support"]),
        ordered=b["ordered"],
        property=PropertyId(b["property"], tier - 1),
        rule_tag=b["rule_tag"],
        emit=b["emit"],
    )
    children = tuple(UnitId(0, c["atom"]) if "atom" in c else tree_from_json(c) for c in data["children"])
    return DerivationTree(bond, children)


def export_derivation(tree: DerivationTree, fmt: str = "dot") -> str:
    if fmt == "dot":
        return to_dot(tree)
    if fmt == "json":
        return json.dumps(tree_to_json(tree), indent=2, ensure_ascii=False) + "\n"
    raise ValueError(f"unknown export format {fmt!r}")


def import_derivation(text: str) -> DerivationTree:
    return tree_from_json(json.loads(text))
