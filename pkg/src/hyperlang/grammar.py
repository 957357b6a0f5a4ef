"""Context-free grammars embedded as stratified hyperstructures.

A parse-tree node of height ``k`` becomes a bond whose identity sits at tier
``k``: each production is a concat rule emitting its head, and children of
lower height are raised by unary padding bonds.  Only *canonical* trees are
built: a production bond above tier 1 must have at least one child that is
itself a production bond from the tier right below, so every CFG tree has
exactly one stratified form.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence, Union

from .bonds import ConcatRule, Repeat
from .cfg import Cfg, Production, oracle_language
from .core import DerivationTree, TierSpec, build, derivation_tree
from .document import SpecDocument, StartSpec
from .errors import HeightBoundTooSmall, HyperError, UnknownToken
from .presheaf import DEFAULT_EVAL_BOUND, PropertyRule, PropertySpec, RestrictionRule
from .units import Matcher

SPAN = "span"
PAD_PREFIX = "pad:"

CfgTree = Union[str, tuple]


def production_tags(g: Cfg) -> list[str]:
    counts: dict[str, int] = {}
    tags = []
    for p in g.productions:
        n = counts.get(p.head, 0)
        counts[p.head] = n + 1
        tags.append(f"{p.head}.{n}")
    return tags


def pad_tag(symbol: str) -> str:
    return PAD_PREFIX + symbol


def _heights(g: Cfg, bound: int) -> tuple[dict[str, set[int]], list[list[int]]]:
    """Canonical heights per symbol and, per height, the productions realizable there."""
    heights: dict[str, set[int]] = {t: {0} for t in g.terminals}
    for n in g.nonterminals:
        heights[n] = set()
    at: list[list[int]] = [[] for _ in range(bound + 1)]
    for h in range(1, bound + 1):
        for idx, p in enumerate(g.productions):
            kids = [heights[s] for s in p.body]
            if all(ks and min(ks) <= h - 1 for ks in kids) and any(h - 1 in ks for ks in kids):
                at[h].append(idx)
        for idx in at[h]:
            heights[g.productions[idx].head].add(h)
    return heights, at


def from_cfg(g: Cfg, height_bound: int, atoms: Iterable[str] | None = None) -> SpecDocument:
    """Hyperstructure spec whose canonical parses up to ``height_bound`` are g's parse trees."""
    if height_bound < 1:
        raise ValueError("height_bound must be >= 1")
    tags = production_tags(g)
    heights, at = _heights(g, height_bound)
    top = max((h for h in range(1, height_bound + 1) if at[h]), default=0)
    longest = max(len(p.body) for p in g.productions)
    omega = PropertySpec(
        mode="rules",
        rules=(PropertyRule(SPAN),),
        restriction_rules=(RestrictionRule(SPAN, SPAN),),
        eval_bound=max(DEFAULT_EVAL_BOUND, longest),
    )

    def match(sym: str, tier: int) -> Matcher:
        return Matcher(keys=frozenset([sym])) if tier == 0 else Matcher(emits=frozenset([sym]))

    tiers = []
    for k in range(top):
        rules: list = []
        native_below = frozenset(tags[i] for i in at[k]) if k >= 1 else None
        for idx in at[k + 1]:
            p = g.productions[idx]
            rules.append(ConcatRule(
                tier=k, tag=tags[idx], emit=p.head,
                pattern=tuple(Repeat(match(s, k)) for s in p.body),
                require=Matcher(tags=native_below) if k >= 1 else None,
            ))
        used_above = {s for h in range(k + 2, top + 1) for idx in at[h] for s in g.productions[idx].body}
        for sym in sorted(used_above):
            if heights[sym] and min(heights[sym]) <= k:
                rules.append(ConcatRule(tier=k, tag=pad_tag(sym), emit=sym, pattern=(Repeat(match(sym, k)),)))
        tiers.append(TierSpec(omega, tuple(rules), longest))
    return SpecDocument(
        atoms=tuple(sorted(atoms)) if atoms is not None else tuple(sorted(g.terminals)),
        tiers=tuple(tiers),
        start=StartSpec(g.start, frozenset(t for t, p in zip(tags, g.productions) if p.head == g.start)),
        grammar=g,
        grammar_height=height_bound,
        name="cfg",
    )


@dataclass(frozen=True)
class ParseResult:
    tokens: tuple[str, ...]
    derivations: tuple[DerivationTree, ...]

    @property
    def accepted(self) -> bool:
        return bool(self.derivations)


def parsing_document(doc: SpecDocument) -> SpecDocument:
    """The document :func:`parse_text` actually runs: ``doc`` itself when it
    declares a start property, otherwise the embedding of its grammar."""
    if doc.start is not None:
        return doc
    if doc.grammar is None:
        raise HyperError("document declares neither a start property nor a grammar")
    return from_cfg(doc.grammar, doc.grammar_height, atoms=doc.atoms)


def parse_text(doc: SpecDocument, tokens: Sequence[str]) -> ParseResult:
    """All derivations of ``tokens`` rooted at the start property."""
    tokens = tuple(tokens)
    target = parsing_document(doc)
    atoms = set(target.atoms)
    for t in tokens:
        if t not in atoms:
            raise UnknownToken(f"{t!r} is not a declared atom")
    if not tokens:
        return ParseResult(tokens, ())
    h = build(target.atoms, target.tiers, within=tokens)
    start = target.start
    roots = sorted(
        (b for b in h.all_bonds()
         if b.emit == start.emits and (start.tags is None or b.rule_tag in start.tags)
         and h.leaves(b.id) == tokens),
        key=lambda b: (b.id.tier, b.id.key),
    )
    trees = tuple(derivation_tree(h, b.id) for b in roots)
    if not trees and target.grammar is not None:
        _check_height(target, h)
    return ParseResult(tokens, trees)


def _check_height(target: SpecDocument, h) -> None:
    """Raise when a taller canonical tree could still cover the input."""
    g = target.grammar
    bound = target.grammar_height
    _, at = _heights(g, bound + 1)
    if not at[bound + 1] or h.height <= bound:
        return
    native = set(production_tags(g))
    if any(b.rule_tag in native for b in h.tiers[bound].units.values() if b is not None):
        raise HeightBoundTooSmall(f"parses may need more than {bound} tiers")


def to_cfg_tree(tree: DerivationTree | object) -> CfgTree:
    """Strip padding bonds: ``(head, (children...))`` with terminal strings as leaves."""
    if not isinstance(tree, DerivationTree):
        return tree.key
    if tree.root.rule_tag.startswith(PAD_PREFIX):
        return to_cfg_tree(tree.children[0])
    return (tree.root.emit, tuple(to_cfg_tree(c) for c in tree.children))


@dataclass(frozen=True)
class Mismatch:
    tokens: tuple[str, ...]
    parsed: bool
    derivable: bool
    note: str = ""


@dataclass(frozen=True)
class DiscrepancyReport:
    max_len: int
    height_bound: int
    required_height: int
    justification: str
    mismatches: tuple[Mismatch, ...]
    strings_checked: int

    @property
    def ok(self) -> bool:
        return not self.mismatches


def required_height(g: Cfg, max_len: int) -> int:
    """Height sufficient for every parse tree with at most ``max_len`` leaves."""
    return max_len * (g.unit_chain_length() + 1)


def cross_validate(g: Cfg, max_len: int, height_bound: int, spec: SpecDocument | None = None) -> DiscrepancyReport:
    """Compare parse acceptance with oracle membership on every string of
    length ≤ ``max_len`` over g's terminals.

    ``spec`` replaces the parser side (by default the embedding of ``g``).
    """
    doc = spec if spec is not None else from_cfg(g, height_bound)
    lang = oracle_language(g, max_len)
    need = required_height(g, max_len)
    chain = g.unit_chain_length()
    justification = (
        f"without ε-productions every node either adds a leaf or is one of at most {chain} "
        f"consecutive unit steps, so a tree with ≤ {max_len} leaves has height ≤ {need}; "
        f"bound {height_bound} is {'sufficient' if height_bound >= need else 'NOT sufficient'}"
    )
    terms = sorted(g.terminals)
    mismatches = []
    checked = 0
    for n in range(max_len + 1):
        for w in product(terms, repeat=n):
            checked += 1
            note = ""
            try:
                parsed = parse_text(doc, w).accepted
            except HeightBoundTooSmall:
                parsed, note = False, "height bound too small"
            derivable = w in lang
            if parsed != derivable:
                mismatches.append(Mismatch(w, parsed, derivable, note))
    return DiscrepancyReport(max_len, height_bound, need, justification, tuple(mismatches), checked)


__all__ = [
    "Cfg", "DiscrepancyReport", "Mismatch", "ParseResult", "Production", "cross_validate", "from_cfg",
    "oracle_language", "parse_text", "parsing_document", "production_tags", "required_height", "to_cfg_tree",
]
