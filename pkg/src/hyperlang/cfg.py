"""Context-free grammars and a brute-force language oracle.

The oracle expands sentential forms breadth-first and knows nothing about
tiers or bonds; it is the independent side of every grammar cross-check.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .errors import GrammarError
from .units import NAME_RE


@dataclass(frozen=True)
class Production:
    head: str
    body: tuple[str, ...]

    def __str__(self) -> str:
        return f"{self.head} -> {' '.join(self.body)}"


@dataclass(frozen=True)
class Cfg:
    nonterminals: frozenset[str]
    terminals: frozenset[str]
    productions: tuple[Production, ...]
    start: str

    def __post_init__(self):
        if self.start not in self.nonterminals:
            raise GrammarError(f"start symbol {self.start!r} is not a nonterminal")
        clash = self.nonterminals & self.terminals
        if clash:
            raise GrammarError(f"symbols used as both terminal and nonterminal: {sorted(clash)}")
        for sym in self.nonterminals | self.terminals:
            if not NAME_RE.match(sym):
                raise GrammarError(f"invalid grammar symbol {sym!r}")
        for p in self.productions:
            if p.head not in self.nonterminals:
                raise GrammarError(f"production head {p.head!r} is not a nonterminal")
            if not p.body:
                raise GrammarError(f"ε-production for {p.head!r} is not supported")
            for sym in p.body:
                if sym not in self.nonterminals and sym not in self.terminals:
                    raise GrammarError(f"unknown symbol {sym!r} in {p}")
        cycle = self._unit_cycle()
        if cycle:
            raise GrammarError(f"cycle of unit productions through {cycle!r}")

    @classmethod
    def of(cls, productions: Iterable[tuple[str, Iterable[str]]], start: str | None = None,
           terminals: Iterable[str] | None = None) -> Cfg:
        """Grammar from ``(head, body)`` pairs; symbols that never head a
        production are terminals unless ``terminals`` says otherwise."""
        prods = tuple(Production(h, tuple(b)) for h, b in productions)
        heads = {p.head for p in prods}
        syms = {s for p in prods for s in p.body}
        terms = frozenset(terminals) if terminals is not None else frozenset(syms - heads)
        nts = frozenset(heads | (syms - terms))
        return cls(nts, terms, prods, start if start is not None else prods[0].head)

    def _unit_cycle(self) -> str | None:
        edges: dict[str, set[str]] = {}
        for p in self.productions:
            if len(p.body) == 1 and p.body[0] in self.nonterminals:
                edges.setdefault(p.head, set()).add(p.body[0])
        state: dict[str, int] = {}

        def visit(n):
            state[n] = 1
            for m in edges.get(n, ()):
                if state.get(m) == 1:
                    return m
                if m not in state:
                    hit = visit(m)
                    if hit:
                        return hit
            state[n] = 2
            return None

        for n in sorted(edges):
            if n not in state:
                hit = visit(n)
                if hit:
                    return hit
        return None

    def unit_chain_length(self) -> int:
        """Longest chain of unit productions A₁ → A₂ → … (number of steps)."""
        edges: dict[str, set[str]] = {}
        for p in self.productions:
            if len(p.body) == 1 and p.body[0] in self.nonterminals:
                edges.setdefault(p.head, set()).add(p.body[0])
        memo: dict[str, int] = {}

        def longest(n):
            if n not in memo:
                memo[n] = max((1 + longest(m) for m in edges.get(n, ())), default=0)
            return memo[n]

        return max((longest(n) for n in self.nonterminals), default=0)

    def without(self, index: int) -> Cfg:
        """The same grammar with production ``index`` dropped."""
        prods = self.productions[:index] + self.productions[index + 1:]
        return Cfg(self.nonterminals, self.terminals, prods, self.start)


def oracle_language(g: Cfg, max_len: int) -> frozenset[tuple[str, ...]]:
    """All terminal strings of length ≤ ``max_len`` derivable from the start symbol.

    Breadth-first leftmost expansion; forms longer than ``max_len`` are
    pruned, which is safe because no production shrinks a form.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    by_head: dict[str, list[tuple[str, ...]]] = {}
    for p in g.productions:
        by_head.setdefault(p.head, []).append(p.body)
    start = (g.start,)
    seen = {start}
    queue = deque([start])
    words = set()
    while queue:
        form = queue.popleft()
        pos = next((i for i, s in enumerate(form) if s in g.nonterminals), None)
        if pos is None:
            words.add(form)
            continue
        for body in by_head.get(form[pos], ()):
            nxt = form[:pos] + body + form[pos + 1:]
            if len(nxt) <= max_len and nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return frozenset(words)
