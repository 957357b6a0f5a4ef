"""``hyperlang`` command line: check, parse, generate, globalize, oracle, demo.

Exit status: 0 success, 1 domain-negative result (rejected input, no
section, discrepancies, law violations), 2 usage or spec error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence, TextIO

from . import __version__
from .bonds import enumerate_bonds
from .cfg import oracle_language
from .core import build
from .errors import HyperError, SpecError
from .export import export_derivation, tree_to_json
from .globalizer import CompatibilityRelation, find_globalizer
from .grammar import cross_validate, parse_text, parsing_document
from .presheaf import check_presheaf_laws
from .spec_io import fixture_names, fixture_text, load_path

OK, NEGATIVE, ERROR = 0, 1, 2


class _Out:
    def __init__(self, stream: TextIO, color: bool):
        self.stream = stream
        self.color = color

    def __call__(self, line: str = "") -> None:
        print(line, file=self.stream)

    def mark(self, word: str, good: bool) -> str:
        if not self.color:
            return word
        return f"\x1b[{32 if good else 31}m{word}\x1b[0m"


def _tokens(values: Sequence[str]) -> tuple[str, ...]:
    # each --input value may itself hold several whitespace-separated atoms
    return tuple(t for v in values for t in v.split())


def cmd_check(args, out: _Out) -> int:
    doc = load_path(args.spec)
    out(f"{args.spec}: references ok")
    h = doc.build()
    clean = True
    for rec in h.tiers:
        if rec.omega is None:
            continue
        report = check_presheaf_laws(rec.omega, len(rec.omega.universe))
        if report.skipped:
            out(f"tier {rec.index}: plain assignment, presheaf laws skipped")
            continue
        if report.ok:
            out(f"tier {rec.index}: presheaf laws {out.mark('ok', True)} "
                f"({report.chains_checked} chains, subsets up to {report.size_bound})")
        else:
            clean = False
            out(f"tier {rec.index}: {out.mark(f'{len(report.violations)} violation(s)', False)}")
            for v in report.violations:
                out(f"  {v}")
    if doc.grammar is not None:
        g = doc.grammar
        out(f"grammar: {len(g.productions)} productions, start {g.start}, height bound {doc.grammar_height}")
    return OK if clean else NEGATIVE


def cmd_parse(args, out: _Out, err: _Out) -> int:
    doc = load_path(args.spec)
    result = parse_text(doc, _tokens(args.input))
    n = len(result.derivations)
    status = out.mark("accepted" if result.accepted else "rejected", result.accepted)
    summary = f"{status}, {n} derivation{'s' if n != 1 else ''}"
    if args.emit:
        err(summary)
        if args.emit == "dot":
            for tree in result.derivations:
                out.stream.write(export_derivation(tree, "dot"))
        else:
            out(json.dumps([tree_to_json(t) for t in result.derivations], indent=2, ensure_ascii=False))
    else:
        out(summary)
        for tree in result.derivations:
            out(f"  {tree.root.id.key}")
    return OK if result.accepted else NEGATIVE


def cmd_generate(args, out: _Out) -> int:
    doc = load_path(args.spec)
    if args.tier >= len(doc.tiers):
        raise HyperError(f"tier {args.tier} is not declared (spec has {len(doc.tiers)} tiers)")
    h = build(doc.atoms, doc.tiers, upto=args.tier)
    if h.height <= args.tier:
        raise HyperError(f"tier {args.tier} cannot be reached: a lower tier produced no bonds")
    made = list(enumerate_bonds(h, args.tier, args.bound))
    out(f"count {len(made)}")
    for b in made:
        out(f"  {b.id.key}")
    return OK


def cmd_globalize(args, out: _Out) -> int:
    doc = load_path(args.spec)
    if doc.compatibility is None and not doc.meanings:
        raise HyperError("spec declares no meanings")
    result = parse_text(doc, _tokens(args.input))
    if not result.accepted:
        out(out.mark("rejected", False) + ", nothing to globalize")
        return NEGATIVE
    compat = doc.compatibility or CompatibilityRelation()
    found = False
    for k, tree in enumerate(result.derivations):
        out(f"derivation {k}: {tree.root.id.key}")
        res = find_globalizer(tree, doc.meaning_map(), compat)
        if res:
            found = True
            out(f"  {out.mark('section', True)}")
            for u, m in res.section.choice:
                out(f"    {u.key} ↦ {m}")
        else:
            c = res.certificate
            out(f"  {out.mark('NONE', False)}: certificate {c.bond.key} at tier {c.bond.tier} ({c.reason})")
    return OK if found else NEGATIVE


def cmd_oracle(args, out: _Out) -> int:
    doc = load_path(args.spec)
    if doc.grammar is None:
        raise HyperError("spec has no grammar block")
    g = doc.grammar
    lang = sorted(oracle_language(g, args.max_len), key=lambda w: (len(w), w))
    out(f"language up to length {args.max_len}: {len(lang)} strings")
    for w in lang:
        out(f"  {' '.join(w)}")
    target = parsing_document(doc)
    report = cross_validate(g, args.max_len, target.grammar_height, spec=target)
    out(f"cross-validation over {report.strings_checked} strings: "
        + out.mark(f"{len(report.mismatches)} discrepancies", report.ok))
    out(f"  {report.justification}")
    for m in report.mismatches:
        word = " ".join(m.tokens) or "ε"
        side = "parser only" if m.parsed else "oracle only"
        out(f"  {word}: {side}" + (f" ({m.note})" if m.note else ""))
    return OK if report.ok else NEGATIVE


def cmd_demo(args, out: _Out) -> int:
    target = Path(args.dir)
    target.mkdir(parents=True, exist_ok=True)
    for name in fixture_names() + ["manifest.json"]:
        (target / name).write_text(fixture_text(name), "utf-8")
        out(f"wrote {name}")
    return OK


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hyperlang", description="Tiered hyperstructure language engine.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("--color", choices=("never", "always"), default="never", help="colour status words")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a spec and check presheaf laws")
    p.add_argument("spec")

    p = sub.add_parser("parse", help="parse whitespace-separated atoms")
    p.add_argument("spec")
    p.add_argument("--input", nargs="*", required=True, metavar="TOKEN")
    p.add_argument("--emit", choices=("dot", "json"))

    p = sub.add_parser("generate", help="enumerate the bonds of one tier")
    p.add_argument("spec")
    p.add_argument("--tier", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)

    p = sub.add_parser("globalize", help="parse, then search for a global meaning section")
    p.add_argument("spec")
    p.add_argument("--input", nargs="*", required=True, metavar="TOKEN")

    p = sub.add_parser("oracle", help="compare the parser with brute-force grammar expansion")
    p.add_argument("spec")
    p.add_argument("--max-len", type=int, required=True)

    p = sub.add_parser("demo", help="write the bundled fixtures into a directory")
    p.add_argument("--dir", default=".")
    return ap


def main(argv: Sequence[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    color = args.color == "always"
    out, err = _Out(stdout, color), _Out(stderr, color)
    try:
        if args.command == "generate" and args.bound < 1:
            raise HyperError("--bound must be >= 1")
        if args.command == "oracle" and args.max_len < 1:
            raise HyperError("--max-len must be >= 1")
        if args.command == "parse":
            return cmd_parse(args, out, err)
        return {
            "check": cmd_check,
            "generate": cmd_generate,
            "globalize": cmd_globalize,
            "oracle": cmd_oracle,
            "demo": cmd_demo,
        }[args.command](args, out)
    except SpecError as e:
        err(f"error: {args.spec}: {e}")
        return ERROR
    except (HyperError, OSError, ValueError) as e:
        err(f"error: {e}")
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
