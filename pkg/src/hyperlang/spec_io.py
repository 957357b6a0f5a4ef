"""Loading, validating and saving spec documents (JSON)."""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema

from .bonds import ConcatRule, Repeat, SetBindRule, TableEntry, TableRule
from .cfg import Cfg, Production
from .core import TierSpec
from .document import DEFAULT_GRAMMAR_HEIGHT, SPEC_VERSION, SpecDocument, StartSpec
from .errors import GrammarError, SchemaError, SpecReferenceError, SpecSyntaxError
from .globalizer import CompatibilityRelation, meanings_by_tier
from .presheaf import DEFAULT_EVAL_BOUND, PropertyRule, PropertySpec, RestrictionEntry, RestrictionRule
from .units import ANY, Matcher, UnitId, key_tier, parse_key

DEFAULT_LENGTH_BOUND = 16


@lru_cache(maxsize=1)
def schema() -> dict:
    return json.loads(resources.files("hyperlang").joinpath("spec.schema.json").read_text("utf-8"))


def _pointer(parts) -> str:
    return "".join(f"/{p}" for p in parts)


def _schema_error(err: jsonschema.ValidationError) -> SchemaError:
    parts = list(err.absolute_path)
    if err.validator == "required" and isinstance(err.instance, dict):
        missing = [name for name in err.validator_value if name not in err.instance]
        if missing:
            return SchemaError(f"missing required field {missing[0]!r}", _pointer(parts + [missing[0]]))
    return SchemaError(err.message, _pointer(parts))


# -- decoding -----------------------------------------------------------

def _matcher(d: dict | None) -> Matcher:
    if not d:
        return ANY
    return Matcher(
        keys=frozenset(d["keys"]) if "keys" in d else None,
        emits=frozenset(d["emits"]) if "emits" in d else None,
        tags=frozenset(d["tags"]) if "tags" in d else None,
    )


def _guard(d: dict):
    return frozenset(d["guard"]) if "guard" in d else None


def _bond_rule(tier: int, d: dict):
    kind = d["kind"]
    if kind == "concat":
        return ConcatRule(
            tier=tier,
            tag=d["tag"],
            pattern=tuple(Repeat(_matcher(el.get("match")), el.get("min", 1), el.get("max", 1))
                          for el in d["pattern"]),
            emit=d.get("emit"),
            guard=_guard(d),
            require=_matcher(d["require"]) if "require" in d else None,
        )
    if kind == "setbind":
        return SetBindRule(tier, d["tag"], _matcher(d.get("members")), d.get("min_size", 1),
                           d.get("max_size"), d.get("emit"), _guard(d))
    return TableRule(tier, d["tag"],
                     tuple(TableEntry(tuple(e["support"]), e.get("ordered", True), e["property"])
                           for e in d["entries"]),
                     d.get("emit"))


def _tier(i: int, d: dict) -> TierSpec:
    p = d["properties"]
    r = d.get("restrictions", {})
    props = PropertySpec(
        mode=p["mode"],
        rules=tuple(PropertyRule(x["name"], _matcher(x.get("members")), x.get("min_size", 1), x.get("max_size"))
                    for x in p.get("rules", ())),
        table={frozenset(x["subset"]): frozenset(x["properties"]) for x in p.get("table", ())},
        restriction_rules=tuple(RestrictionRule(x["from"], x["to"], x.get("size")) for x in r.get("rules", ())),
        restriction_entries=tuple(RestrictionEntry(frozenset(x["superset"]), frozenset(x["subset"]),
                                                   x["property"], x["image"]) for x in r.get("entries", ())),
        presheaf=p.get("presheaf", True),
        eval_bound=p.get("eval_bound", DEFAULT_EVAL_BOUND),
    )
    return TierSpec(props, tuple(_bond_rule(i, b) for b in d["bond_rules"]),
                    d.get("length_bound", DEFAULT_LENGTH_BOUND))


def _grammar(d: dict) -> Cfg:
    prods = tuple(Production(p["head"], tuple(p["body"])) for p in d["productions"])
    heads = {p.head for p in prods}
    syms = {s for p in prods for s in p.body}
    nts = frozenset(d.get("nonterminals", heads | {d["start"]}))
    terms = frozenset(d.get("terminals", syms - nts))
    try:
        return Cfg(nts, terms, prods, d["start"])
    except GrammarError as e:
        raise SchemaError(str(e), "/grammar") from None


def from_json(data: Any) -> SpecDocument:
    """Validate already-parsed JSON data and build the document."""
    errors = sorted(jsonschema.Draft202012Validator(schema()).iter_errors(data),
                    key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
    if errors:
        raise _schema_error(errors[0])
    grammar = _grammar(data["grammar"]) if "grammar" in data else None
    start = None
    if "start" in data:
        s = data["start"]
        start = StartSpec(s["emits"], frozenset(s["tags"]) if "tags" in s else None)
    compat = None
    if "compatibility" in data:
        compat = CompatibilityRelation({
            UnitId(_safe_tier(c["bond"], f"/compatibility/{i}/bond"), c["bond"]):
                frozenset((tuple(t["children"]), t["meaning"]) for t in c["tuples"])
            for i, c in enumerate(data["compatibility"])
        })
    for key in data.get("meanings", {}):
        _safe_tier(key, f"/meanings/{key}")
    doc = SpecDocument(
        atoms=tuple(data["atoms"]),
        tiers=tuple(_tier(i, t) for i, t in enumerate(data.get("tiers", ()))),
        version=data["version"],
        start=start,
        grammar=grammar,
        grammar_height=data.get("grammar", {}).get("height_bound", DEFAULT_GRAMMAR_HEIGHT),
        meanings=tuple(meanings_by_tier(data.get("meanings", {})).values()),
        compatibility=compat,
        name=data.get("name"),
    )
    validate_references(doc)
    return doc


def _safe_tier(key: str, path: str) -> int:
    try:
        return key_tier(key)
    except ValueError as e:
        raise SchemaError(str(e), path) from None


def load_spec(text: str) -> SpecDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecSyntaxError(f"malformed JSON: {e.msg} (line {e.lineno}, column {e.colno})") from None
    return from_json(data)


def load_path(path: str | Path) -> SpecDocument:
    return load_spec(Path(path).read_text("utf-8"))


# -- reference checks ---------------------------------------------------

class _Scope:
    """Names visible at one tier: its properties, rule tags and emits."""

    def __init__(self, tier: TierSpec):
        self.props = tier.properties.names()
        self.tags = {r.tag for r in tier.rules}
        self.emits = {r.emit for r in tier.rules if r.emit is not None}


def _check_key(key: str, tier: int, atoms: set[str], scopes: list[_Scope], path: str) -> None:
    try:
        parts = parse_key(key)
    except ValueError:
        raise SpecReferenceError(key, f"malformed unit key {key!r}", path) from None
    if parts is None:
        if tier != 0 or key not in atoms:
            raise SpecReferenceError(key, f"{key!r} is not a unit of tier {tier}", path)
        return
    if parts.tier != tier or tier - 1 >= len(scopes):
        raise SpecReferenceError(key, f"{key!r} is not a unit of tier {tier}", path)
    below = scopes[tier - 1]
    if parts.tag not in below.tags:
        raise SpecReferenceError(parts.tag, f"unknown bond rule {parts.tag!r} in {key!r}", path)
    if parts.prop not in below.props:
        raise SpecReferenceError(parts.prop, f"undeclared property {parts.prop!r} in {key!r}", path)
    for child in parts.children:
        _check_key(child, tier - 1, atoms, scopes, path)


def _check_matcher(m: Matcher | None, tier: int, atoms, scopes, path: str) -> None:
    if m is None:
        return
    for k in m.keys or ():
        _check_key(k, tier, atoms, scopes, path + "/keys")
    if tier == 0 and (m.emits is not None or m.tags is not None):
        raise SchemaError("atoms carry no emitted property or tag", path)
    if tier > 0:
        below = scopes[tier - 1]
        for e in sorted(m.emits or ()):
            if e not in below.emits:
                raise SpecReferenceError(e, f"no tier-{tier - 1} rule emits {e!r}", path + "/emits")
        for t in sorted(m.tags or ()):
            if t not in below.tags:
                raise SpecReferenceError(t, f"no tier-{tier - 1} rule is tagged {t!r}", path + "/tags")


def _check_prop(name: str, scope: _Scope, path: str) -> None:
    if name not in scope.props:
        raise SpecReferenceError(name, f"undeclared property {name!r}", path)


def validate_references(doc: SpecDocument) -> None:
    """Raise SpecReferenceError for the first dangling name in ``doc``."""
    atoms = set(doc.atoms)
    scopes = [_Scope(t) for t in doc.tiers]
    for i, tier in enumerate(doc.tiers):
        base = f"/tiers/{i}"
        scope = scopes[i]
        ps = tier.properties
        for j, r in enumerate(ps.rules):
            _check_matcher(r.members, i, atoms, scopes, f"{base}/properties/rules/{j}/members")
        for j, (subset, _) in enumerate(ps.table.items()):
            for k in sorted(subset):
                _check_key(k, i, atoms, scopes, f"{base}/properties/table/{j}/subset")
        for j, rr in enumerate(ps.restriction_rules):
            _check_prop(rr.source, scope, f"{base}/restrictions/rules/{j}/from")
            _check_prop(rr.target, scope, f"{base}/restrictions/rules/{j}/to")
        for j, e in enumerate(ps.restriction_entries):
            p = f"{base}/restrictions/entries/{j}"
            if not e.subset <= e.superset:
                raise SchemaError("restriction subset is not contained in its superset", p)
            for k in sorted(e.superset):
                _check_key(k, i, atoms, scopes, p + "/superset")
            _check_prop(e.property, scope, p + "/property")
            _check_prop(e.image, scope, p + "/image")
        seen_tags = set()
        for j, rule in enumerate(tier.rules):
            p = f"{base}/bond_rules/{j}"
            if rule.tag in seen_tags:
                raise SchemaError(f"duplicate rule tag {rule.tag!r}", p + "/tag")
            seen_tags.add(rule.tag)
            for g in sorted(getattr(rule, "guard", None) or ()):
                _check_prop(g, scope, p + "/guard")
            if isinstance(rule, ConcatRule):
                for n, el in enumerate(rule.pattern):
                    if el.max is not None and el.max < el.min:
                        raise SchemaError("max repetition below min", f"{p}/pattern/{n}")
                    _check_matcher(el.matcher, i, atoms, scopes, f"{p}/pattern/{n}/match")
                _check_matcher(rule.require, i, atoms, scopes, p + "/require")
            elif isinstance(rule, SetBindRule):
                _check_matcher(rule.members, i, atoms, scopes, p + "/members")
            else:
                for n, e in enumerate(rule.entries):
                    for k in e.support:
                        _check_key(k, i, atoms, scopes, f"{p}/entries/{n}/support")
                    _check_prop(e.property, scope, f"{p}/entries/{n}/property")

    if doc.grammar is not None:
        missing = sorted(doc.grammar.terminals - atoms)
        if missing:
            raise SpecReferenceError(missing[0], f"grammar terminal {missing[0]!r} is not an atom",
                                     "/grammar/terminals")

    parse_doc = doc
    if doc.start is None and doc.grammar is not None and (doc.meanings or doc.compatibility):
        from .grammar import from_cfg
        parse_doc = from_cfg(doc.grammar, doc.grammar_height, atoms=doc.atoms)
    pscopes = [_Scope(t) for t in parse_doc.tiers]
    if doc.start is not None:
        if not any(doc.start.emits in s.emits for s in pscopes):
            raise SpecReferenceError(doc.start.emits, f"no rule emits start property {doc.start.emits!r}",
                                     "/start/emits")
        for t in sorted(doc.start.tags or ()):
            if not any(t in s.tags for s in pscopes):
                raise SpecReferenceError(t, f"unknown rule tag {t!r}", "/start/tags")

    table: dict[str, tuple[str, ...]] = {}
    for ma in doc.meanings:
        for key, ms in ma.table.items():
            _check_key(key, ma.tier, atoms, pscopes, f"/meanings/{key}")
            table[key] = ms
    if table and parse_doc is doc:
        # keys must name bonds the declared tiers actually realize; grammar
        # embeddings are only checked syntactically, a full build is unbounded
        h = doc.build()
        for key in sorted(table):
            tier = key_tier(key)
            if tier >= h.height or key not in h.tier(tier).units:
                raise SpecReferenceError(key, f"{key!r} is not a derivable bond", f"/meanings/{key}")
    if doc.compatibility is not None:
        for n, (u, tuples) in enumerate(sorted(doc.compatibility.table.items())):
            p = f"/compatibility/{n}"
            _check_key(u.key, u.tier, atoms, pscopes, p + "/bond")
            if u.key not in table:
                raise SpecReferenceError(u.key, f"bond {u.key!r} has no meanings", p + "/bond")
            parts = parse_key(u.key)
            kids = [c for c in parts.children if parse_key(c) is not None]
            for cs, m in sorted(tuples):
                if m not in table[u.key]:
                    raise SpecReferenceError(m, f"{m!r} is not a meaning of {u.key!r}", p + "/tuples")
                if len(cs) != len(kids):
                    raise SchemaError(f"tuple {list(cs)} needs {len(kids)} child meanings", p + "/tuples")
                for c, k in zip(cs, kids):
                    if c not in table.get(k, ()):
                        raise SpecReferenceError(c, f"{c!r} is not a meaning of {k!r}", p + "/tuples")


# -- encoding -----------------------------------------------------------

def _enc_matcher(m: Matcher) -> dict:
    out = {}
    for name in ("keys", "emits", "tags"):
        v = getattr(m, name)
        if v is not None:
            out[name] = sorted(v)
    return out


def _enc_rule(r) -> dict:
    out: dict[str, Any] = {"kind": None, "tag": r.tag}
    if r.emit is not None:
        out["emit"] = r.emit
    if isinstance(r, ConcatRule):
        out["kind"] = "concat"
        out["pattern"] = [{"match": _enc_matcher(el.matcher), "min": el.min, "max": el.max} for el in r.pattern]
        if r.require is not None:
            out["require"] = _enc_matcher(r.require)
    elif isinstance(r, SetBindRule):
        out.update(kind="setbind", members=_enc_matcher(r.members), min_size=r.min_size, max_size=r.max_size)
    else:
        out["kind"] = "table"
        out["entries"] = [{"support": list(e.support), "ordered": e.ordered, "property": e.property}
                          for e in r.entries]
    if getattr(r, "guard", None) is not None:
        out["guard"] = sorted(r.guard)
    return out


def _enc_tier(t: TierSpec) -> dict:
    p = t.properties
    props: dict[str, Any] = {"mode": p.mode, "presheaf": p.presheaf, "eval_bound": p.eval_bound}
    if p.rules:
        props["rules"] = [{"name": r.name, "members": _enc_matcher(r.members), "min_size": r.min_size,
                           "max_size": r.max_size} for r in p.rules]
    if p.table:
        props["table"] = [{"subset": sorted(s), "properties": sorted(v)}
                          for s, v in sorted(p.table.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))]
    out: dict[str, Any] = {"properties": props}
    restr: dict[str, Any] = {}
    if p.restriction_rules:
        restr["rules"] = [dict({"from": r.source, "to": r.target}, **({"size": r.size} if r.size else {}))
                          for r in p.restriction_rules]
    if p.restriction_entries:
        restr["entries"] = [{"superset": sorted(e.superset), "subset": sorted(e.subset),
                             "property": e.property, "image": e.image} for e in p.restriction_entries]
    if restr:
        out["restrictions"] = restr
    out["bond_rules"] = [_enc_rule(r) for r in t.rules]
    out["length_bound"] = t.length_bound
    return out


def to_json(doc: SpecDocument) -> dict:
    out: dict[str, Any] = {"version": doc.version}
    if doc.name is not None:
        out["name"] = doc.name
    out["atoms"] = list(doc.atoms)
    out["tiers"] = [_enc_tier(t) for t in doc.tiers]
    if doc.start is not None:
        out["start"] = {"emits": doc.start.emits}
        if doc.start.tags is not None:
            out["start"]["tags"] = sorted(doc.start.tags)
    if doc.grammar is not None:
        g = doc.grammar
        out["grammar"] = {
            "start": g.start,
            "nonterminals": sorted(g.nonterminals),
            "terminals": sorted(g.terminals),
            "height_bound": doc.grammar_height,
            "productions": [{"head": p.head, "body": list(p.body)} for p in g.productions],
        }
    if doc.meanings:
        out["meanings"] = {k: list(v) for ma in doc.meanings for k, v in ma.table.items()}
    if doc.compatibility is not None:
        out["compatibility"] = [
            {"bond": u.key, "tuples": [{"children": list(cs), "meaning": m} for cs, m in sorted(ts)]}
            for u, ts in sorted(doc.compatibility.table.items())
        ]
    return out


def dump_spec(doc: SpecDocument) -> str:
    return json.dumps(to_json(doc), indent=2, ensure_ascii=False) + "\n"


# -- bundled fixtures ---------------------------------------------------

def fixture_names() -> list[str]:
    root = resources.files("hyperlang").joinpath("fixtures")
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".json") and p.name != "manifest.json")


def fixture_text(name: str) -> str:
    return resources.files("hyperlang").joinpath("fixtures", name).read_text("utf-8")


def load_fixture(name: str) -> SpecDocument:
    return load_spec(fixture_text(name))


__all__ = [
    "SPEC_VERSION", "dump_spec", "fixture_names", "fixture_text", "from_json", "load_fixture",
    "load_path", "load_spec", "schema", "to_json", "validate_references",
]
