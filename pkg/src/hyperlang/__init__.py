"""Tiered hyperstructure languages: bonds of bonds, boundaries, grammars, globalizers."""

__version__ = "0.1.0"

from .bonds import (  # noqa: E402
    CONCAT_JOIN,
    SET_UNION,
    ConcatRule,
    GlueSpec,
    Repeat,
    SetBindRule,
    Situation,
    TableEntry,
    TableRule,
    bonds,
    compose,
    enumerate_bonds,
    situation,
)
from .cfg import Cfg, Production, oracle_language  # noqa: E402
from .core import (  # noqa: E402
    DerivationTree,
    Hyperstructure,
    TierSpec,
    boundary,
    build,
    derivation_tree,
    generate,
    hyperstructure,
    lift,
)
from .document import SpecDocument, StartSpec  # noqa: E402
from .export import export_derivation, import_derivation  # noqa: E402
from .globalizer import (  # noqa: E402
    CompatibilityRelation,
    MeaningAssignment,
    MeaningSection,
    enumerate_globalizers,
    find_globalizer,
    verify_section,
)
from .grammar import ParseResult, cross_validate, from_cfg, parse_text, to_cfg_tree  # noqa: E402
from .presheaf import (  # noqa: E402
    PropertyAssignment,
    PropertyRule,
    PropertySpec,
    RestrictionEntry,
    RestrictionRule,
    check_presheaf_laws,
    observe,
    restrict,
)
from .spec_io import dump_spec, load_fixture, load_path, load_spec  # noqa: E402
from .units import ANY, Bond, Matcher, PropertyId, UnitId, make_bond  # noqa: E402
