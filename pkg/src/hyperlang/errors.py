"""Exception hierarchy shared by every engine module."""


class HyperError(Exception):
    """Base class for all engine errors."""


# core model
class UnknownUnit(HyperError):
    pass


class TierZero(HyperError):
    pass


class LiftBeforeGeneration(HyperError):
    pass


class EmptyTier(HyperError):
    pass


# property assignments
class EmptySupport(HyperError):
    pass


class TierMismatch(HyperError):
    pass


class BoundExceeded(HyperError):
    pass


class NotASubset(HyperError):
    pass


class UnknownProperty(HyperError):
    pass


class MissingRestriction(HyperError):
    pass


# bonds
class NoRulesForTier(HyperError):
    pass


class MixedTiers(HyperError):
    pass


class IncompatibleGlue(HyperError):
    pass


class LengthBoundExceeded(HyperError):
    pass


# grammar bridge
class GrammarError(HyperError):
    pass


class UnknownToken(HyperError):
    pass


class HeightBoundTooSmall(HyperError):
    pass


# globalizer
class MissingMeaning(HyperError):
    pass


class MissingConstraint(HyperError):
    pass


# spec documents
class SpecError(HyperError):
    """A spec document could not be turned into a valid SpecDocument.

    ``path`` is a JSON-pointer style location ("/tiers/0/bond_rules/1").
    """

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path or '/'}: {message}")


class SpecSyntaxError(SpecError):
    pass


class SchemaError(SpecError):
    pass


class SpecReferenceError(SpecError):
    def __init__(self, name: str, message: str, path: str = ""):
        self.name = name
        super().__init__(message, path)
