"""
Exceptions raised by the novikov package.

Everything derives from ``ValueError`` (through ``NovikovError``) so
that the command layer can treat library failures the same way the
argument parser's failures are treated.
"""


class NovikovError(ValueError):
    """Base class of all library errors."""


class GroupError(NovikovError):
    """Invalid graded group, element or cyclic quotient."""


class FieldError(NovikovError):
    """Zero inversion or mismatched coefficient fields."""


class TruncationError(NovikovError):
    """The truncation window cannot certify a nonzero leading term."""


class LambdaPlusError(NovikovError):
    """A series expected in the positive part has a term of grade <= 0."""


class ComplexError(NovikovError):
    """Malformed based complex or unknown generator."""


class OrbitError(NovikovError):
    """Inconsistent closed-orbit data."""


class MoveError(NovikovError):
    """A bifurcation move's preconditions do not hold."""


class CoverError(NovikovError):
    """A cyclic-cover computation failed to descend."""


class ScenarioError(NovikovError):
    """A scenario file could not be parsed or validated."""
