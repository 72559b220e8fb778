"""
Exceptions raised by the algebra modules.

Everything derives from ValueError so callers can keep a single
``except ValueError`` boundary (API -> 400, CLI -> exit code 2).
"""


class UnitGroupLabError(ValueError):
    """Base class for rejected inputs"""


class DegreeMismatchError(UnitGroupLabError):
    """Permutations of different degrees were combined"""


class CycleSyntaxError(UnitGroupLabError):
    """Malformed cycle-notation text"""


class BoundExceededError(UnitGroupLabError):
    """A configured enumeration or materialization bound was exceeded"""


class NotASubsetError(UnitGroupLabError):
    """A subset or element does not lie in the ambient group"""


class GroupMismatchError(UnitGroupLabError):
    """Algebra elements or ideals over different groups were combined"""


class GeneratorError(UnitGroupLabError):
    """Generators do not generate the stated group"""


class NonCommutingTermsError(UnitGroupLabError):
    """The Frobenius closed form needs pairwise commuting terms"""


class SpanningHypothesisError(UnitGroupLabError):
    """The units of an algebra do not span it linearly"""


class PreconditionError(UnitGroupLabError):
    """A stated hypothesis of an operation does not hold"""
