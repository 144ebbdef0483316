"""Exception types shared across the package.

Arithmetic-shaped failures subclass the matching builtin so callers that
only know the stdlib hierarchy still catch them.
"""

from __future__ import annotations


class DalgError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(DalgError, ValueError):
    """Operands live over different fields or have incompatible shapes."""


class ShapeMismatch(DimensionMismatch):
    """Matrix/vector shape disagreement."""


class AmbientMismatch(DimensionMismatch):
    """Two ideals or subspaces do not share the same ambient algebra."""


class Inconsistent(DalgError, ValueError):
    """A linear system has no solution."""


class NeedsExtension(DalgError):
    """The computation requires a root that does not exist in this field.

    ``suggested_k`` is a field size (bit width) where the computation can
    be retried after embedding.
    """

    def __init__(self, msg: str, suggested_k: int | None = None):
        super().__init__(msg)
        self.suggested_k = suggested_k


class DegreeLimit(DalgError, ValueError):
    """Requested field degree is outside the supported range."""


class DegreeOverflow(DalgError, ValueError):
    """A product left the degree window the caller asked to stay inside."""


class NotDIdeal(DalgError, ValueError):
    """Subspace is not closed under multiplication and the differential."""


class NotCommutative(DalgError, ValueError):
    """Operation requires a commutative algebra."""


class NonSplit(NeedsExtension):
    """A residue field is a proper extension; the base field cannot split it.

    Subclasses :class:`NeedsExtension` so extend-and-retry loops can treat
    both the same way; ``suggested_k`` names a field where the split works.
    """


class WrongDefect(DalgError, ValueError):
    """Operation requires a specific defect and the input has another."""


class NotClosedAtBound(DalgError):
    """Multiplication of coset representatives escapes the degree bound."""


class RelationsNotDClosed(DalgError, ValueError):
    """The span of the relations is not stable under the differential."""


class NotGenerating(DalgError, ValueError):
    """The proposed generators do not generate the algebra."""


class NotApplicable(DalgError, ValueError):
    """Input fails a structural precondition of the requested routine."""


class BadDifferential(DalgError, ValueError):
    """A proposed differential does not square to zero."""


class TheoremViolation(DalgError):
    """A verified structural fact failed on concrete data.

    Raised when an internally checked identity that must hold for every
    valid input fails; it signals corrupted input or a bug, never a
    legitimate outcome.
    """


class DslSyntaxError(DalgError, ValueError):
    """Presentation source text failed to parse.

    ``pos`` is a 0-based character offset into the source; ``line`` and
    ``col`` are the matching 1-based coordinates when the caller knows
    them.
    """

    def __init__(
        self,
        msg: str,
        pos: int | None = None,
        line: int | None = None,
        col: int | None = None,
    ):
        if line is not None and col is not None:
            msg = f"{msg} (line {line}, column {col})"
        elif pos is not None:
            msg = f"{msg} (at offset {pos})"
        super().__init__(msg)
        self.pos = pos
        self.line = line
        self.col = col


class FormatError(DalgError, ValueError):
    """An algebra file is malformed and cannot be parsed."""


class AxiomsFailed(DalgError):
    """A parsed structure failed its axiom suite.

    ``report`` carries the failing report so callers can show exactly
    which laws broke and on which witnesses.
    """

    def __init__(self, msg: str, report=None):
        super().__init__(msg)
        self.report = report


class IndexOutOfRange(DalgError, ValueError):
    """A generator index in presentation source exceeds the declared rank."""
