"""
Exception hierarchy for the toolkit.

Every error raised by a construction or check derives from ``ToolkitError``
so the CLI can map library failures to exit codes without catching
unrelated exceptions. The classes subclass ``Exception`` rather than
``ValueError`` so pydantic validators re-raise them unchanged instead of
wrapping them in a ``ValidationError``.
"""

from typing import Any, Optional


class ToolkitError(Exception):
    """Base class for all domain errors."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.message = message
        self.witness = witness

    def as_record(self) -> dict[str, Any]:
        """Key-value view used by report serialization."""
        record: dict[str, Any] = {"error": type(self).__name__, "message": self.message}
        if self.witness is not None:
            record["witness"] = self.witness
        return record


# Simplicial core


class IdentityViolation(ToolkitError):
    """A simplicial identity fails on a concrete simplex."""

    def __init__(self, level: int, identity: str, simplex: int):
        super().__init__(
            f"simplicial identity {identity} fails at level {level} on simplex {simplex}",
            witness={"level": level, "identity": identity, "simplex": simplex},
        )
        self.level = level
        self.identity = identity
        self.simplex = simplex


class MissingTableEntry(ToolkitError):
    """A face or degeneracy table is not total on its declared domain."""


class InvalidIndex(ToolkitError):
    """A dimension, horn index or truncation argument is out of range."""


class TruncationMismatch(ToolkitError):
    """Two complexes are not truncated at compatible levels."""


class TargetMismatch(ToolkitError):
    """Maps that should share a target (or compose) do not."""


class MapViolation(ToolkitError):
    """A level map does not commute with the structure maps."""


class DepthExceedsTruncation(ToolkitError):
    """An internal-hom level needs cells above the truncation of its input."""


class NoFiller(ToolkitError):
    """A horn has no filler."""


# Groupoids and 2-groups


class InvalidGroup(ToolkitError):
    """A multiplication table is not a group."""


class InvalidGroupoid(ToolkitError):
    """Groupoid tables violate totality, associativity, units or inverses."""


class InvalidFunctor(ToolkitError):
    """A functor table does not preserve the groupoid structure."""


class NotA1Groupoid(ToolkitError):
    """A complex fails the 1-groupoid conditions."""


class InvalidCrossedModule(ToolkitError):
    """Crossed module data fails equivariance, Peiffer or homomorphism laws."""


class NotATransformation(ToolkitError):
    """A cylinder is not a transformation starting at the unit."""


class CoherenceFailure(ToolkitError):
    """Higher coherence data (fillers, theta tables) is inconsistent."""


# Actions and fibrations


class NotAStrictAction(ToolkitError):
    """Per-element functors do not form a strict action."""


class NotAFibration(ToolkitError):
    """A constructed bundle failed its fibration certificate."""


class NotAHypercover(ToolkitError):
    """A map expected to be a hypercover failed the check."""


class BaseVertexMapNotBijective(ToolkitError):
    """Pushforward requires a bijection on base vertices."""


class BaseNotA1Group(ToolkitError):
    """Strictification needs the nerve of a group as base."""


class ActionNotFree(ToolkitError):
    """An object has a nontrivial stabilizer."""


class InvariantSaturationError(ToolkitError):
    """Invariant objects are not closed under fiber arrows."""


# Reduction


class NotA2Groupoid(ToolkitError):
    """A complex fails the 2-groupoid conditions."""


class Not2IsotropyFree(ToolkitError):
    """Some vertex carries more than one totally degenerate 2-cell."""


class WellDefinednessFailure(ToolkitError):
    """A quotient operation depends on the chosen representatives."""


# Interchange format


class ParseError(ToolkitError):
    """The document does not match the block grammar."""

    def __init__(self, line: int, column: int, expectation: str):
        super().__init__(
            f"line {line}, column {column}: expected {expectation}",
            witness={"line": line, "column": column, "expectation": expectation},
        )
        self.line = line
        self.column = column
        self.expectation = expectation


class DocumentValidationError(ToolkitError):
    """A parsed block failed the invariants of its domain value."""

    def __init__(self, block: str, cause: ToolkitError, line: Optional[int] = None):
        where = f" (block starting at line {line})" if line is not None else ""
        super().__init__(
            f"block '{block}'{where}: {type(cause).__name__}: {cause.message}",
            witness=cause.witness,
        )
        self.block = block
        self.cause = cause
        self.line = line
