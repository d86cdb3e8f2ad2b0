"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: parse/IO problems exit 2,
domain and validation failures exit 1.
"""

from __future__ import annotations


class AttackGraphError(Exception):
    """Base class for all errors raised by this package."""


class SpecParseError(AttackGraphError):
    """Document is malformed: bad JSON, wrong types, unknown or missing keys."""


class GraphValidationError(AttackGraphError):
    """One or more graph invariants are violated.

    Carries every violation found in a single pass so callers can report
    them all at once instead of fixing the document one error at a time.
    """

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class DomainError(AttackGraphError, ValueError):
    """A numeric input is outside its permitted range."""


class UnknownVertexError(AttackGraphError):
    """Referenced vertex id does not exist in the graph."""


class UnknownEdgeError(AttackGraphError):
    """Referenced (from, to) edge does not exist in the graph."""


class WrongKindError(AttackGraphError):
    """Vertex exists but has the wrong kind for the requested operation."""


class UnreachableTargetError(AttackGraphError):
    """No directed path connects the start vertex to the target."""


class PathNotInGraphError(AttackGraphError):
    """A vertex sequence does not correspond to edges of the graph."""


class CatalogError(AttackGraphError):
    """Catalog document is inconsistent: parent cycles or cross-dimension links."""
