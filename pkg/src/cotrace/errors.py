"""Exception types shared across the toolkit.

Split by who is at fault: InputError for malformed data handed to a
parser, ModelInvalid for well-formed models or maps that violate the ring
axioms, ComputationError for operations whose mathematical preconditions
fail on otherwise valid inputs (singular matrices, torsion where a dual
basis is needed, cross-check mismatches).
"""


class ToolkitError(Exception):
    """Base class for every error raised by this package."""


class InputError(ToolkitError):
    """Malformed input: bad JSON shape, unknown labels, bad expressions."""


class ModelInvalid(ToolkitError):
    """A model or map failed axiom validation."""

    def __init__(self, violations, message=None):
        self.violations = list(violations)
        super().__init__(message or "; ".join(self.violations) or "invalid model")


class ComputationError(ToolkitError):
    """A mathematical precondition failed on structurally valid input."""
