"""Exception hierarchy shared by every module.

The CLI maps these onto exit statuses: input errors exit 2, budget
exhaustion exits 3.
"""


class HereditexError(Exception):
    """Base class for all package errors."""


class InputError(HereditexError, ValueError):
    """Malformed or mutually inconsistent input."""


class CapabilityError(HereditexError):
    """The request is well formed but exceeds a configured cap."""


class BudgetExhausted(HereditexError):
    """A search ran out of nodes or time before it could finish."""


class EmptyPropertyError(HereditexError):
    """No hypergraph on the requested vertex count satisfies the property.

    Raised when a forbidden member has no constrained edge and fits on
    ``n`` vertices, so the maximum in the extremal problem is over an
    empty set.
    """


class UndefinedDensityError(HereditexError):
    """A relative density was requested for a frame color no edge realizes."""


class InconsistencyError(HereditexError):
    """An internal invariant failed; surfaced instead of being patched."""
