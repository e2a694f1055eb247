"""Exception hierarchy for eblab.

Every error the library raises deliberately is an ``EblabError``; the CLI maps
them to exit code 2 (bad input / usage), while axiom counterexamples found in
well-formed inputs are reported through :class:`~eblab.core.AxiomReport`
values and exit code 1.
"""


class EblabError(Exception):
    """Base class for all eblab errors."""


class InvalidSizeError(EblabError):
    """A constructor was asked for a carrier it cannot build (e.g. n < 2)."""


class SizeLimitError(EblabError):
    """A construction or scan would exceed the configured size cap / budget."""


class NotAChainError(EblabError):
    """A totally ordered algebra was required but the input is not a chain."""


class MalformedInputError(EblabError):
    """Tables, files or statements are structurally broken (shape, range, syntax)."""


class NotASubalgebraError(EblabError):
    """A subset claimed to be a subalgebra is not closed under the operations."""


class PreconditionError(EblabError):
    """A documented operation precondition does not hold for the given input."""


class NotApplicableError(EblabError):
    """A family-specific check was applied to an algebra outside that family."""


class TooManyVariablesError(EblabError):
    """A statement uses more variables than the configured evaluation budget."""


class AxiomError(EblabError):
    """Eager validation failed; carries the offending report."""

    def __init__(self, message, report):
        super().__init__(message)
        self.report = report
