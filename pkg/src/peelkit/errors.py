"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: InputError -> 2, ResourceBudgetError -> 3,
CertificationError (and any verification failure) -> 1.
"""


class PeelkitError(Exception):
    """Base class for all errors raised by peelkit."""


class InputError(PeelkitError):
    """Malformed or out-of-contract input (bad file, wrong dimension, size over a hard limit)."""


class DegenerateInputError(InputError):
    """Input violates general position.

    ``witness`` holds the indices of an offending subset (an affinely dependent
    (d+1)-subset, a duplicate pair, or a dependent small set), when known.
    """

    def __init__(self, message: str, witness: tuple[int, ...] | None = None):
        super().__init__(message)
        self.witness = witness


class ResourceBudgetError(PeelkitError):
    """A configured state/node budget was exceeded; results were not computed."""


class CertificationError(PeelkitError):
    """A constructive routine could not certify its output (nothing uncertified is returned)."""
