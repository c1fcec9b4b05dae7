"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Bad input: couplings, configuration, or operator preconditions."""


class DomainError(ValueError):
    """A closed form was requested outside its validity domain.

    Raised e.g. where a Bogoliubov stage would need |gamma/kappa| >= 1 or
    |Gamma| >= 1; sweep drivers catch this per point and mark the row as
    diverged instead of aborting.
    """


class CutoffError(RuntimeError):
    """A truncated Fock-space computation could not meet its tail tolerance."""
