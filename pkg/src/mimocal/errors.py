"""Exception types shared across the package."""


class MimocalError(Exception):
    """Base class for all package-specific errors."""


class DegenerateEstimateError(MimocalError):
    """A phase is undefined because the relevant complex sum is exactly zero."""

    def __init__(self, chains, message=None):
        self.chains = tuple(chains)
        if message is None:
            message = f"phase undefined for chain(s) {self.chains}: zero-valued complex sum"
        super().__init__(message)


class NumericalDomainError(MimocalError):
    """A numerical operation left its valid domain (e.g. non-PD covariance)."""


class SingularFimError(MimocalError):
    """The Fisher information matrix is singular or numerically near-singular."""


class DegenerateSchurError(MimocalError):
    """A denominator in the Schur-complement CRLB ratios vanished."""
