"""Exception types shared across the package."""


class LindqbitError(Exception):
    """Base class for every error this package raises deliberately."""


class DimensionMismatchError(LindqbitError, ValueError):
    """Operand shape does not match what the operation requires."""


class NotHermitianError(LindqbitError, ValueError):
    """Matrix deviates from its conjugate transpose beyond tolerance."""


class NoConvergenceError(LindqbitError, RuntimeError):
    """Iterative solver exhausted its sweep budget."""


class NotPSDError(LindqbitError, ValueError):
    """Matrix has an eigenvalue below the negative tolerance."""


class InvalidStateError(LindqbitError, ValueError):
    """Vector or matrix does not satisfy the state invariants."""


class TraceNotOneError(InvalidStateError):
    """Density matrix trace differs from 1 beyond tolerance."""


class NotPositiveError(InvalidStateError):
    """Density matrix has a genuinely negative eigenvalue."""


class DomainError(LindqbitError, ValueError):
    """Scalar argument lies outside its documented domain."""


class InvalidRatesError(LindqbitError, ValueError):
    """Rate matrices violate symmetry, sign, or zero-diagonal requirements."""


class RelaxationPresentError(LindqbitError, ValueError):
    """Operation requires pure dephasing but relaxation rates are nonzero."""


class UnphysicalEvolutionError(LindqbitError, RuntimeError):
    """A propagated state left the physical set beyond the allowed threshold."""


class ConfigError(LindqbitError, ValueError):
    """Configuration input failed to parse or validate.

    ``field`` is a dotted/indexed path into the offending document, e.g.
    ``dissipation.rates.Gamma[0][1]``; empty for document-level problems.
    """

    def __init__(self, field, reason):
        self.field = field
        self.reason = reason
        super().__init__(f"{field}: {reason}" if field else reason)
