"""Exception types shared across the package."""


class DengfanError(Exception):
    """Base class for all package-specific errors."""


class DomainError(DengfanError, ValueError):
    """Input lies outside the mathematical domain of an operation."""


class UnsupportedBranchError(DengfanError, ValueError):
    """Coefficient branch the solver machinery does not cover (c3 = 0)."""


class UnboundStateError(DengfanError, ValueError):
    """Requested quantum numbers do not correspond to a bound state."""


class NonNormalizableStateError(DengfanError, ValueError):
    """Wavefunction shape parameters violate normalizability."""


class BracketError(DengfanError, ValueError):
    """Root bracket is degenerate or does not enclose a sign change."""


class ConvergenceError(DengfanError, RuntimeError):
    """A numerical procedure failed to reach its target accuracy."""


class MoleculeParseError(DengfanError, ValueError):
    """Molecule database record is malformed or violates an invariant."""
