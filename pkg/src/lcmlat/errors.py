"""Exception types shared across the package."""


class AmbientMismatchError(ValueError):
    """Operands live in different ambient polynomial rings."""


class NotDivisibleError(ValueError):
    """A monomial quotient was requested where divisibility fails."""


class LatticeError(ValueError):
    """A support family violates the finite-atomic-lattice axioms."""


class SizeLimitError(RuntimeError):
    """A computation would exceed its configured size guard."""
