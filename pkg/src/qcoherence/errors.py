"""Exception types raised across the package."""


class CapacityError(ValueError):
    """Requested size exceeds a dimension guard."""


class LayoutError(ValueError):
    """Register selection does not match the state's register layout."""


class ValidationError(ValueError):
    """Input violates a documented invariant (normalization, Hermiticity, ...)."""


class NoSolutionError(ValueError):
    """A Grover quantity was requested for an instance with M = 0."""


class InvalidFunctionError(ValueError):
    """Deutsch-Jozsa function is neither constant nor balanced."""


class InvalidBaseError(ValueError):
    """Base shares a factor with the modulus.

    The shared factor is kept on ``factor`` since it already splits ``N``.
    """

    def __init__(self, x, N, factor):
        self.x = x
        self.N = N
        self.factor = factor
        super().__init__(f"gcd({x}, {N}) = {factor} != 1 (free factor {factor})")
