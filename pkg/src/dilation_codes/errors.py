"""Exception types shared across the package."""


class InvalidInput(ValueError):
    """An argument violates an operation's precondition."""


class DivergentSeries(InvalidInput):
    """zeta(k) requested for k < 2."""


class GraphTooLarge(InvalidInput):
    """Brute-force structure exceeds its configured size limit."""


class Undecodable(ValueError):
    """An observed signal cannot be mapped back to a codeword."""
