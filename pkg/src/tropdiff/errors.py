"""Exception types raised by the tropdiff library."""


class TropdiffError(Exception):
    """Base class for all library errors."""


class NonIntegralExponent(TropdiffError):
    """A weight falls outside the value group of the chosen field backend."""


class ZeroInput(TropdiffError):
    """Operation undefined on zero (angular component, inversion)."""


class NegativeValuation(TropdiffError):
    """Residue requested for an element of negative valuation."""


class TruncationExhausted(TropdiffError):
    """Not enough series coefficients left to perform the operation."""


class TruncationAmbiguous(TropdiffError):
    """A truncated window cannot decide the attainment set of a minimum."""


class MissingVariable(TropdiffError):
    """A polynomial variable has no value in the supplied vector."""


class NotAClassicalSolution(TropdiffError):
    """Candidate does not solve the equation within its truncation window."""


class InvalidRule(TropdiffError):
    """Malformed coefficient-law rule for a radius computation."""


class BadBase(TropdiffError):
    """Radius base must be a rational number > 1."""


class TrivialBackend(TropdiffError):
    """Operation requires a nontrivially valued coefficient field."""


class ZetaUnavailable(TropdiffError):
    """The constant zeta only exists over an Eisenstein backend."""


class UnknownVariable(TropdiffError):
    """Variable index exceeds the declared number of variables."""


class PolySyntaxError(TropdiffError):
    """Expression text does not conform to the polynomial grammar."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position
