"""Exception types shared across the package."""


class FieldConstructionError(ValueError):
    """Field parameters violate a construction precondition."""


class MixedFieldError(ValueError):
    """Operands belong to different fields."""


class IntegralityError(ArithmeticError):
    """A quantity that must be an integer failed its divisibility check."""


class WeilConditionError(ValueError):
    """pi * conj(pi) is not the rational prime it should be."""


class NoPrimeIndexError(RuntimeError):
    """The field is flagged: no Weil number can have prime index > 3."""


class SearchExhaustedError(RuntimeError):
    """A randomized search hit its attempt cap without finding a hit."""
