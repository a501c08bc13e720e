"""Exception types shared across the engine."""


class ValuationError(ArithmeticError):
    """A term's valuation fell below its declared lower bound."""


class NonUnitError(ArithmeticError):
    """A series that must be a unit has a zero or missing leading coefficient."""


class ConstraintError(ValueError):
    """A parameter specialization makes some denominator vanish."""

    def __init__(self, predicate, detail=""):
        self.predicate = predicate
        super().__init__(f"{predicate}: {detail}" if detail else predicate)


class ExhaustionError(RuntimeError):
    """No admissible random specialization was found."""
