"""Exception types shared across the package.

Validators raise on the *first* failing witness in lexicographic index
order, so error text is deterministic for a given input.
"""


class RsgError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(RsgError):
    pass


class ParseError(RsgError):
    pass


class SizeLimit(RsgError):
    pass


class AxiomViolation(RsgError):
    """A (2,1,1)-algebra axiom failed.  Carries the axiom name and witness."""

    def __init__(self, axiom: str, witness: tuple):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"axiom {axiom} fails at {witness}")


class NotAMorphism(RsgError):
    def __init__(self, operation: str, witness: tuple):
        self.operation = operation
        self.witness = witness
        super().__init__(f"map does not preserve {operation} at {witness}")


class NotInverse(RsgError):
    def __init__(self, reason: str, witness: tuple):
        self.reason = reason
        self.witness = witness
        super().__init__(f"not an inverse semigroup ({reason} at {witness})")


class NotSemilatticeMorphism(RsgError):
    def __init__(self, witness: tuple):
        self.witness = witness
        super().__init__(f"map does not preserve meets at {witness}")


class PMViolation(RsgError):
    """A premorphism condition (PM1, PM2 or PM3) failed."""

    def __init__(self, condition: str, witness: tuple):
        self.condition = condition
        self.witness = witness
        super().__init__(f"condition {condition} fails at {witness}")


class PreconditionFailed(RsgError):
    def __init__(self, condition: str, witness: tuple = ()):
        self.condition = condition
        self.witness = witness
        super().__init__(f"precondition {condition} fails"
                         + (f" at {witness}" if witness else ""))


class OracleMismatch(RsgError):
    """Two independent computations of the same value disagree.

    This always signals an implementation bug, never a property of the
    input.
    """

    def __init__(self, what: str, detail: str = ""):
        self.what = what
        super().__init__(f"oracle mismatch in {what}" + (f": {detail}" if detail else ""))


class EquivalenceViolation(RsgError):
    """A proved equivalence between conditions failed on an instance."""

    def __init__(self, what: str, witness: tuple = ()):
        self.what = what
        self.witness = witness
        super().__init__(f"equivalence {what} fails"
                         + (f" at {witness}" if witness else ""))


class UniversalityFailure(RsgError):
    def __init__(self, detail: str):
        super().__init__(detail)
