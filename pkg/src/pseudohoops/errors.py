"""Exception types raised across the package."""

from __future__ import annotations


class PseudoHoopError(Exception):
    """Base class for every error raised by :mod:`pseudohoops`."""


class MalformedTables(PseudoHoopError, ValueError):
    """Tables are ragged, the wrong size, or mention an unknown label."""


class AxiomViolation(PseudoHoopError):
    """The tables do not define a pseudo-hoop.

    ``violations`` holds every ``Violation(axiom, witness)`` that was found.
    """

    def __init__(self, violations, message=None):
        self.violations = list(violations)
        if message is None:
            shown = ", ".join(f"{v.axiom}{v.witness}" for v in self.violations[:5])
            more = len(self.violations) - 5
            message = f"{len(self.violations)} axiom violation(s): {shown}"
            if more > 0:
                message += f" (+{more} more)"
        super().__init__(message)


class OrderNotAntisymmetric(AxiomViolation):
    """The relation ``x -> y == 1`` is not antisymmetric."""


class NotBounded(PseudoHoopError):
    """The operation needs a designated zero element."""


class NotGood(PseudoHoopError):
    """The algebra is not good (x^{-~} != x^{~-} for some x)."""


class NotNormal(PseudoHoopError):
    def __init__(self, witness, message=None):
        self.witness = witness
        super().__init__(message or f"filter is not normal, witness {witness}")


class NotHomomorphism(PseudoHoopError):
    def __init__(self, witness, message=None):
        self.witness = witness
        super().__init__(message or f"map is not a homomorphism, witness {witness}")


class EmptyGenerator(PseudoHoopError, ValueError):
    pass


class BooleanNotApplicable(PseudoHoopError):
    """Boolean filters are only defined on bounded Wajsberg pseudo-hoops."""


class UnknownBuiltin(PseudoHoopError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown builtin"


class AlgebraSyntaxError(PseudoHoopError):
    """An algebra file could not be read.

    ``line``/``column`` are 1-based when known; ``path`` names the offending
    key (for example ``elements[2]``).
    """

    def __init__(self, message, line=None, column=None, path=None):
        self.line = line
        self.column = column
        self.path = path
        where = []
        if line is not None:
            where.append(f"line {line}, column {column}")
        if path is not None:
            where.append(f"at {path}")
        if where:
            message = f"{message} ({'; '.join(where)})"
        super().__init__(message)


class CarrierTooLarge(PseudoHoopError):
    pass


class OrderTooLarge(PseudoHoopError):
    pass


class NotNormalGood(PseudoHoopError):
    pass


class InvNotSubalgebra(PseudoHoopError):
    pass


class NotMorphismOnInv(PseudoHoopError):
    pass


class AxiomsNotSatisfied(PseudoHoopError):
    pass


class DimensionTooLarge(PseudoHoopError):
    pass


class PreconditionError(PseudoHoopError):
    pass


class QueryError(PseudoHoopError, ValueError):
    """A search predicate names an unknown fact or is not a boolean formula."""
