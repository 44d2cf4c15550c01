"""Exception types shared by every module.

Each class carries a short machine-readable ``code`` so the command line
front end can report failures without parsing messages.
"""


class G2ZetaError(Exception):
    code = "error"


class InvalidInput(G2ZetaError, ValueError):
    code = "invalid-input"


class UnsupportedDomain(G2ZetaError, ValueError):
    code = "unsupported-domain"


class UnsupportedElement(G2ZetaError, ValueError):
    code = "unsupported-element"


class PreconditionError(G2ZetaError, ValueError):
    code = "precondition"


class SmallPrime(PreconditionError):
    """p = 2 or 3, outside the unramified regime handled here."""
    code = "small-prime"


class WrongResidueClass(PreconditionError):
    """p = 1 mod 6 where p = 5 mod 6 is required."""
    code = "wrong-residue-class"


class ReducibleCubic(PreconditionError):
    code = "reducible-cubic"


class UnsupportedRegime(PreconditionError):
    code = "unsupported-regime"


class SingularPoint(G2ZetaError, ArithmeticError):
    code = "singular-point"

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class PoleError(G2ZetaError, ArithmeticError):
    code = "pole"


class ResourceLimit(G2ZetaError, RuntimeError):
    code = "resource-limit"

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required
