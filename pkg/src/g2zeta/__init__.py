"""Exact local zeta integrals for G2 at primes p = 5 mod 6."""

from .errors import (G2ZetaError, InvalidInput, PoleError, PreconditionError, ReducibleCubic,
                     ResourceLimit, SingularPoint, SmallPrime, UnsupportedDomain,
                     UnsupportedElement, UnsupportedRegime, WrongResidueClass)
from .padic import e_p, ord_p, abs_p, expand
from .symval import ZetaExpr, ze_eval, ze_equals
from .integrals import CaseId, LocalParams, closed_form, numeric_case, aggregate, theorem_check

__version__ = "0.1.0"
