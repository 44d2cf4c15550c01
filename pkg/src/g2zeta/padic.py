"""Exact p-adic arithmetic on rational numbers.

Valuations, absolute values, digit expansions and the standard additive
character.  Everything is computed with ``fractions.Fraction``; the
character is returned as its exponent in Q/Z so that sums of character
values can be compared exactly.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InvalidInput

INF = math.inf


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def check_prime(p) -> int:
    if isinstance(p, bool) or not isinstance(p, int) or not is_prime(p):
        raise InvalidInput(f"{p!r} is not a prime")
    return p


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise InvalidInput("floating point input is not exact; pass a Fraction or int")
    try:
        return Fraction(x)
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"cannot read {x!r} as a rational number") from exc


def _int_ord(n: int, p: int) -> int:
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def ord_p(x, p: int):
    """Exponent of p in x; ``math.inf`` for zero."""
    check_prime(p)
    x = as_fraction(x)
    if x == 0:
        return INF
    return _int_ord(x.numerator, p) - _int_ord(x.denominator, p)


def abs_p(x, p: int) -> Fraction:
    v = ord_p(x, p)
    if v == INF:
        return Fraction(0)
    return Fraction(p) ** (-v)


def unit_part(x, p: int) -> Fraction:
    """x / p^ord(x) for nonzero x."""
    v = ord_p(x, p)
    if v == INF:
        raise InvalidInput("zero has no unit part")
    return as_fraction(x) / Fraction(p) ** v


@dataclass(frozen=True)
class CharValue:
    """An element of Q/Z with p-power denominator.

    The character value it stands for is exp(2*pi*i*fraction).
    """
    fraction: Fraction = Fraction(0)

    def __post_init__(self):
        f = as_fraction(self.fraction)
        f = f - math.floor(f)
        object.__setattr__(self, "fraction", f)

    def __add__(self, other):
        if isinstance(other, CharValue):
            return CharValue(self.fraction + other.fraction)
        return NotImplemented

    def __neg__(self):
        return CharValue(-self.fraction)

    def __sub__(self, other):
        return self + (-other)

    def is_trivial(self) -> bool:
        return self.fraction == 0

    def to_complex(self) -> complex:
        if self.fraction == 0:
            return complex(1.0, 0.0)
        t = 2 * math.pi * float(self.fraction)
        return complex(math.cos(t), math.sin(t))


def fractional_part(x, p: int) -> Fraction:
    """The p-adic fractional part: sum of d_n p^n over n < 0, in [0, 1)."""
    check_prime(p)
    x = as_fraction(x)
    m = _int_ord(x.denominator, p)
    if m <= 0:
        return Fraction(0)
    pm = p ** m
    other = x.denominator // pm
    # x = a / (p^m * other) with other prime to p; reduce a / other mod p^m
    a = (x.numerator * pow(other, -1, pm)) % pm
    return Fraction(a, pm)


def e_p(x, p: int) -> CharValue:
    """The additive character exp(-2*pi*i*{x}_p) as an exponent in Q/Z."""
    return CharValue(-fractional_part(x, p))


@dataclass(frozen=True)
class PadicScalar:
    value: Fraction
    prime: int

    def __post_init__(self):
        check_prime(self.prime)
        object.__setattr__(self, "value", as_fraction(self.value))

    @property
    def valuation(self):
        return ord_p(self.value, self.prime)

    @property
    def norm(self) -> Fraction:
        return abs_p(self.value, self.prime)

    def character(self) -> CharValue:
        return e_p(self.value, self.prime)

    def expansion(self, k: int) -> "PadicExpansion":
        return expand(self.value, self.prime, k)

    def __add__(self, other):
        other = self._coerce(other)
        return PadicScalar(self.value + other.value, self.prime)

    def __sub__(self, other):
        other = self._coerce(other)
        return PadicScalar(self.value - other.value, self.prime)

    def __mul__(self, other):
        other = self._coerce(other)
        return PadicScalar(self.value * other.value, self.prime)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.value == 0:
            raise ZeroDivisionError("division by zero p-adic scalar")
        return PadicScalar(self.value / other.value, self.prime)

    def _coerce(self, other):
        if isinstance(other, PadicScalar):
            if other.prime != self.prime:
                raise InvalidInput("mixed primes")
            return other
        return PadicScalar(as_fraction(other), self.prime)


@dataclass(frozen=True)
class PadicExpansion:
    start_order: int
    digits: tuple
    prime: int

    def value(self) -> Fraction:
        p = self.prime
        return sum((Fraction(d) * Fraction(p) ** (self.start_order + i)
                    for i, d in enumerate(self.digits)), Fraction(0))

    def as_dict(self) -> dict:
        return {"prime": self.prime, "start_order": self.start_order, "digits": list(self.digits)}


def expand(x, p: int, k: int) -> PadicExpansion:
    """First k digits of x starting from its leading order."""
    check_prime(p)
    if not isinstance(k, int) or k < 1:
        raise InvalidInput("expansion depth must be a positive integer")
    x = as_fraction(x)
    if x == 0:
        return PadicExpansion(0, (), p)
    n = ord_p(x, p)
    u = unit_part(x, p)
    mod = p ** k
    r = (u.numerator * pow(u.denominator, -1, mod)) % mod
    digits = []
    for _ in range(k):
        r, d = divmod(r, p)
        digits.append(d)
    return PadicExpansion(n, tuple(digits), p)
