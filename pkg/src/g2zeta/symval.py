"""Rational functions in q = p^(-s) with rational coefficients.

A fixed prime is folded into the coefficients, so p^(-3s+1) is stored as
the monomial p*q^3.  Values are kept in a canonical reduced form which
makes equality a plain structural comparison.
"""

import math
from fractions import Fraction

from .errors import InvalidInput, PoleError
from .padic import as_fraction, check_prime


class QPoly:
    """Laurent polynomial sum(c_m q^m) with exact coefficients."""

    __slots__ = ("prime", "terms")

    def __init__(self, prime: int, terms=None):
        self.prime = prime
        clean = {}
        for m, c in (terms or {}).items():
            c = as_fraction(c)
            if c != 0:
                clean[int(m)] = c
        self.terms = clean

    @classmethod
    def const(cls, prime, c):
        return cls(prime, {0: c})

    @classmethod
    def monomial(cls, prime, c, m):
        return cls(prime, {m: c})

    def is_zero(self):
        return not self.terms

    def low(self):
        return min(self.terms)

    def high(self):
        return max(self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return QPoly(self.prime, out)

    def __neg__(self):
        return QPoly(self.prime, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                out[m1 + m2] = out.get(m1 + m2, 0) + c1 * c2
        return QPoly(self.prime, out)

    def shift(self, k):
        return QPoly(self.prime, {m + k: c for m, c in self.terms.items()})

    def scale(self, c):
        return QPoly(self.prime, {m: v * c for m, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, QPoly) and self.prime == other.prime and self.terms == other.terms

    def __hash__(self):
        return hash((self.prime, tuple(sorted(self.terms.items()))))

    def evaluate(self, q):
        return sum(float(c) * q ** m for m, c in self.terms.items())

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if m == 0:
                body = str(a)
            else:
                var = "q" if m == 1 else f"q^{m}"
                body = var if a == 1 else f"{a}*{var}"
            parts.append((sign, body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"QPoly({self.to_string()})"


# dense helpers: index i holds the coefficient of q^i

def _dense(poly: QPoly):
    lo = poly.low()
    out = [Fraction(0)] * (poly.high() - lo + 1)
    for m, c in poly.terms.items():
        out[m - lo] = c
    return lo, out


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(_trim(a)) >= len(b):
        k = len(a) - len(b)
        f = a[-1] / lead
        q[k] = f
        for i, c in enumerate(b):
            a[i + k] -= f * c
    return _trim(q), a


def _gcd(a, b):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _divmod(a, b)
        a, b = b, r
    return [c / a[-1] for c in a]


def _from_dense(prime, lo, coeffs):
    return QPoly(prime, {lo + i: c for i, c in enumerate(coeffs)})


class ZetaExpr:
    """numerator/denominator in canonical reduced form."""

    __slots__ = ("num", "den")

    def __init__(self, num: QPoly, den: QPoly = None, _canonical=False):
        if den is None:
            den = QPoly.const(num.prime, 1)
        if num.prime != den.prime:
            raise InvalidInput("numerator and denominator use different primes")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if _canonical:
            self.num, self.den = num, den
        else:
            self.num, self.den = _canonicalize(num, den)

    @property
    def prime(self):
        return self.num.prime

    @classmethod
    def const(cls, prime, c):
        return cls(QPoly.const(prime, c))

    @classmethod
    def monomial(cls, prime, c, m):
        return cls(QPoly.monomial(prime, c, m))

    @classmethod
    def poly(cls, prime, terms):
        return cls(QPoly(prime, terms))

    def is_zero(self):
        return self.num.is_zero()

    def _check(self, other):
        if not isinstance(other, ZetaExpr):
            other = ZetaExpr.const(self.prime, other)
        if other.prime != self.prime:
            raise InvalidInput("expressions at different primes")
        return other

    def __add__(self, other):
        other = self._check(other)
        return ZetaExpr(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return ZetaExpr(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        other = self._check(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        return ZetaExpr(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero expression")
        return ZetaExpr(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return ZetaExpr.const(self.prime, other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise InvalidInput("only integer powers are supported")
        base = self if n >= 0 else ZetaExpr.const(self.prime, 1) / self
        out = ZetaExpr.const(self.prime, 1)
        for _ in range(abs(n)):
            out = out * base
        return out

    def __eq__(self, other):
        if isinstance(other, ZetaExpr):
            return ze_equals(self, other)
        if isinstance(other, (int, Fraction)):
            return ze_equals(self, ZetaExpr.const(self.prime, other))
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def to_string(self) -> str:
        if self.den.terms == {0: 1}:
            return self.num.to_string()
        return f"({self.num.to_string()})/({self.den.to_string()})"

    __str__ = to_string

    def __repr__(self):
        return f"ZetaExpr[p={self.prime}]({self.to_string()})"


def _canonicalize(num: QPoly, den: QPoly):
    p = num.prime
    if num.is_zero():
        return QPoly(p), QPoly.const(p, 1)
    nlo, n = _dense(num)
    dlo, d = _dense(den)
    g = _gcd(n, d)
    if len(g) > 1:
        n, _ = _divmod(n, g)
        d, _ = _divmod(d, g)
    # make the lowest denominator coefficient 1 and its exponent 0
    c0 = d[0]
    n = [c / c0 for c in n]
    d = [c / c0 for c in d]
    return _from_dense(p, nlo - dlo, n), _from_dense(p, 0, d)


def canonicalize(a: ZetaExpr) -> ZetaExpr:
    num, den = _canonicalize(a.num, a.den)
    return ZetaExpr(num, den, _canonical=True)


def ze_arith(a: ZetaExpr, b: ZetaExpr, op: str) -> ZetaExpr:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise InvalidInput(f"unknown operation {op!r}")


def ze_equals(a: ZetaExpr, b: ZetaExpr) -> bool:
    if a.prime != b.prime:
        return False
    return (a.num * b.den - b.num * a.den).is_zero()


def q_value(s, p: int) -> float:
    return float(p) ** (-s)


def ze_eval(a: ZetaExpr, s, p: int = None) -> float:
    """Substitute q = p^(-s) and evaluate in floating point."""
    if p is None:
        p = a.prime
    check_prime(p)
    if p != a.prime:
        raise InvalidInput(f"expression is over p={a.prime}, not p={p}")
    q = q_value(s, p)
    den = a.den.evaluate(q)
    scale = sum(abs(float(c)) * q ** m for m, c in a.den.terms.items())
    if den == 0 or abs(den) <= 1e-14 * scale:
        raise PoleError(f"denominator {a.den.to_string()} vanishes at s={s}, p={p}")
    return a.num.evaluate(q) / den


def q_monomial_value(coef, exponent: int, s, p: int) -> float:
    return float(coef) * math.pow(float(p), -s * exponent)
