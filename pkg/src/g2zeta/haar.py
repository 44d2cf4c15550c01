"""Haar-measure integration of locally constant functions on Q_p.

Two layers live here.  The closed-form evaluators (character integrals,
the unit-group integral, the geometric tail sum and the one-variable
integral of the spherical section) return exact values.  The generic
engine ``integrate_numeric`` sums a step function over residue cells with
exact character phases, so that a vanishing sum is reported as an exact
zero rather than a small float.
"""

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import InvalidInput, ResourceLimit, UnsupportedDomain
from .padic import INF, CharValue, as_fraction, check_prime, e_p, ord_p
from .symval import ZetaExpr

DEFAULT_WORK_LIMIT = 2_000_000
DEFAULT_VMIN = -14


# ---------------------------------------------------------------- domains

@dataclass(frozen=True)
class Domain:
    """A bounded or explicitly truncated subset of Q_p.

    kind is one of ball, units, annulus, fullIntegers, integersMinusUnits,
    nonIntegers.  ``order`` is the radius exponent of a ball or the scaling
    exponent j of p^j Z_p^*; ``v_lo``/``v_hi`` bound the valuations of an
    annulus.  nonIntegers keeps only valuations >= v_lo (its truncation).
    """
    kind: str
    prime: int
    center: Fraction = Fraction(0)
    order: int = 0
    v_lo: int = None
    v_hi: int = None

    def __post_init__(self):
        check_prime(self.prime)
        if self.kind not in ("ball", "units", "annulus", "fullIntegers",
                             "integersMinusUnits", "nonIntegers"):
            raise InvalidInput(f"unknown domain kind {self.kind!r}")
        object.__setattr__(self, "center", as_fraction(self.center))

    @classmethod
    def ball(cls, center, k, p):
        return cls("ball", p, center=center, order=k)

    @classmethod
    def units(cls, p, j=0):
        return cls("units", p, order=j)

    @classmethod
    def annulus(cls, v_lo, v_hi, p):
        if v_lo > v_hi:
            raise InvalidInput("empty valuation range")
        return cls("annulus", p, v_lo=v_lo, v_hi=v_hi)

    @classmethod
    def integers(cls, p):
        return cls("fullIntegers", p)

    @classmethod
    def integers_minus_units(cls, p):
        return cls("integersMinusUnits", p)

    @classmethod
    def non_integers(cls, p, v_min=None):
        return cls("nonIntegers", p, v_lo=v_min)

    def shells(self):
        """(valuation j, is_ball) pieces: a ball p^j Z_p or a shell p^j Z_p^*."""
        k = self.kind
        if k == "fullIntegers":
            return [("ball", Fraction(0), 0)]
        if k == "integersMinusUnits":
            return [("ball", Fraction(0), 1)]
        if k == "ball":
            return [("ball", self.center, self.order)]
        if k == "units":
            return [("shell", None, self.order)]
        if k == "annulus":
            return [("shell", None, v) for v in range(self.v_lo, self.v_hi + 1)]
        if self.v_lo is None:
            raise UnsupportedDomain("Q_p minus Z_p needs an explicit truncation v_min")
        if self.v_lo >= 0:
            raise InvalidInput("truncation of Q_p minus Z_p must be negative")
        return [("shell", None, v) for v in range(self.v_lo, 0)]


def measure(d: Domain) -> Fraction:
    p = d.prime
    if d.kind == "nonIntegers":
        raise UnsupportedDomain("Q_p minus Z_p has infinite measure")
    total = Fraction(0)
    for kind, _, j in d.shells():
        if kind == "ball":
            total += Fraction(p) ** (-j)
        else:
            total += Fraction(p) ** (-j) * (1 - Fraction(1, p))
    return total


def cells(d: Domain, depth: int):
    """Representatives and measures of the residue cells of ``d``.

    Balls are cut into cosets of p^depth Z_p.  A shell p^j Z_p^* is cut into
    p^j (u + p^depth Z_p) with u a unit, so depth is relative to the shell.
    """
    p = d.prime
    out = []
    for kind, center, j in d.shells():
        if kind == "ball":
            if j > depth:
                out.append((center, Fraction(p) ** (-j)))
                continue
            step = Fraction(p) ** j
            w = Fraction(1, p ** depth)
            out.extend((center + step * t, w) for t in range(p ** (depth - j)))
        else:
            scale = Fraction(p) ** j
            w = Fraction(p) ** (-j - depth)
            out.extend((scale * t, w) for t in range(1, p ** depth) if t % p)
    return out


def cell_count(d: Domain, depth: int) -> int:
    p = d.prime
    n = 0
    for kind, _, j in d.shells():
        if kind == "ball":
            n += p ** max(depth - j, 0)
        else:
            n += (p - 1) * p ** (depth - 1) if depth >= 1 else 1
    return n


# ------------------------------------------------------- exact phase sums

class PhaseSum:
    """Exact sum of terms coef * q^e * exp(2 pi i f) with f in Q/Z.

    Terms are grouped by the q exponent.  ``reduce`` rewrites each group in
    a basis of the cyclotomic field, so a group is zero exactly when its
    reduced coefficient table is empty.
    """

    def __init__(self, prime: int):
        self.prime = prime
        self.groups = {}

    def add(self, coef, q_exp: int, phase) -> None:
        if coef == 0:
            return
        f = phase.fraction if isinstance(phase, CharValue) else CharValue(phase).fraction
        g = self.groups.setdefault(q_exp, {})
        g[f] = g.get(f, 0) + coef

    def merge(self, other: "PhaseSum") -> None:
        for e, g in other.groups.items():
            for f, c in g.items():
                self.add(c, e, CharValue(f))

    def _reduce_group(self, g):
        p = self.prime
        g = {f: c for f, c in g.items() if c != 0}
        if not g:
            return {}
        top = max(ord_p(f.denominator, p) for f in g)
        for level in range(top, 0, -1):
            mod = p ** level
            sub = p ** (level - 1)
            fibres = set()
            for f in g:
                if f.denominator == mod:
                    fibres.add(f.numerator % sub)
            for a in sorted(fibres):
                last = Fraction(a + (p - 1) * sub, mod)
                c_last = g.get(last, 0)
                if c_last == 0:
                    continue
                for j in range(p):
                    f = Fraction(a + j * sub, mod)
                    g[f] = g.get(f, 0) - c_last
            g = {f: c for f, c in g.items() if c != 0}
        return g

    def reduce(self) -> "PhaseSum":
        out = PhaseSum(self.prime)
        for e, g in self.groups.items():
            r = self._reduce_group(g)
            if r:
                out.groups[e] = r
        return out

    def is_zero(self) -> bool:
        return not self.reduce().groups

    def rational_value(self):
        """Exact value as a rational when every group reduces to phase 0."""
        r = self.reduce()
        out = {}
        for e, g in r.groups.items():
            if set(g) != {Fraction(0)}:
                return None
            out[e] = g[Fraction(0)]
        return out

    def to_complex(self, s, p: int = None) -> complex:
        p = p or self.prime
        total = complex(0.0, 0.0)
        for e, g in sorted(self.reduce().groups.items()):
            mag = math.pow(float(p), -s * e)
            part = complex(0.0, 0.0)
            for f, c in sorted(g.items()):
                part += float(c) * CharValue(f).to_complex()
            total += mag * part
        return total


# ---------------------------------------------------- locally constant fns

@dataclass
class LocallyConstantFn:
    """A step function on Q_p^n.

    ``evaluator`` takes one rational representative per variable and
    returns a CharValue, a term (coef, q_exp, CharValue), a list of terms,
    or None/0 for the zero value.  ``depth`` is the residue resolution at
    which the function is constant.
    """
    depth: int
    evaluator: Callable
    arity: int = 1
    name: str = field(default="f")

    def terms(self, xs):
        v = self.evaluator(*xs)
        if v is None or (not isinstance(v, (CharValue, tuple, list)) and v == 0):
            return []
        if isinstance(v, CharValue):
            return [(Fraction(1), 0, v)]
        if isinstance(v, tuple):
            return [v]
        return list(v)


def integrate_phases(f: LocallyConstantFn, domains, depth: int = None,
                     work_limit: int = DEFAULT_WORK_LIMIT) -> PhaseSum:
    if not domains:
        raise InvalidInput("at least one domain is required")
    p = domains[0].prime
    if any(d.prime != p for d in domains):
        raise InvalidInput("domains use different primes")
    depth = f.depth if depth is None else depth
    if depth < 1:
        raise InvalidInput("depth must be at least 1")
    if len(domains) != f.arity:
        raise InvalidInput(f"function takes {f.arity} variables, got {len(domains)} domains")
    required = 1
    for d in domains:
        required *= cell_count(d, depth)
    if required > work_limit:
        raise ResourceLimit(f"{required} residue tuples exceed the work limit {work_limit}",
                            required=required)
    grids = [cells(d, depth) for d in domains]
    acc = PhaseSum(p)
    for combo in itertools.product(*grids):
        w = Fraction(1)
        for _, m in combo:
            w *= m
        xs = tuple(x for x, _ in combo)
        for coef, q_exp, phase in f.terms(xs):
            acc.add(as_fraction(coef) * w, q_exp, phase)
    return acc


def integrate_numeric(f: LocallyConstantFn, domains, s, depth: int = None,
                      v_min: int = DEFAULT_VMIN,
                      work_limit: int = DEFAULT_WORK_LIMIT) -> complex:
    """Sum f over residue cells of the domains and evaluate at q = p^(-s).

    Any nonIntegers domain without its own truncation is cut at v_min.
    A sum whose exact phases cancel comes back as exactly 0j.
    """
    doms = []
    for d in domains:
        if d.kind == "nonIntegers" and d.v_lo is None:
            d = Domain.non_integers(d.prime, v_min)
        doms.append(d)
    acc = integrate_phases(f, doms, depth, work_limit)
    return acc.to_complex(s, doms[0].prime)


# ----------------------------------------------------- closed-form pieces

def char_integral_Zp(a, p: int) -> int:
    """Integral of psi(a x) over Z_p."""
    return 1 if ord_p(a, p) >= 0 else 0


def unit_char_integral(t, p: int) -> Fraction:
    """Integral of psi(-x t) over Z_p^*."""
    v = ord_p(t, p)
    if v >= 0:
        return 1 - Fraction(1, p)
    if v == -1:
        return Fraction(-1, p)
    return Fraction(0)


def unit_char_integral_by_phases(t, p: int, budget: int = 50_000):
    """Same integral as a residue sum with exact phases.

    Returns None when the sum needs more than ``budget`` residues.
    """
    v = ord_p(t, p)
    level = 0 if v >= 0 else -v
    if level == 0:
        return 1 - Fraction(1, p)
    if p ** level > budget:
        return None
    t = as_fraction(t)
    acc = PhaseSum(p)
    w = Fraction(1, p ** level)
    for u in range(1, p ** level):
        if u % p:
            acc.add(w, 0, e_p(-t * u, p))
    val = acc.rational_value()
    if val is None:
        raise ArithmeticError("unit character sum did not reduce to a rational")
    return val.get(0, Fraction(0))


def _exp_monomial(p, b_plus_one, a):
    """p^(a s + b + 1) = p^(b+1) q^(-a) as a ZetaExpr."""
    return ZetaExpr.monomial(p, Fraction(p) ** b_plus_one, -a)


def tail_sum(a, b, c, p: int) -> ZetaExpr:
    """Integral of |u|^(a s + b) psi(c u) over Q_p - Z_p as a function of q.

    Summing sum_{U<=-1} p^(-U(as+b+1)) times the unit-group integral gives
    (X - X^(n+1))/(1-X) - (X - X^(n+2))/(p(1-X)) with X = p^(as+b+1) and
    n = ord(c), and 0 when c is not integral.
    """
    check_prime(p)
    a, b = as_fraction(a), as_fraction(b)
    if a.denominator != 1 or b.denominator != 1:
        raise InvalidInput("slope and intercept must be integers to stay in Q(q)")
    a, b = int(a), int(b)
    n = ord_p(c, p)
    if n < 0:
        return ZetaExpr.const(p, 0)
    x = _exp_monomial(p, b + 1, a)
    one = ZetaExpr.const(p, 1)
    inv_p = Fraction(1, p)
    if n == INF:
        return (one - inv_p) * x / (one - x)
    return (x - x ** (n + 1)) / (one - x) - inv_p * (x - x ** (n + 2)) / (one - x)


def tail_sum_truncated(a, b, c, p: int, s, v_min: int = -30) -> float:
    """Direct truncation of the shell series behind ``tail_sum``."""
    total = 0.0
    for U in range(v_min, 0):
        w = unit_char_integral(as_fraction(c) * Fraction(p) ** U, p)
        if w:
            total += float(w) * math.pow(p, -U * (a * s + b + 1))
    return total


def unipotent_char_integral(a, p: int) -> ZetaExpr:
    """Integral over Q_p of f_s(n^-(-x)) psi(a x) dx."""
    check_prime(p)
    n = ord_p(a, p)
    if n < 0:
        return ZetaExpr.const(p, 0)
    one = ZetaExpr.const(p, 1)
    base = ZetaExpr.poly(p, {0: 1, 3: -1}) / ZetaExpr.poly(p, {0: 1, 3: -p})
    if n == INF:
        return base
    return base * (one - ZetaExpr.monomial(p, Fraction(p) ** (n + 1), 3 * n + 3))


def unipotent_char_phases(a, p: int, v_min: int = DEFAULT_VMIN, budget: int = 50_000) -> PhaseSum:
    """The same integral as a truncated shell sum with exact phases.

    x in Z_p contributes the integral of psi(a x) over Z_p; the shell
    ord(x) = -m contributes p^m q^(3m) times a unit-group integral.
    Character sums small enough for ``budget`` are done residue by
    residue, larger ones through the unit-group formula.
    """
    check_prime(p)
    a = as_fraction(a)
    acc = PhaseSum(p)
    n = ord_p(a, p)
    level = 0 if n >= 0 else -n
    if p ** level <= budget:
        w = Fraction(1, p ** level)
        for x in range(p ** level):
            acc.add(w, 0, e_p(a * x, p))
    else:
        acc.add(char_integral_Zp(a, p), 0, CharValue(0))
    for m in range(1, -v_min + 1):
        t = -a * Fraction(p) ** (-m)
        val = unit_char_integral_by_phases(t, p, budget)
        if val is None:
            val = unit_char_integral(t, p)
        acc.add(Fraction(p) ** m * val, 3 * m, CharValue(0))
    return acc


def tail_bound(sigma: float, p: int, v_min: int, slope: float = 3.0, intercept: float = -1.0) -> float:
    """Geometric bound on the dropped shells ord < v_min of sum p^(U(slope*sigma+intercept))."""
    r = math.pow(p, -(slope * sigma + intercept))
    if r >= 1:
        return math.inf
    return math.pow(r, -v_min + 1) / (1 - r)
