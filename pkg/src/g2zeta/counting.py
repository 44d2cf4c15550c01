"""Counting solutions of polynomial congruences mod p^k.

Generic exhaustive counting, Hensel-lifted counting with a gradient
certificate, cubic root counts, the norm-form count w^2+3wy+3y^2 = b and
the sweep over (b, c) pairs for the cubic surface count

    -u^3 + b u + c = 3 u y r + y^3 r^2 - r,  r a unit.
"""

import itertools
import os
import random
import time
from dataclasses import dataclass, field
from functools import partial
from multiprocessing import Pool

import numpy as np

from .errors import InvalidInput, PreconditionError, ResourceLimit, SingularPoint, WrongResidueClass
from .padic import check_prime

DEFAULT_WORK_LIMIT = 20_000_000
FULL = "full"
UNITS = "units"


def default_workers() -> int:
    env = os.environ.get("G2ZETA_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InvalidInput(f"G2ZETA_WORKERS={env!r} is not an integer")
    return os.cpu_count() or 1


def require_5_mod_6(p: int) -> None:
    check_prime(p)
    if p % 6 != 5:
        raise WrongResidueClass(f"p = {p} is not 5 mod 6")


# ------------------------------------------------------------ polynomials

@dataclass(frozen=True)
class CongruenceProblem:
    """poly(x) = 0 mod p^k over a product of residue domains.

    ``terms`` maps exponent tuples to integer coefficients; ``domains``
    holds FULL or UNITS per variable.
    """
    terms: tuple
    variables: tuple
    prime: int
    exponent: int
    domains: tuple

    def __post_init__(self):
        check_prime(self.prime)
        if not isinstance(self.exponent, int) or self.exponent < 1:
            raise InvalidInput("exponent k must be a positive integer")
        if len(self.domains) != len(self.variables):
            raise InvalidInput("one domain flag per variable is required")
        for d in self.domains:
            if d not in (FULL, UNITS):
                raise InvalidInput(f"unknown domain flag {d!r}")
        clean = {}
        pairs = self.terms.items() if isinstance(self.terms, dict) else self.terms
        for mono, c in pairs:
            mono = tuple(int(e) for e in mono)
            if len(mono) != len(self.variables) or min(mono, default=0) < 0:
                raise InvalidInput(f"bad monomial {mono}")
            if c:
                clean[mono] = clean.get(mono, 0) + int(c)
        object.__setattr__(self, "terms", tuple(sorted((m, c) for m, c in clean.items() if c)))

    @classmethod
    def make(cls, terms: dict, variables, p, k, domains=None):
        variables = tuple(variables)
        domains = tuple(domains) if domains else (FULL,) * len(variables)
        return cls(tuple(terms.items()), variables, p, k, domains)

    @property
    def arity(self):
        return len(self.variables)

    @property
    def modulus(self):
        return self.prime ** self.exponent

    def at_level(self, k: int) -> "CongruenceProblem":
        return CongruenceProblem(self.terms, self.variables, self.prime, k, self.domains)

    def value(self, point) -> int:
        total = 0
        for mono, c in self.terms:
            t = c
            for x, e in zip(point, mono):
                if e:
                    t *= x ** e
            total += t
        return total

    def gradient(self, point):
        out = []
        for i in range(self.arity):
            g = 0
            for mono, c in self.terms:
                e = mono[i]
                if e == 0:
                    continue
                t = c * e
                for j, (x, f) in enumerate(zip(point, mono)):
                    f = f - 1 if j == i else f
                    if f:
                        t *= x ** f
                g += t
            out.append(g)
        return tuple(out)

    def residues(self, i: int, k: int = None):
        n = self.prime ** (self.exponent if k is None else k)
        if self.domains[i] == UNITS:
            return [x for x in range(n) if x % self.prime]
        return list(range(n))

    def tuple_count(self) -> int:
        total = 1
        for i in range(self.arity):
            n = self.modulus
            total *= n - n // self.prime if self.domains[i] == UNITS else n
        return total

    def polynomial_string(self) -> str:
        parts = []
        for mono, c in sorted(self.terms, key=lambda mc: (-sum(mc[0]), mc[0])):
            factors = []
            for v, e in zip(self.variables, mono):
                if e == 1:
                    factors.append(v)
                elif e > 1:
                    factors.append(f"{v}^{e}")
            body = "*".join(factors)
            a = abs(c)
            if not body:
                body = str(a)
            elif a != 1:
                body = f"{a}*{body}"
            parts.append(("-" if c < 0 else "+", body))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def describe(self) -> dict:
        return {"polynomial": self.polynomial_string(),
                "variables": list(self.variables),
                "domains": dict(zip(self.variables, self.domains))}


def cubic_surface_problem(b: int, c: int, p: int, k: int = 1) -> CongruenceProblem:
    """g(u) - (3uyr + y^3 r^2 - r) in variables (r, y, u), r a unit."""
    terms = {
        (0, 0, 3): -1, (0, 0, 1): b, (0, 0, 0): c,
        (1, 1, 1): -3, (2, 3, 0): -1, (1, 0, 0): 1,
    }
    return CongruenceProblem.make(terms, ("r", "y", "u"), p, k, (UNITS, FULL, FULL))


def norm_form_problem(b: int, p: int, k: int = 1) -> CongruenceProblem:
    """w^2 + 3wy + 3y^2 - b in variables (w, y)."""
    terms = {(2, 0): 1, (1, 1): 3, (0, 2): 3, (0, 0): -b}
    return CongruenceProblem.make(terms, ("w", "y"), p, k)


# ----------------------------------------------------------- brute force

GRID_CELLS = 4_000_000


def _axis_powers(values, top, n):
    out = [np.ones_like(values)]
    for _ in range(top):
        out.append(out[-1] * values % n)
    return out


def _count_slice(prob: CongruenceProblem, first_values):
    """Exhaustive count over the given first coordinates.

    The trailing variables (one, or two when the grid is small enough)
    are swept as numpy arrays; the leading ones are looped.
    """
    n = prob.modulus
    m = prob.arity
    width = 1
    if m >= 3 and len(prob.residues(m - 1)) * len(prob.residues(m - 2)) <= GRID_CELLS:
        width = 2
    if m == 1:
        width = 1
    tail = [np.array(prob.residues(i), dtype=np.int64) for i in range(m - width, m)]
    if width == 2:
        tail = [tail[0][:, None], tail[1][None, :]]
    tops = [max((mono[i] for mono, _ in prob.terms), default=0) for i in range(m - width, m)]
    pows = [_axis_powers(t, top, n) for t, top in zip(tail, tops)]
    monos = {}
    for mono, _ in prob.terms:
        key = mono[m - width:]
        if key not in monos:
            grid = np.ones((1,) * width, dtype=np.int64)
            for axis, e in enumerate(key):
                grid = grid * pows[axis][e] % n
            monos[key] = grid
    lazy = n * n * (len(prob.terms) + 1) < 2 ** 62
    shape = np.broadcast_shapes(*(t.shape for t in tail))
    heads = [first_values] + [prob.residues(i) for i in range(1, m - width)]
    if m == width:
        heads = []
    count = 0
    for head in itertools.product(*heads):
        coef = {}
        for mono, c in prob.terms:
            t = c
            for x, e in zip(head, mono):
                if e:
                    t *= pow(x, e, n)
            key = mono[m - width:]
            coef[key] = (coef.get(key, 0) + t) % n
        # each product is below n^2 and there are few terms, so one
        # reduction at the end stays inside int64
        vals = np.zeros(shape, dtype=np.int64)
        for key, c in coef.items():
            if c:
                vals += c * monos[key]
                if not lazy:
                    vals %= n
        vals %= n
        count += int(np.count_nonzero(vals == 0))
    return count


def count_brute(prob: CongruenceProblem, work_limit: int = DEFAULT_WORK_LIMIT,
                workers: int = 1) -> int:
    """Number of residue tuples in the domains with poly = 0 mod p^k."""
    required = prob.tuple_count()
    if required > work_limit:
        raise ResourceLimit(f"{required} tuples exceed the work limit {work_limit}", required=required)
    first = prob.residues(0)
    if prob.arity <= 2 or workers <= 1 or len(first) < 2 * workers:
        return _count_slice(prob, first)
    chunks = [first[i::workers] for i in range(workers)]
    with Pool(workers) as pool:
        return sum(pool.map(partial(_count_slice, prob), chunks))


def solutions(prob: CongruenceProblem, work_limit: int = DEFAULT_WORK_LIMIT):
    required = prob.tuple_count()
    if required > work_limit:
        raise ResourceLimit(f"{required} tuples exceed the work limit {work_limit}", required=required)
    n = prob.modulus
    grids = [prob.residues(i) for i in range(prob.arity)]
    return [pt for pt in itertools.product(*grids) if prob.value(pt) % n == 0]


# -------------------------------------------------------- Hensel lifting

@dataclass(frozen=True)
class GradientCertificate:
    prime: int
    base_solutions: int
    ok: bool
    bad_point: tuple = None


def gradient_certificate(prob: CongruenceProblem) -> GradientCertificate:
    """Check that the gradient is nonzero mod p at every solution mod p."""
    base = prob.at_level(1)
    p = prob.prime
    sols = solutions(base)
    for pt in sols:
        if all(g % p == 0 for g in base.gradient(pt)):
            return GradientCertificate(p, len(sols), False, pt)
    return GradientCertificate(p, len(sols), True)


def hensel_count(prob: CongruenceProblem, base_count: int = None,
                 certificate: GradientCertificate = None) -> int:
    """Count at level k from the level-1 count, base * p^((n-1)(k-1)) for n variables."""
    if base_count is not None and base_count == 0:
        return 0
    if certificate is None:
        certificate = gradient_certificate(prob)
    if certificate.prime != prob.prime:
        raise InvalidInput("certificate was computed at a different prime")
    if not certificate.ok:
        raise SingularPoint(f"gradient vanishes mod {prob.prime} at {certificate.bad_point}",
                            point=certificate.bad_point)
    if base_count is None:
        base_count = certificate.base_solutions
    return base_count * prob.prime ** ((prob.arity - 1) * (prob.exponent - 1))


# ------------------------------------------------------------ cubic roots

class RootCount(int):
    """Number of distinct roots, flagged when the discriminant vanishes mod p."""

    def __new__(cls, value, degenerate=False, roots=()):
        obj = super().__new__(cls, value)
        obj.degenerate = degenerate
        obj.roots = tuple(roots)
        return obj


def cubic_discriminant(b: int, c: int) -> int:
    """Discriminant of -u^3 + b u + c, i.e. 4b^3 - 27c^2."""
    return 4 * b ** 3 - 27 * c ** 2


def cubic_root_count(b: int, c: int, p: int) -> RootCount:
    check_prime(p)
    roots = [u for u in range(p) if (-u ** 3 + b * u + c) % p == 0]
    return RootCount(len(roots), cubic_discriminant(b, c) % p == 0, roots)


def is_irreducible_cubic(b: int, c: int, p: int) -> bool:
    return cubic_root_count(b, c, p) == 0


def irreducible_unit_pairs(p: int):
    out = []
    for b in range(1, p):
        cubes = [(-u ** 3 + b * u) % p for u in range(p)]
        hit = set((-v) % p for v in cubes)
        out.extend((b, c) for c in range(1, p) if c not in hit)
    return out


# -------------------------------------------------------------- reports

@dataclass
class CountReport:
    problem: CongruenceProblem
    count: int
    method: str
    predicted: int = None
    predicted_label: str = None
    elapsed_ms: float = None

    def to_json(self) -> dict:
        d = self.problem.describe()
        return {
            "prime": self.problem.prime,
            "exponent": self.problem.exponent,
            "polynomial": d["polynomial"],
            "domains": d["domains"],
            "count": self.count,
            "predicted": self.predicted,
            "predicted_label": self.predicted_label,
            "method": self.method,
            "elapsed_ms": self.elapsed_ms,
        }

    @property
    def matches(self) -> bool:
        return self.predicted is None or self.predicted == self.count


# ---------------------------------------------------------- norm form

def norm_form_distribution(p: int, k: int) -> np.ndarray:
    """hist[v] = #{(w, y) mod p^k : w^2 + 3wy + 3y^2 = v}, every pair visited."""
    n = p ** k
    y = np.arange(n, dtype=np.int64)
    base = (3 * y * y) % n
    hist = np.zeros(n, dtype=np.int64)
    for w in range(n):
        vals = (base + 3 * w * y + w * w) % n
        hist += np.bincount(vals, minlength=n)
    return hist


def psi1_count(b: int, p: int, k: int) -> CountReport:
    require_5_mod_6(p)
    if b % p == 0:
        raise PreconditionError(f"b = {b} is not a unit mod {p}")
    if k < 1:
        raise InvalidInput("k must be at least 1")
    t0 = time.perf_counter()
    n = p ** k
    hist = norm_form_distribution(p, k)
    count = int(hist[b % n])
    return CountReport(norm_form_problem(b, p, k), count, "bruteForce",
                       predicted=(p + 1) * p ** (k - 1), predicted_label="(p+1)p^(k-1)",
                       elapsed_ms=(time.perf_counter() - t0) * 1000)


def psi1_all_units(p: int, k: int):
    """{b: count} for every unit b mod p^k from a single exhaustive pass."""
    require_5_mod_6(p)
    n = p ** k
    hist = norm_form_distribution(p, k)
    return {b: int(hist[b]) for b in range(n) if b % p}


# ------------------------------------------------------ cubic surface

def count_cubic_surface(b: int, c: int, p: int, k: int = 1) -> int:
    """#{(r, y, u) : r unit, g(u) = 3uyr + y^3 r^2 - r mod p^k}.

    Every tuple is accounted for: with t = y r the equation reads
    g(u) - 3 t u = t^3 r^(-1) - r, so for each t a histogram of the left
    side over u is matched against the right side over all units r.
    """
    check_prime(p)
    n = p ** k
    u = np.arange(n, dtype=np.int64)
    g = (-(u * u % n) * u + b * u + c) % n
    r = np.array([x for x in range(n) if x % p], dtype=np.int64)
    rinv = np.array([pow(int(x), -1, n) for x in r], dtype=np.int64)
    total = 0
    for t in range(n):
        hist = np.bincount((g - 3 * t * u) % n, minlength=n)
        t3 = pow(t, 3, n)
        rhs = (t3 * rinv - r) % n
        total += int(hist[rhs].sum())
    return total


def _pair_count(args):
    b, c, p = args
    return b, c, count_cubic_surface(b, c, p, 1)


@dataclass
class ConjectureReport:
    prime: int
    mode: str
    seed: int
    expected: int
    irreducible_pairs: int
    pairs_tested: int
    counts: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.pairs_tested > 0 and not self.counterexamples

    def to_json(self) -> dict:
        return {
            "prime": self.prime,
            "mode": self.mode,
            "seed": self.seed,
            "expected": self.expected,
            "irreducible_pairs": self.irreducible_pairs,
            "pairs_tested": self.pairs_tested,
            "distinct_counts": sorted(set(self.counts.values())),
            "counterexamples": [{"b": b, "c": c, "count": n} for b, c, n in self.counterexamples],
            "warnings": list(self.warnings),
            "passed": self.passed,
        }


def verify_conjecture(p: int, pairs="all", seed: int = 0, workers: int = 1,
                      expected: int = None) -> ConjectureReport:
    """Count the cubic surface mod p for irreducible unit pairs (b, c).

    ``pairs`` is "all" or a sample size; samples are drawn from the sorted
    list of irreducible pairs with ``random.Random(seed)``.
    """
    require_5_mod_6(p)
    if expected is None:
        expected = p * p - 1
    candidates = irreducible_unit_pairs(p)
    if pairs == "all":
        chosen, mode, seed_used = candidates, "all", None
    else:
        n = int(pairs)
        if n < 1:
            raise InvalidInput("sample size must be positive")
        rng = random.Random(seed)
        chosen = sorted(rng.sample(candidates, min(n, len(candidates))))
        mode, seed_used = f"sample({n})", seed
    report = ConjectureReport(p, mode, seed_used, expected, len(candidates), len(chosen))
    if not chosen:
        report.warnings.append(f"no irreducible unit pair exists mod {p}")
        return report
    jobs = [(b, c, p) for b, c in chosen]
    if workers > 1 and len(jobs) >= 4 * workers:
        with Pool(workers) as pool:
            results = pool.map(_pair_count, jobs, chunksize=max(1, len(jobs) // (4 * workers)))
    else:
        results = [_pair_count(j) for j in jobs]
    for b, c, n in sorted(results):
        report.counts[(b, c)] = n
        if n != expected:
            report.counterexamples.append((b, c, n))
    return report
