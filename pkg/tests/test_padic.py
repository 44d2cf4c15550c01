from fractions import Fraction
import math

import pytest
from hypothesis import given, strategies as st

from g2zeta import InvalidInput
from g2zeta.padic import (CharValue, PadicScalar, abs_p, e_p, expand, fractional_part,
                          ord_p, unit_part)

PRIMES = st.sampled_from([2, 3, 5, 7, 11, 13])
NONZERO = st.fractions(max_denominator=10 ** 6).filter(lambda x: x != 0)


def test_valuation_examples():
    assert ord_p(50, 5) == 2
    assert ord_p(Fraction(3, 25), 5) == -2
    assert ord_p(7, 5) == 0
    assert ord_p(0, 5) == math.inf
    assert abs_p(Fraction(1, 125), 5) == 125
    assert abs_p(0, 5) == 0


def test_rejects_bad_input():
    with pytest.raises(InvalidInput):
        ord_p(1.5, 5)
    with pytest.raises(InvalidInput):
        ord_p(3, 4)
    with pytest.raises(InvalidInput):
        abs_p("x", 5)


@given(NONZERO, NONZERO, PRIMES)
def test_valuation_is_additive_on_products(x, y, p):
    assert ord_p(x * y, p) == ord_p(x, p) + ord_p(y, p)
    assert abs_p(x * y, p) == abs_p(x, p) * abs_p(y, p)


@given(NONZERO, NONZERO, PRIMES)
def test_ultrametric_inequality(x, y, p):
    if x + y != 0:
        assert ord_p(x + y, p) >= min(ord_p(x, p), ord_p(y, p))
        assert abs_p(x + y, p) <= max(abs_p(x, p), abs_p(y, p))


@given(NONZERO, PRIMES)
def test_unit_part_has_valuation_zero(x, p):
    assert ord_p(unit_part(x, p), p) == 0


@given(st.fractions(max_denominator=10 ** 5), PRIMES)
def test_fractional_part_leaves_integer(x, p):
    f = fractional_part(x, p)
    assert 0 <= f < 1
    assert ord_p(x - f, p) >= 0


@given(st.fractions(max_denominator=10 ** 4), st.fractions(max_denominator=10 ** 4), PRIMES)
def test_character_is_additive(x, y, p):
    assert e_p(x + y, p) == e_p(x, p) + e_p(y, p)


def test_character_values():
    assert e_p(7, 5).is_trivial()
    assert e_p(Fraction(1, 5), 5) == CharValue(Fraction(4, 5))
    z = e_p(Fraction(1, 4), 2).to_complex()
    assert abs(z - complex(0, -1)) < 1e-12


@given(NONZERO, PRIMES, st.integers(1, 8))
def test_expansion_reconstructs_value(x, p, k):
    ex = expand(x, p, k)
    assert ex.start_order == ord_p(x, p)
    assert all(0 <= d < p for d in ex.digits)
    assert ord_p(x - ex.value(), p) >= ex.start_order + len(ex.digits)


def test_scalar_arithmetic():
    a = PadicScalar(Fraction(2, 5), 5)
    b = PadicScalar(10, 5)
    assert (a * b).valuation == 0
    assert (a + b).norm == 5
    with pytest.raises(InvalidInput):
        a + PadicScalar(1, 7)
    with pytest.raises(ZeroDivisionError):
        a / 0
