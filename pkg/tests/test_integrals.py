import json

import pytest

from g2zeta import (InvalidInput, PreconditionError, ReducibleCubic, ResourceLimit, SmallPrime,
                    UnsupportedRegime, WrongResidueClass)
from g2zeta.counting import count_cubic_surface, irreducible_unit_pairs
from g2zeta.integrals import (CaseId, LocalParams, aggregate, case11_general, closed_form,
                              euler_reference_values, evaluate_all, evaluate_case, numeric_case,
                              target, theorem_check)
from g2zeta.symval import ZetaExpr, ze_eval

P5 = LocalParams(5, 1, 2)


def zq(p, terms):
    return ZetaExpr.poly(p, terms)


def test_case_ids():
    assert len(CaseId.all()) == 16
    assert CaseId.parse(1).signs == "++++"
    assert CaseId.parse(16).signs == "----"
    assert CaseId.parse("−+++").number == 9
    assert CaseId.parse("-+-+").number == 11
    for bad in ("+++", "++x+", 0, 17):
        with pytest.raises(InvalidInput):
            CaseId.parse(bad)


def test_parameter_validation():
    with pytest.raises(SmallPrime):
        LocalParams(3, 1, 2)
    with pytest.raises(WrongResidueClass):
        LocalParams(7, 1, 2)
    with pytest.raises(PreconditionError):
        LocalParams(5, 1, 0)
    with pytest.raises(ReducibleCubic):
        LocalParams(5, 1, 1)  # -u^3 + u + 1 vanishes at u = 2
    with pytest.raises(InvalidInput):
        LocalParams(5, 1.0, 2)


def test_closed_form_examples():
    base = zq(5, {0: 1, 3: -1})
    assert closed_form("++++", P5) == base
    assert closed_form("+++-", P5).is_zero()
    assert closed_form("-+++", P5) == -base * zq(5, {3: 5, 6: 25})
    assert closed_form("+-++", P5) == base * ZetaExpr.monomial(5, 25, 9)


def test_closed_form_regimes():
    with pytest.raises(UnsupportedRegime):
        closed_form("---+", LocalParams(5, 0, 2, theorem=False))
    with pytest.raises(ReducibleCubic):
        closed_form("-+-+", LocalParams(5, 1, 1, theorem=False))
    with pytest.raises(InvalidInput):
        closed_form("-+-+", P5, assume_conjecture=False)


def test_aggregate_examples():
    agg = aggregate(P5)
    base = zq(5, {0: 1, 3: -1})
    assert agg.plus == base * zq(5, {0: 1, 9: 25})
    assert agg.minus == base * zq(5, {3: -5, 6: -25, 9: 125 - 25})
    assert agg.total == target(5)
    json.dumps(agg.to_json())


@pytest.mark.parametrize("p", [5, 11, 17, 23])
def test_theorem_holds(p):
    for b, c in irreducible_unit_pairs(p)[:3]:
        rep = theorem_check(LocalParams(p, b, c), measure=True)
        assert rep.holds and rep.euler_factor_consistent and rep.passed
        assert rep.measured_n_minus_one == p * p - 1
        assert rep.conjecture_free_holds
        json.dumps(rep.to_json())


def test_theorem_preconditions():
    with pytest.raises(PreconditionError):
        theorem_check(LocalParams(5, 1, 0))


def test_case11_general_form():
    p = 5
    conj = closed_form("-+-+", P5)
    assert case11_general(p, p * p - 1) == conj
    for n in (0, 5, 23, 25, 30):
        assert (case11_general(p, n) == conj) == (n == p * p - 1)


def test_conjecture_free_aggregate_uses_measured_count():
    n1 = count_cubic_surface(1, 2, 5, 1)
    assert aggregate(P5, assume_conjecture=False, n_minus_one=n1).total == target(5)
    assert aggregate(P5, assume_conjecture=False, n_minus_one=n1 + 1).total != target(5)


def test_euler_reference_values():
    p = 11
    num = target(p) * zq(p, {0: 1, 9: -p ** 3})
    assert euler_reference_values("irreducibleCubic", p) == target(p)
    assert euler_reference_values("split", p) == num / zq(p, {0: 1, 3: -p}) ** 3
    assert euler_reference_values("quadratic", p) == num / (zq(p, {0: 1, 3: -p}) * zq(p, {0: 1, 6: -p * p}))
    with pytest.raises(InvalidInput):
        euler_reference_values("quartic", p)


def test_numeric_examples():
    val = numeric_case("++++", P5, 1.2)
    assert abs(val - ze_eval(zq(5, {0: 1, 3: -1}), 1.2)) < 1e-10
    assert numeric_case("+++-", P5, 1.2) == 0j
    val = numeric_case("+-++", P5, 1.2, depth=4, vmin=-10)
    assert abs(val - ze_eval(closed_form("+-++", P5), 1.2)) < 1e-8


def test_numeric_details_and_exact_zero():
    ev = numeric_case("-++-", P5, 1.5, details=True)
    assert ev.exact_zero and ev.value == 0j
    ev = numeric_case("-+++", P5, 1.5, details=True)
    assert not ev.exact_zero


@pytest.mark.parametrize("case", ["++++", "+-++", "-+++", "-+-+"])
def test_numeric_matches_closed_form(case):
    for p, b, c in ((5, 1, 2), (11,) + irreducible_unit_pairs(11)[0]):
        params = LocalParams(p, b, c)
        got = numeric_case(case, params, 1.3)
        assert abs(got - ze_eval(closed_form(case, params), 1.3)) < 1e-6


def test_numeric_input_checks():
    with pytest.raises(InvalidInput):
        numeric_case("++++", P5, 1.0)
    with pytest.raises(InvalidInput):
        numeric_case("++++", P5, complex(1.2, 1.0))
    with pytest.raises(InvalidInput):
        numeric_case("++++", P5, 1.2, depth=0)
    with pytest.raises(InvalidInput):
        numeric_case("++++", P5, 1.2, vmin=2)
    with pytest.raises(ResourceLimit) as info:
        numeric_case("+-++", P5, 1.2, work_limit=10)
    assert info.value.required > 10


def test_case_result_json():
    row = evaluate_case("-+++", P5, s=1.2).to_json()
    assert set(row) == {"case", "prime", "b", "c", "closed_form_string", "numeric",
                        "agreement", "conjecture_assumed"}
    assert set(row["numeric"]) == {"s", "depth", "vmin", "value_re", "value_im"}
    assert row["agreement"] < 1e-8
    json.dumps(row)
    assert evaluate_case("-+-+", P5).to_json()["conjecture_assumed"] is True
    assert evaluate_case("++++", P5).to_json()["numeric"] is None


def test_evaluate_all():
    rows = evaluate_all(P5, s=1.2)
    assert [r["case"] for r in rows] == [c.signs for c in CaseId.all()]
    assert all(r["agreement"] < 1e-6 for r in rows)
