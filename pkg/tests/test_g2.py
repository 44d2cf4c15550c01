from fractions import Fraction
import random
import time

import pytest
from hypothesis import given, settings, strategies as st

from g2zeta import InvalidInput, UnsupportedElement
from g2zeta import g2
from g2zeta.g2 import (IwasawaWitness, Matrix, act_on_form, build, classify_form, cubic_form_coeffs_after,
                       diag2, disc_P, f_circ, lower, m_levi, n_coordinates, n_minus, n_plus, nu,
                       orbit_classify, rho, sigma_to_form, upper, varrho, verify_identities,
                       w0, w1, x_alpha, x_beta)
from g2zeta.symval import ZetaExpr

rat = st.fractions(min_value=-20, max_value=20, max_denominator=9)
I8 = Matrix.identity(8)


def gl2():
    return st.tuples(rat, rat, rat, rat).filter(lambda t: t[0] * t[3] - t[1] * t[2] != 0).map(
        lambda t: [[t[0], t[1]], [t[2], t[3]]])


def test_constructor_examples():
    assert build("n", 0, 0, 0, 0, 0).matrix == I8
    assert build("m", [[1, 0], [0, 1]]).matrix == I8
    assert build("w1").shape == (4, 4)
    with pytest.raises(InvalidInput):
        build("m", [[1, 2], [2, 4]])
    with pytest.raises(InvalidInput):
        build("nope")


def test_elements_are_invertible():
    for el in (x_alpha(3), x_beta(Fraction(1, 2)), n_plus(1, 2, 3, 4, 5), n_minus(1, 2, 3, 4, 5),
               m_levi([[2, 1], [1, 1]]), w0()):
        assert el.matrix.det() != 0
        assert el.matrix * el.inverse().matrix == I8


@settings(max_examples=40, deadline=None)
@given(rat, rat)
def test_root_subgroups(a, b):
    assert x_alpha(a).matrix * x_alpha(b).matrix == x_alpha(a + b).matrix
    assert x_beta(a).matrix * x_beta(b).matrix == x_beta(a + b).matrix


@settings(max_examples=40, deadline=None)
@given(rat, rat, rat, rat, rat)
def test_coordinates_round_trip(x, y, z, u, v):
    n = n_plus(x, y, z, u, v)
    assert n_coordinates(n) == (x, y, z, u, v)
    assert nu(n) == (x, y, u, v)


def test_nu_rejects_other_matrices():
    with pytest.raises(InvalidInput):
        nu(w0())


@settings(max_examples=40, deadline=None)
@given(gl2(), gl2())
def test_levi_and_rho_are_homomorphisms(g, h):
    gh = (Matrix(g) * Matrix(h)).rows
    assert m_levi(g).matrix * m_levi(h).matrix == m_levi(gh).matrix
    assert rho(g) * rho(h) == rho(gh)
    assert varrho(g) * varrho(h) == varrho(gh)


@settings(max_examples=40, deadline=None)
@given(gl2(), rat, rat, rat, rat, rat)
def test_nu_conjugation(g, x, y, z, u, v):
    Minv = m_levi(Matrix(g).inverse().rows).matrix
    conj = Minv * n_plus(x, y, z, u, v).matrix * m_levi(g).matrix
    assert nu(conj) == rho(g).row_vector_times((x, y, u, v))


@settings(max_examples=40, deadline=None)
@given(rat, rat, rat, rat, rat)
def test_weyl_conjugation(x, y, z, u, v):
    W = w0().matrix
    assert W * n_plus(x, y, z, u, v).matrix * W.inverse() == n_minus(-x, y, z, u, -v).matrix


def test_varrho_on_generators():
    t1, t2 = Fraction(3), Fraction(-2, 5)
    D = varrho(diag2(t1, t2))
    assert [D[i, i] for i in range(4)] == [t1 * t1 / t2, t1, t2, t2 * t2 / t1]
    a = Fraction(7, 3)
    assert list(varrho(upper(a)).rows[0]) == [1, a, a * a, a ** 3]
    assert varrho(lower(0)) == Matrix.identity(4)


def test_varrho_with_zero_corner():
    g = [[0, 1], [-1, 3]]
    assert varrho(g) == varrho(upper(0)) * varrho(g)
    c = (1, 2, 3, 4)
    assert act_on_form(c, g) == cubic_form_coeffs_after(g, c)


@settings(max_examples=40, deadline=None)
@given(gl2(), rat, rat, rat, rat)
def test_form_action_and_discriminant_covariance(g, c1, c2, c3, c4):
    c = (c1, c2, c3, c4)
    moved = act_on_form(c, g)
    assert moved == cubic_form_coeffs_after(g, c)
    det = Matrix(g).det()
    assert disc_P(moved) == det * det * disc_P(c)


def test_discriminant_examples():
    assert disc_P((0, 1, 1, 0)) == 1
    assert disc_P((1, 0, 0, 7)) == -27 * 49
    b, c = 3, 5
    assert disc_P((1, 0, b, c)) == -4 * b ** 3 - 27 * c ** 2


def test_classifier_examples():
    assert orbit_classify((0, 1, 1, 0), 5).kind == "threeDistinctLinear"
    assert orbit_classify((1, 0, 1, 2), 5).kind == "irreducibleCubic"
    lab = orbit_classify((1, 0, 0, 5), 5)
    assert lab.kind == "repeatedRoot" and lab.degenerate
    assert lab.discriminant_valuation == 2
    assert lab.to_json()["degenerate"] is True
    with pytest.raises(InvalidInput):
        orbit_classify((0, 0, 0, 0), 5)
    with pytest.raises(InvalidInput):
        orbit_classify((1, 0, 0, 1), 5, form="other")


def test_sigma_form_reading():
    assert sigma_to_form((1, 2, 3, 4)) == (4, 3, 2, -1)


def test_classifier_clears_content():
    assert classify_form((5, 0, 5, 10), 5) == classify_form((1, 0, 1, 2), 5)
    assert classify_form((Fraction(1, 5), 0, 0, 0), 5).degenerate


@pytest.mark.parametrize("p", [5, 11])
def test_classifier_counts_match_kinds(p):
    seen = set()
    rng = random.Random(p)
    for _ in range(300):
        c = [rng.randrange(p) for _ in range(4)]
        if not any(c):
            continue
        lab = classify_form(c, p)
        seen.add(lab.kind)
        if not lab.degenerate:
            assert lab.projective_roots == {"threeDistinctLinear": 3,
                                            "linearTimesIrreducibleQuadratic": 1,
                                            "irreducibleCubic": 0}[lab.kind]
    assert seen == set(g2.ORBIT_KINDS)


@pytest.mark.parametrize("p", [5, 11])
def test_classifier_is_orbit_invariant(p):
    rng = random.Random(100 + p)
    for _ in range(150):
        c = [rng.randint(-40, 40) for _ in range(4)]
        if not any(c):
            continue
        while True:
            g = [[rng.randint(-20, 20) for _ in range(2)] for _ in range(2)]
            if (g[0][0] * g[1][1] - g[0][1] * g[1][0]) % p:
                break
        assert classify_form(act_on_form(c, g), p) .kind == classify_form(c, p).kind
        sigma_moved = rho(g).transpose().row_vector_times(c)
        assert orbit_classify(sigma_moved, p).kind == orbit_classify(c, p).kind


def test_spherical_section_on_lower_unipotents():
    p = 5
    assert f_circ(n_minus(-3, 0, 0, 0, 0), p) == ZetaExpr.const(p, 1)
    assert f_circ(n_minus(Fraction(-1, 25), 0, 0, 0, 0), p) == ZetaExpr.monomial(p, 1, 6)


def test_spherical_section_with_witness():
    p = 5
    g = (p, 0, 0, 1)
    k = Matrix.identity(8)
    el = m_levi([[p, 0], [0, 1]])
    wit = IwasawaWitness(g, (0, 0, 0, 0, 0), k)
    assert f_circ(el, p, wit) == ZetaExpr.monomial(p, 1, 1)
    el2 = n_plus(1, 2, 0, 0, 3).matrix * m_levi([[1, 0], [0, Fraction(1, 25)]]).matrix * x_alpha(4).matrix
    wit2 = IwasawaWitness((1, 0, 0, Fraction(1, 25)), (1, 2, 0, 0, 3), x_alpha(4).matrix)
    assert f_circ(el2, p, wit2) == ZetaExpr.monomial(p, 1, -2)


def test_spherical_section_rejects_bad_witness_and_unknown_elements():
    p = 5
    el = m_levi([[p, 0], [0, 1]])
    with pytest.raises(UnsupportedElement):
        f_circ(el, p, IwasawaWitness((1, 0, 0, 1), (0, 0, 0, 0, 0), Matrix.identity(8)))
    non_integral = x_alpha(Fraction(1, 5)).matrix
    wit = IwasawaWitness((1, 0, 0, 1), (0, 0, 0, 0, 0), non_integral)
    with pytest.raises(UnsupportedElement):
        f_circ(non_integral, p, wit)
    with pytest.raises(UnsupportedElement):
        f_circ(w0(), p)


def test_identity_suite():
    t0 = time.perf_counter()
    rep = verify_identities(seed=7, trials=100)
    assert time.perf_counter() - t0 < 5
    assert rep["passed"]
    assert set(rep["identities"]) >= {"w0_conjugation", "long_root_commutation", "nu_conjugation",
                                      "rho_from_varrho_generators", "P_covariance", "m_homomorphism",
                                      "center_commutator"}
    assert all(v["passed"] == 100 for v in rep["identities"].values())


def test_identity_suite_is_seeded():
    assert verify_identities(3, 5) == verify_identities(3, 5)


def test_w1_matches_sigma_reading():
    assert w1().row_vector_times((1, 0, 0, 0)) == (0, 0, 0, -1)


def test_pretty_printer():
    text = x_alpha(Fraction(1, 2)).matrix.pretty()
    assert "1/2" in text and len(text.splitlines()) == 8
