"""Polynomial engine: arithmetic, ordering, calculus, parsing, serialization."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from poischain import Monomial, Polynomial, lie_poisson_bracket, parse_polynomial
from poischain.poly import (
    dump_json,
    polynomial_from_json,
    polynomial_to_json,
    render_polynomial,
)

from helpers import random_polynomial


def poly_strategy(dim=3, max_degree=3):
    """Random small polynomials via seeded construction (keeps shrinking sane)."""
    return st.integers(min_value=0, max_value=10**6).map(
        lambda s: random_polynomial(random.Random(s), dim, max_degree, n_terms=4)
    )


def test_monomial_construction_sorts_and_drops_zeros():
    m = Monomial(((2, 1), (0, 2), (1, 0)))
    assert m.exps == ((0, 2), (2, 1))
    assert m.degree() == 3
    assert Monomial.one().is_one()
    with pytest.raises(ValueError):
        Monomial(((0, 1), (0, 1)))
    assert Monomial.variable(0) * Monomial.variable(0) == Monomial(((0, 2),))


def test_monomial_graded_lex_order():
    # Degree dominates; ties broken lexicographically on dense exponents.
    x2 = Monomial(((0, 2),))
    xy = Monomial(((0, 1), (1, 1)))
    y = Monomial(((1, 1),))
    keys = [m.sort_key(2) for m in (x2, xy, y)]
    assert keys[0] > keys[1] > keys[2]


def test_leading_monomial_prefers_graded_lex_maximum():
    p = Polynomial.term(3, Fraction(3), [(1, 1), (2, 1)]) + Polynomial.term(
        3, Fraction(1), [(0, 2)]
    )
    assert p.leading_monomial().exps == ((0, 2),)
    assert p.monic().leading_coefficient() == 1


def test_zero_polynomial_degree_is_none():
    assert Polynomial.zero(4).degree is None
    assert Polynomial.one(4).degree == 0
    assert Polynomial.variable(2, 4).degree == 1


def test_known_product():
    x = Polynomial.variable(0, 2)
    y = Polynomial.variable(1, 2)
    # (x + y)^2 = x^2 + 2xy + y^2
    sq = (x + y).power(2)
    expected = x * x + x * y.scale(Fraction(2)) + y * y
    assert sq == expected


def test_partial_derivative():
    p = parse_polynomial("x1^3*x2 + 2*x2", 2)
    assert render_polynomial(p.partial_derivative(0)) == "3*x1^2*x2"
    assert render_polynomial(p.partial_derivative(1)) == "x1^3 + 2"
    assert p.partial_derivative(0).partial_derivative(1) == p.partial_derivative(
        1
    ).partial_derivative(0)


def test_evaluate():
    p = parse_polynomial("x1^2 + 4*x2*x3", 3)
    assert p.evaluate([Fraction(2), Fraction(1), Fraction(3)]) == Fraction(16)
    assert p.evaluate([2.0, 1.0, 3.0]) == pytest.approx(16.0)


def test_homogeneous_components():
    p = parse_polynomial("x1^2 + x1*x2 + x2 + 7", 2)
    comps = p.homogeneous_components()
    assert sorted(comps) == [0, 2] or sorted(comps) == [0, 1, 2]
    total = Polynomial.zero(2)
    for q in comps.values():
        assert q.is_homogeneous()
        total = total + q
    assert total == p


def test_substitute_linear():
    # x -> u+v, y -> u-v turns xy into u^2 - v^2.
    p = Polynomial.variable(0, 2) * Polynomial.variable(1, 2)
    u_plus_v = Polynomial.variable(0, 2) + Polynomial.variable(1, 2)
    u_minus_v = Polynomial.variable(0, 2) - Polynomial.variable(1, 2)
    q = p.substitute_linear([u_plus_v, u_minus_v])
    assert render_polynomial(q) == "x1^2 - x2^2"


def test_shift_coefficients_taylor_identity():
    """The t-expansion of p(x + t*mu) must satisfy (j+1)c_{j+1} = D_mu c_j."""
    rng = random.Random(7)
    mu = (Fraction(1), Fraction(-2), Fraction(3))
    for _ in range(12):
        p = random_polynomial(rng, 3, max_degree=4, n_terms=5)
        coeffs = p.shift_coefficients(mu)
        deg = p.degree if p.degree is not None else 0
        for j in range(deg + 1):
            c_j = coeffs.get(j, Polynomial.zero(3))
            directional = Polynomial.zero(3)
            for i, m in enumerate(mu):
                directional = directional + c_j.partial_derivative(i).scale(m)
            c_next = coeffs.get(j + 1, Polynomial.zero(3))
            assert c_next.scale(Fraction(j + 1)) == directional


def test_shift_at_zero_is_identity():
    p = parse_polynomial("x1^2*x2 + x3", 3)
    coeffs = p.shift_coefficients((Fraction(0),) * 3)
    assert set(coeffs) == {0}
    assert coeffs[0] == p


@settings(max_examples=60)
@given(poly_strategy(), poly_strategy(), poly_strategy())
def test_ring_axioms(p, q, r):
    assert (p + q) == (q + p)
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p - p).is_zero()


@settings(max_examples=60)
@given(poly_strategy())
def test_render_parse_round_trip(p):
    labels = ["h1", "e12", "e21"]
    text = render_polynomial(p, labels)
    assert parse_polynomial(text, 3, labels) == p


@settings(max_examples=60)
@given(poly_strategy())
def test_json_round_trip(p):
    data = polynomial_to_json(p)
    assert polynomial_from_json(data, 3) == p


def test_parse_default_variable_names():
    p = parse_polynomial("2*x1 - x3^2", 3)
    assert render_polynomial(p) == "-x3^2 + 2*x1"


def test_parse_rejects_unknown_symbol():
    with pytest.raises(ValueError):
        parse_polynomial("x1 + bogus", 2)


def test_bracket_of_coordinates_matches_structure(sl2):
    h = Polynomial.variable(0, 3)
    e = Polynomial.variable(1, 3)
    f = Polynomial.variable(2, 3)
    assert lie_poisson_bracket(h, e, sl2) == e.scale(Fraction(2))
    assert lie_poisson_bracket(h, f, sl2) == f.scale(Fraction(-2))
    assert lie_poisson_bracket(e, f, sl2) == h


def test_dump_json_is_sorted_and_newline_terminated():
    out = dump_json({"b": 1, "a": [2, 3]})
    assert out.endswith("\n")
    assert out.index('"a"') < out.index('"b"')
