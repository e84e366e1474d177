import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from conftest import matrix_to_sympy, to_sympy
from oikomplex.errors import MissingAssignmentError, ParseError, WidthMismatchError
from oikomplex.oi_cat import OIMorphism, compose, enumerate_hom
from oikomplex.polyring import (
    ANY_DEGREE, Polynomial, Variable, degree, determinant, evaluate, is_homogeneous, parse_polynomial,
    push_forward,
)

W = 3


def var(i, j, w=W):
    return Polynomial.var(Variable(i, OIMorphism(1, w, (j,))))


x, y, z, t = var(1, 1), var(1, 2), var(2, 1), var(2, 3)
VARS = [Variable(i, OIMorphism(1, W, (j,))) for i in (1, 2) for j in range(1, W + 1)]

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polys(draw, width=W):
    p = Polynomial.zero(width)
    for _ in range(draw(st.integers(0, 4))):
        term = Polynomial.constant(draw(coeffs), width)
        for v in draw(st.lists(st.sampled_from(VARS), max_size=3)):
            term = term * Polynomial.var(v)
        p = p + term
    return p


def test_arithmetic_examples():
    assert (x + y) + (x - y) == x.scale(2)
    assert x * Polynomial.zero(W) == 0
    assert (x + 1) * (x - 1) == x * x - 1
    assert not (x * y - y * x)


def test_no_zero_coefficients_stored():
    p = (x + y) - y
    assert list(p.terms) == [((VARS[0], 1),)]


def test_width_mismatch():
    with pytest.raises(WidthMismatchError):
        x + var(1, 1, w=4)


@given(polys(), polys(), polys())
@settings(max_examples=60)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == 0


@given(polys(), polys(), st.sampled_from(enumerate_hom(W, 5)))
@settings(max_examples=60)
def test_push_forward_is_ring_map(p, q, eps):
    assert push_forward(p + q, eps) == push_forward(p, eps) + push_forward(q, eps)
    assert push_forward(p * q, eps) == push_forward(p, eps) * push_forward(q, eps)
    assert push_forward(p, eps).width == 5


def test_push_forward_examples():
    p = var(1, 1, w=1)
    eps = OIMorphism(1, 4, (3,))
    assert push_forward(p, eps) == var(1, 3, w=4)
    ident = OIMorphism(W, W, (1, 2, 3))
    assert push_forward(x * y + 2, ident) == x * y + 2


def test_push_forward_functorial():
    p = x * y + z.scale(Fraction(1, 2))
    for eps in enumerate_hom(W, 4):
        for rho in enumerate_hom(4, 6):
            assert push_forward(push_forward(p, eps), rho) == push_forward(p, compose(rho, eps))


@given(polys(), polys(), st.lists(st.fractions(-9, 9), min_size=len(VARS), max_size=len(VARS)))
@settings(max_examples=60)
def test_evaluate_is_ring_map(p, q, values):
    pt = dict(zip(VARS, values))
    assert evaluate(p + q, pt) == evaluate(p, pt) + evaluate(q, pt)
    assert evaluate(p * q, pt) == evaluate(p, pt) * evaluate(q, pt)


def test_evaluate_examples():
    pt = {VARS[0]: 2, VARS[1]: 5}
    assert evaluate(x * x + 1, pt) == 5
    assert evaluate(Polynomial.constant(Fraction(7, 3), W), {}) == Fraction(7, 3)
    assert evaluate(x * y - y * x, pt) == 0
    with pytest.raises(MissingAssignmentError):
        evaluate(z, pt)


def test_determinant_2x2_and_edge_cases():
    assert determinant([[x, y], [z, t]]) == x * t - y * z
    assert determinant([]) == 1
    assert determinant([[x, x], [z, z]]) == 0
    with pytest.raises(ValueError):
        determinant([[x, y]])


def test_generic_3x3_determinant_matches_cofactor_oracle():
    M = [[var(i, j) for j in range(1, 4)] for i in (1, 2, 3)]
    d = determinant(M)
    assert len(d.terms) == 6
    assert set(d.terms.values()) == {1, -1}
    assert is_homogeneous(d) and degree(d) == 3
    assert sympy.expand(to_sympy(d) - matrix_to_sympy(M).det(method="berkowitz")) == 0


def test_determinant_commutes_with_evaluation():
    rng = random.Random(7)
    for _ in range(10):
        M = [[sum((var(rng.randint(1, 2), rng.randint(1, 3)).scale(rng.randint(-3, 3)) for _ in range(2)),
                  Polynomial.zero(W)) for _ in range(3)] for _ in range(3)]
        pt = {v: Fraction(rng.randint(-20, 20), rng.randint(1, 5)) for v in VARS}
        evaluated = [[evaluate(a, pt) for a in row] for row in M]
        assert evaluate(determinant(M), pt) == determinant(evaluated)


def test_determinant_multilinear_and_alternating():
    a, b, c = [x, y, z], [y, t, x], [z, z, t]
    cols = lambda *cs: [list(r) for r in zip(*cs)]
    d = determinant
    assert d(cols([p + q.scale(2) for p, q in zip(a, b)], b, c)) == d(cols(a, b, c)) + d(cols(b, b, c)).scale(2)
    assert d(cols(b, a, c)) == -d(cols(a, b, c))
    assert d(cols(a, a, c)) == 0


def test_degree_and_homogeneity():
    assert degree(x * y) == 2 and is_homogeneous(x * y)
    assert not is_homogeneous(x * x + x)
    zero = Polynomial.zero(W)
    assert is_homogeneous(zero) and degree(zero) is ANY_DEGREE
    assert degree(x * y, {VARS[0]: 2, VARS[1]: 3}) == 5


@given(polys())
@settings(max_examples=80)
def test_text_roundtrip(p):
    assert parse_polynomial(str(p), W) == p


def test_text_form():
    p = x.scale(Fraction(3, 2)) - y * y + 1
    assert str(p) == "1 + 3/2*x[1;(1)] - x[1;(2)]^2"
    assert str(Polynomial.zero(W)) == "0"
    with pytest.raises(ParseError):
        parse_polynomial("x[1;(1)] +* 2", W)
