import random

import pytest
import sympy
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from arrlab.errors import FieldMismatchError, ParameterError
from arrlab.exactfield import RATIONAL, FieldDescriptor
from arrlab.polyring import (
    HomogPoly,
    LinearForm,
    divide_exact,
    evaluate,
    g_range,
    monomial_basis,
    multiply,
    partial_derivative,
    product,
)

x, y, z = (HomogPoly.var(v) for v in "xyz")
X, Y, Z = sympy.symbols("x y z")


def to_sympy(p):
    return sum(sympy.Rational(int(c.numerator), int(c.denominator)) * X**a * Y**b * Z**e for (a, b, e), c in p.items())


def test_multiply_examples():
    assert multiply(x, y) == x * y
    assert multiply(x - y, x + y) == x**2 - y**2
    lhs = multiply(g_range(1, 1, "x", "y"), g_range(2, 2, "x", "z"))
    assert lhs == x**2 - x * y - 2 * (x * z) + 2 * (y * z)


def test_partial_derivative_examples():
    assert partial_derivative(x**2 * y, "x") == 2 * (x * y)
    assert partial_derivative(x * y * z, "z") == x * y
    assert partial_derivative(x**3 - 3 * (x * y * z), "y") == -3 * (x * z)
    assert partial_derivative(HomogPoly.constant(5), "x").is_zero()


def test_g_range():
    assert g_range(1, 1, "x", "y") == x - y
    assert g_range(2, 3, "x", "z") == x**2 - 5 * (x * z) + 6 * z**2
    assert g_range(4, 4, "y", "z") == y - 4 * z
    with pytest.raises(ParameterError):
        g_range(3, 2)


def test_monomial_basis():
    assert monomial_basis(0) == ((0, 0, 0),)
    assert monomial_basis(1) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    for m in range(8):
        assert len(monomial_basis(m)) == (m + 1) * (m + 2) // 2
    # graded lex, x > y > z
    assert monomial_basis(2)[:3] == ((2, 0, 0), (1, 1, 0), (1, 0, 1))


def test_evaluate():
    assert evaluate(x - y, (1, 1, 1)) == 0
    assert evaluate(x - 2 * y + z, (1, 1, 1)) == 0
    assert evaluate(x * y * z, (1, 1, 0)) == 0
    with pytest.raises(ParameterError):
        evaluate(x, (0, 0, 0))


def test_field_mismatch():
    F = FieldDescriptor.cyclotomic(3)
    with pytest.raises(FieldMismatchError):
        multiply(x, HomogPoly.var("x", F))


def test_divide_exact():
    f = (x - y) * (x - 2 * z) * z
    assert divide_exact(f, x - y) == (x - 2 * z) * z
    assert divide_exact(f, x + y) is None


def test_linear_form_normalization():
    assert LinearForm(2, 4, 6) == LinearForm(1, 2, 3)
    assert LinearForm(0, -3, 3).coeffs == (0, 1, -1)
    with pytest.raises(ParameterError):
        LinearForm(0, 0, 0)


# randomized identities

coef = st.integers(-4, 4)


@st.composite
def polys(draw, max_deg=4):
    m = draw(st.integers(0, max_deg))
    cs = draw(st.lists(coef, min_size=len(monomial_basis(m)), max_size=len(monomial_basis(m))))
    return HomogPoly(RATIONAL, m, {mono: mpq(c) for mono, c in zip(monomial_basis(m), cs) if c})


@given(polys(), polys())
def test_leibniz(p, q):
    for v in "xyz":
        assert partial_derivative(p * q, v) == partial_derivative(p, v) * q + p * partial_derivative(q, v)


@given(polys())
def test_euler_identity(p):
    lhs = x * p.diff("x") + y * p.diff("y") + z * p.diff("z")
    assert lhs == p.scale(p.degree)


@given(polys(3), polys(3))
def test_product_matches_sympy(p, q):
    assert sympy.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0


def test_arrangement_product_order_independent():
    rng = random.Random(7)
    forms = [HomogPoly.linear(*[rng.randint(-3, 3) for _ in range(3)]) for _ in range(7)]
    forms = [f for f in forms if not f.is_zero()]
    ref = product(forms)
    for _ in range(5):
        rng.shuffle(forms)
        assert product(forms) == ref
    assert ref.degree == len(forms)
