from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lrlspin.exact import GaussRat, I, Matrix, commutator, kron, parse_rational

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gaussians = st.builds(GaussRat, rationals, rationals)


@given(gaussians, gaussians, gaussians)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a + (-a) == GaussRat(0)


@given(gaussians)
def test_division_roundtrip(a):
    if not a.is_zero():
        assert (a * GaussRat(3, 7)) / a == GaussRat(3, 7)


def test_i_squares_to_minus_one():
    assert I * I == GaussRat(-1)
    assert I.conj() == -I


def test_matrix_product_and_kron():
    a = Matrix.from_rows([[1, 2], [0, 1]])
    b = Matrix.from_rows([[0, 1], [1, 0]])
    assert (a @ b) == Matrix.from_rows([[2, 1], [1, 0]])
    k = kron(a, b)
    assert k.nrows == 4
    assert k[(0, 1)] == GaussRat(1)
    assert k[(0, 3)] == GaussRat(2)


def test_commutator_antisymmetry():
    a = Matrix.from_rows([[0, I], [-I, 0]])
    b = Matrix.from_rows([[1, 0], [0, -1]])
    assert (commutator(a, b) + commutator(b, a)).is_zero()


def test_hermitian_check():
    assert Matrix.from_rows([[1, I], [-I, 2]]).is_hermitian()
    assert not Matrix.from_rows([[1, I], [I, 2]]).is_hermitian()


def test_parse_rational():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-2") == Fraction(-2)
    with pytest.raises(ValueError):
        parse_rational("x/y")
    with pytest.raises(ValueError):
        parse_rational("1/0")
