from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from app.core.cartan_factors import SIGMA_1, SIGMA_3, spin_system
from app.core.errors import DomainError, ShapeError
from app.core.exact_linear import (
    HALF, I,
    GaussianRational, GaussianRationalMatrix, SpanSolver,
    adjoint, block_diagonal, identity, inverse, mat_mul, matrix_unit, rank,
    scale, tensor, tensor_power, ternary_product, zeros,
)
from conftest import matrices


def test_gaussian_rational_parsing():
    assert GaussianRational.from_string("3/2") == GaussianRational(Fraction(3, 2))
    assert GaussianRational.from_string("1/2+3/4i") == GaussianRational(Fraction(1, 2), Fraction(3, 4))
    assert GaussianRational.from_string("i") == I
    assert GaussianRational.from_string("-2i") == GaussianRational(0, -2)
    with pytest.raises(DomainError):
        GaussianRational.from_string("")
    for bad in ("abc", "1/0", "xi", "1/2+ai"):
        with pytest.raises(DomainError):
            GaussianRational.from_string(bad)


def test_gaussian_rational_arithmetic_is_exact():
    z = GaussianRational(Fraction(1, 3), Fraction(2, 7))
    assert (z / z) == 1
    assert z * z.conjugate() == z.norm()
    assert I * I == -1
    with pytest.raises(ZeroDivisionError):
        z / 0


def test_identity_is_neutral():
    a = GaussianRationalMatrix.from_rows([[1, 2, 0], [0, 1j, 3], [Fraction(1, 2), 0, -1]])
    assert mat_mul(identity(3), a) == a


def test_sigma_1_squares_to_identity():
    assert mat_mul(SIGMA_1, SIGMA_1) == identity(2)


def test_matrix_units_multiply():
    assert mat_mul(matrix_unit(2, 3, 1, 2), matrix_unit(3, 2, 2, 1)) == matrix_unit(2, 2, 1, 1)


def test_mat_mul_rejects_mismatched_shapes():
    with pytest.raises(ShapeError):
        mat_mul(zeros(2, 3), zeros(2, 3))


def test_adjoint_examples():
    d = GaussianRationalMatrix.from_rows([[2, 0], [0, -5]])
    assert adjoint(d) == d
    assert adjoint(SIGMA_3) == SIGMA_3
    assert adjoint(scale(I, matrix_unit(2, 2, 1, 2))) == scale(-I, matrix_unit(2, 2, 2, 1))


def test_tensor_examples():
    assert tensor(identity(2), identity(2)) == identity(4)
    assert tensor(SIGMA_3, SIGMA_1) == spin_system(2)[3]
    assert rank(tensor(SIGMA_1, identity(2))) == 4
    assert tensor_power(SIGMA_1, 2) == tensor(SIGMA_1, SIGMA_1)


def test_rank_examples():
    assert rank(zeros(3, 3)) == 0
    assert rank(matrix_unit(3, 3, 1, 1) + matrix_unit(3, 3, 2, 2)) == 2
    s = spin_system(3)
    u1 = scale(HALF, s[0] - s[1])
    assert rank(u1) == 4


def test_ternary_product_examples():
    e11 = matrix_unit(2, 2, 1, 1)
    assert ternary_product(e11, e11, e11) == e11
    a = GaussianRationalMatrix.from_rows([[1, 1j], [2, 0]])
    assert ternary_product(a, zeros(2, 2), a).is_zero()
    s = spin_system(2)
    assert ternary_product(s[1], s[1], s[2]) == s[2]


def test_ternary_product_rejects_mixed_shapes():
    with pytest.raises(ShapeError):
        ternary_product(zeros(2, 2), zeros(2, 3), zeros(2, 2))


def test_block_diagonal_pads_with_zeros():
    a = GaussianRationalMatrix.from_rows([[2]])
    b = GaussianRationalMatrix.from_rows([[3]])
    out = block_diagonal([a, b], 3, 4)
    assert out.shape == (3, 4)
    assert out[0, 0] == 2 and out[1, 1] == 3
    assert list(out.nonzero_items()) == [(0, 0, out[0, 0]), (1, 1, out[1, 1])]
    with pytest.raises(ShapeError):
        block_diagonal([a, b], 1, 1)


def test_inverse_and_singular_matrix():
    a = GaussianRationalMatrix.from_rows([[1, 1j], [0, 2]])
    assert mat_mul(a, inverse(a)) == identity(2)
    with pytest.raises(DomainError):
        inverse(GaussianRationalMatrix.from_rows([[1, 2], [2, 4]]))


def test_span_solver_coordinates():
    basis = [matrix_unit(2, 2, 1, 1), matrix_unit(2, 2, 1, 2) + matrix_unit(2, 2, 2, 1)]
    solver = SpanSolver(basis)
    target = scale(3, basis[0]) + scale(I, basis[1])
    assert solver.coordinates(target) == (GaussianRational(3), I)
    assert not solver.contains(matrix_unit(2, 2, 1, 2))
    with pytest.raises(DomainError):
        SpanSolver([basis[0], scale(2, basis[0])])


@given(matrices(2, 3), matrices(2, 3), matrices(2, 3))
def test_ternary_product_outer_symmetry(a, b, c):
    assert ternary_product(a, b, c) == ternary_product(c, b, a)


@given(matrices(3, 2))
def test_adjoint_is_an_involution_preserving_rank(a):
    assert adjoint(adjoint(a)) == a
    assert rank(a) == rank(adjoint(a))


@given(matrices(3, 3), st.lists(st.integers(-2, 2), min_size=3, max_size=3))
def test_rank_invariant_under_invertible_multiplication(a, upper):
    # unit upper triangular, hence invertible
    t = GaussianRationalMatrix.from_rows([[1, upper[0], upper[1]], [0, 1, upper[2]], [0, 0, 1]])
    assert rank(mat_mul(t, a)) == rank(a)
    assert rank(mat_mul(a, adjoint(t))) == rank(a)


@given(matrices(2, 2), matrices(2, 2))
def test_operations_are_pure(a, b):
    assert mat_mul(a, b) == mat_mul(a, b)
    assert rank(a) == rank(a)
