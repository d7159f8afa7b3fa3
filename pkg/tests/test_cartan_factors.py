from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from app.core import sampling
from app.core.cartan_factors import (
    MAXIMAL, MINIMAL, NOT_TRIPOTENT, SIGMA_1, SIGMA_2, SIGMA_3, ZERO_CLASS,
    FactorDescriptor, apply_spin_automorphism, build_factor, classify_spin_tripotent,
    coordinates, factor_dimension, hilbert_class_vector, is_tripotent, k0_rank,
    matrix_to_spin, normalize_descriptor, peirce_eigenvalue, spin, spin_element,
    spin_system, spin_to_matrix, spin_triple_product, summand_shapes,
    tripotent_class_vector, triple_product, type_i, type_ii, type_iii,
)
from app.core.errors import DomainError
from app.core.exact_linear import HALF, I, identity, matrix_unit, scale, tensor, ternary_product

small = st.integers(min_value=-2, max_value=2)


def test_descriptor_validation_and_rendering():
    assert str(type_i(2, 3)) == "I(2,3)"
    assert str(spin(5)) == "IV(5)"
    with pytest.raises(DomainError):
        FactorDescriptor("V", (1,))
    with pytest.raises(DomainError):
        type_ii(3)
    with pytest.raises(DomainError):
        FactorDescriptor("I", (2,))


@pytest.mark.parametrize("d, expected", [
    (type_iii(2), spin(3)),
    (type_i(2, 2), spin(4)),
    (type_ii(4), spin(6)),
    (type_i(3, 1), type_i(1, 3)),
    (type_i(2, 3), type_i(2, 3)),
])
def test_normalize_descriptor(d, expected):
    assert normalize_descriptor(d) == expected


@pytest.mark.parametrize("d, dim", [
    (type_i(2, 3), 6), (type_ii(5), 10), (type_iii(4), 10), (spin(7), 7),
])
def test_factor_dimension_matches_basis(d, dim):
    assert factor_dimension(d) == dim
    assert build_factor(d).dimension == dim


def test_build_factor_bases():
    f = build_factor(type_i(2, 3))
    assert len(f.basis) == 6 and f.shape == (2, 3)
    h = build_factor(type_iii(2))
    assert set(h.basis) == {matrix_unit(2, 2, 1, 1), matrix_unit(2, 2, 2, 2),
                            matrix_unit(2, 2, 1, 2) + matrix_unit(2, 2, 2, 1)}
    s = build_factor(spin(4))
    assert s.shape == (4, 4)
    assert s.basis == spin_system(2)[:4]


def test_spin_system_small_cases():
    s1 = spin_system(1)
    assert s1 == (identity(2), SIGMA_1, SIGMA_2)
    s2 = spin_system(2)
    assert s2[3] == tensor(SIGMA_3, SIGMA_1)
    assert s2[4] == tensor(SIGMA_3, SIGMA_2)
    with pytest.raises(DomainError):
        spin_system(0)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_spin_system_anticommutes(n):
    s = spin_system(n)
    one = identity(2 ** n)
    for i in range(1, 2 * n + 1):
        for j in range(1, 2 * n + 1):
            anti = s[i] @ s[j] + s[j] @ s[i]
            assert anti == (scale(2, one) if i == j else scale(0, one))


def test_triple_product_examples():
    f = build_factor(type_ii(4))
    u = matrix_unit(4, 4, 1, 2) - matrix_unit(4, 4, 2, 1)
    assert triple_product(f, u, u, u) == u
    with pytest.raises(DomainError):
        triple_product(f, matrix_unit(4, 4, 1, 1), u, u)


def test_is_tripotent():
    f = build_factor(type_i(2, 2))
    assert is_tripotent(f, scale(0, identity(2)))
    assert is_tripotent(f, identity(2))
    assert not is_tripotent(f, scale(2, matrix_unit(2, 2, 1, 1)))


def test_peirce_eigenvalue():
    f = build_factor(type_i(2, 2))
    e11, e12, e22 = matrix_unit(2, 2, 1, 1), matrix_unit(2, 2, 1, 2), matrix_unit(2, 2, 2, 2)
    assert peirce_eigenvalue(f, e11, e11) == 1
    assert peirce_eigenvalue(f, e11, e22) == 0
    assert peirce_eigenvalue(f, e11, e12) == Fraction(1, 2)
    assert peirce_eigenvalue(f, e11, e12 + e11) is None
    with pytest.raises(DomainError):
        peirce_eigenvalue(f, scale(2, e11), e12)


def test_classify_spin_tripotent_examples():
    assert classify_spin_tripotent(spin_element(HALF, HALF * I, 0, 0)) == MINIMAL
    assert classify_spin_tripotent(spin_element(Fraction(3, 5), Fraction(4, 5), 0)) == MAXIMAL
    assert classify_spin_tripotent(spin_element(I, 0, 0)) == MAXIMAL
    assert classify_spin_tripotent(spin_element(1, 1, 0, 0)) == NOT_TRIPOTENT
    assert classify_spin_tripotent(spin_element(0, 0, 0)) == ZERO_CLASS


def test_minimal_spin_element_is_tripotent_abstractly():
    e = spin_element(HALF, HALF * I, 0, 0, 0)
    assert spin_triple_product(e, e, e) == e


@pytest.mark.parametrize("dim", [3, 4, 5])
@given(data=st.data())
def test_spin_identification_is_a_triple_homomorphism(dim, data):
    f = build_factor(spin(dim))
    coords = st.lists(st.tuples(small, small), min_size=dim, max_size=dim)
    a, b, c = (spin_element(*(x + y * I for x, y in data.draw(coords))) for _ in range(3))
    lhs = spin_to_matrix(f, spin_triple_product(a, b, c))
    rhs = ternary_product(spin_to_matrix(f, a), spin_to_matrix(f, b), spin_to_matrix(f, c))
    assert lhs == rhs
    assert matrix_to_spin(f, spin_to_matrix(f, a)) == a


@given(seed=st.integers(min_value=0, max_value=10_000))
def test_spin_automorphisms_preserve_product_and_class(seed):
    rng = sampling.make_rng(seed)
    dim = 6
    f = build_factor(spin(dim))
    q = sampling.random_orthogonal(rng, dim)
    lam = sampling.random_unimodular(rng)
    e = spin_element(HALF, HALF * I, 0, 0, 0, 0)
    image = apply_spin_automorphism(e, q, lam)
    assert classify_spin_tripotent(image) == MINIMAL
    x = spin_element(1, I, 0, 2, 0, -1)
    lhs = apply_spin_automorphism(spin_triple_product(e, x, e), q, lam)
    moved_x = apply_spin_automorphism(x, q, lam)
    assert spin_triple_product(image, moved_x, image) == lhs
    assert tripotent_class_vector(f, spin_to_matrix(f, image)) == \
        tripotent_class_vector(f, spin_to_matrix(f, e))


def test_class_vectors_of_matrix_factors():
    f = build_factor(type_iii(4))
    assert tripotent_class_vector(f, matrix_unit(4, 4, 1, 1)) == (1,)
    g = build_factor(type_i(2, 3))
    assert tripotent_class_vector(g, matrix_unit(2, 3, 1, 2)) == (1, 1)
    with pytest.raises(DomainError):
        tripotent_class_vector(f, scale(2, matrix_unit(4, 4, 1, 1)))


def test_class_vectors_of_spin_tripotents():
    odd = build_factor(spin(5))
    assert tripotent_class_vector(odd, odd.basis[0]) == (4,)
    for dim, expected in [(4, (1, 1)), (6, (2, 2)), (8, (4, 4))]:
        f = build_factor(spin(dim))
        e = spin_element(HALF, HALF * I, *([0] * (dim - 2)))
        assert tripotent_class_vector(f, spin_to_matrix(f, e)) == expected


def test_symplectic_four_uses_the_hodge_dual():
    f = build_factor(type_ii(4))
    u = matrix_unit(4, 4, 1, 2) - matrix_unit(4, 4, 2, 1)
    v = matrix_unit(4, 4, 3, 4) - matrix_unit(4, 4, 4, 3)
    assert tripotent_class_vector(f, u) == (2, 2)
    assert tripotent_class_vector(f, u + v) == (4, 4)


def test_hilbert_class_vector():
    assert hilbert_class_vector(matrix_unit(1, 3, 1, 1)) == (1, 2, 1)
    assert hilbert_class_vector(matrix_unit(1, 4, 1, 2)) == (1, 3, 3, 1)


def test_summand_shapes_and_rank():
    assert summand_shapes(type_i(1, 3)) == ((3, 1), (3, 3), (1, 3))
    assert summand_shapes(type_i(2, 3)) == ((2, 3), (3, 2))
    assert summand_shapes(spin(6)) == ((4, 4), (4, 4))
    assert summand_shapes(spin(5)) == ((4, 4),)
    assert summand_shapes(type_ii(5)) == ((5, 5),)
    assert k0_rank(type_i(1, 3)) == 3
    assert k0_rank(spin(7)) == 1


def test_coordinates_outside_factor():
    f = build_factor(type_ii(4))
    with pytest.raises(DomainError):
        coordinates(f, identity(4))


@pytest.mark.parametrize("d", [type_i(2, 3), type_i(1, 4), type_ii(5), type_iii(3), spin(5), spin(6)], ids=str)
def test_basis_triples_stay_in_the_factor(d):
    f = build_factor(d)
    for a in f.basis:
        for b in f.basis:
            for c in f.basis:
                abc = triple_product(f, a, b, c)
                assert abc == triple_product(f, c, b, a)
                coordinates(f, abc)


LARGE_FACTORS = [type_i(6, 6), type_i(4, 9), type_ii(9), type_iii(8), spin(8), spin(9)]


@pytest.mark.parametrize("d", LARGE_FACTORS, ids=str)
@given(data=st.data())
def test_sampled_basis_triples_stay_in_the_factor(d, data):
    assert factor_dimension(d) <= 36
    f = build_factor(d)
    a, b, c = (data.draw(st.sampled_from(f.basis)) for _ in range(3))
    abc = triple_product(f, a, b, c)
    assert abc == triple_product(f, c, b, a)
    coordinates(f, abc)
