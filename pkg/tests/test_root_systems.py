from fractions import Fraction

import pytest

from app.core.errors import DomainError
from app.core.root_systems import (
    GradedRootSystem, build_graded_root_system, cartan_integer, is_irreducible, reflect,
    root, root_lattice_coordinates, root_system_name, simple_roots, standard_systems,
    verify_grading_axioms, verify_root_axioms,
)


@pytest.mark.parametrize("system", standard_systems(8), ids=lambda R: f"{R.tag}{R.params}")
def test_standard_systems_satisfy_all_axioms(system):
    roots = verify_root_axioms(system)
    grading = verify_grading_axioms(system)
    assert roots["success"], roots
    assert grading["success"], grading


def test_standard_systems_cover_the_four_families():
    assert {R.family for R in standard_systems(4)} == {"A", "B", "C", "D"}
    assert all(R.rank_index <= 6 for R in standard_systems(6))


@pytest.mark.parametrize("tag, params, name, one_size", [
    ("I", (2, 3), "A4", 6),
    ("I", (1, 4), "A4", 4),
    ("II", (5,), "D5", 10),
    ("III", (3,), "C3", 6),
    ("IV_even", (2,), "D3", 4),
    ("IV_odd", (2,), "B3", 5),
])
def test_build_graded_root_system(tag, params, name, one_size):
    R = build_graded_root_system(tag, *params)
    assert root_system_name(R) == name
    assert len(R.one_part) == one_size
    assert set(R.minus_one_part) == {tuple(-x for x in r) for r in R.one_part}
    assert len(R.roots) == 2 * len(R.one_part) + len(R.zero_part)


def test_build_rejects_unknown_and_small_parameters():
    with pytest.raises(DomainError):
        build_graded_root_system("V", 3)
    with pytest.raises(DomainError):
        build_graded_root_system("II", 2)


def test_type_i_one_part_convention():
    R = build_graded_root_system("I", 2, 3)
    # e_i - e_{m+j} for i <= m, j <= n
    assert root(1, 0, 0, -1, 0) in R.one_set
    assert root(0, 0, 1, 0, -1) in R.one_set
    assert root(0, 0, 0, 1, -1) in R.zero_part


def test_reflect():
    a = root(1, -1, 0)
    assert reflect(a, a) == root(-1, 1, 0)
    assert reflect(a, root(0, 1, -1)) == root(1, 0, -1)
    assert reflect(a, root(0, 0, 1)) == root(0, 0, 1)
    with pytest.raises(DomainError):
        reflect(root(0, 0), root(1, 0))


def test_cartan_integer():
    assert cartan_integer(root(1, -1, 0), root(0, 1, -1)) == -1
    assert cartan_integer(root(2, 0), root(1, 1)) == 2
    assert cartan_integer(root(1, 1), root(2, 0)) == 1
    assert cartan_integer(root(1, 0), root(0, 2)) == 0
    assert cartan_integer(root(1, 0), root(3, 0)) == Fraction(2, 3)


def test_broken_system_reports_witnesses():
    broken = GradedRootSystem("A", 2, (root(1, 0), root(-1, 0), root(1, 1)), (root(1, 0),))
    report = verify_root_axioms(broken)
    assert not report["success"]
    failed = {entry["axiom"] for entry in report["axioms"] if not entry["passed"]}
    assert "root-(b)" in failed
    assert "root-(d)" in failed


def test_grading_without_negative_fails():
    R = build_graded_root_system("III", 2)
    bad = GradedRootSystem("C", 2, R.roots, R.one_part + (R.minus_one_part[0],), (2,), 2, "full", "custom")
    report = verify_grading_axioms(bad)
    assert not report["success"]
    assert report["axioms"][0]["axiom"] == "grading-(d)"
    assert not report["axioms"][0]["passed"]


def test_irreducibility():
    assert is_irreducible(build_graded_root_system("II", 5))
    reducible = GradedRootSystem("A", 2, (root(1, 0), root(-1, 0), root(0, 1), root(0, -1)), (root(1, 0),))
    assert not is_irreducible(reducible)


def test_root_lattice_coordinates():
    R = build_graded_root_system("I", 1, 2)
    assert simple_roots(R) == (root(1, -1, 0), root(0, 1, -1))
    assert root_lattice_coordinates(R, root(1, 0, -1)) == (1, 1)
    assert root_lattice_coordinates(R, root(0, 0, 0)) == (0, 0)
    assert root_lattice_coordinates(R, root(Fraction(1, 2), Fraction(-1, 2), 0)) is None
    assert root_lattice_coordinates(R, root(1, 0, 0)) is None


def test_every_root_has_integer_coordinates():
    for R in standard_systems(4):
        for r in R.roots:
            assert root_lattice_coordinates(R, r) is not None, (R.name, r)
