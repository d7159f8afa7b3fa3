from fractions import Fraction

import pytest

from app.core.cartan_factors import type_i, type_ii, type_iii
from app.core.errors import ParseError, ShapeError
from app.core.exact_linear import GaussianRational, GaussianRationalMatrix
from app.core.grids import build_grid, verify_grid
from app.core.k_invariant import K0Morphism, invariant_of_factor, invariant_of_triple
from app.core.lifting import TROShape, build_multiplicity_plan
from app.core.root_systems import build_graded_root_system
from app.core.serialization import (
    grid_from_dict, grid_to_dict, invariant_from_dict, invariant_to_dict, matrix_from_json,
    matrix_to_json, plan_to_dict, rational_from_str, rational_to_str, root_system_to_dict,
)


def test_rational_strings():
    assert rational_to_str(Fraction(3, 2)) == "3/2"
    assert rational_to_str(Fraction(-4, 2)) == "-2"
    assert rational_from_str("-1/3") == Fraction(-1, 3)
    with pytest.raises(ParseError):
        rational_from_str("one half")
    with pytest.raises(ParseError):
        rational_from_str("1/0")


def test_matrix_json():
    a = GaussianRationalMatrix(1, 2, [GaussianRational(Fraction(1, 2), 0), GaussianRational(0, -1)])
    assert matrix_to_json(a) == [[["1/2", "0"], ["0", "-1"]]]
    assert matrix_from_json(matrix_to_json(a)) == a
    with pytest.raises(ShapeError):
        matrix_from_json([[["1", "0"]], []])
    with pytest.raises(ParseError):
        matrix_from_json([[1, 2]])
    with pytest.raises(ParseError):
        matrix_from_json([])


def test_root_system_dict():
    data = root_system_to_dict(build_graded_root_system("III", 2))
    assert data["name"] == "C2"
    assert len(data["one_part"]) == 3
    assert all(0 <= k < len(data["roots"]) for k in data["one_part"])


def test_grid_dump_reloads_and_verifies():
    g = build_grid(type_ii(5))
    data = grid_to_dict(g)
    assert data["descriptor"] == "II(5)"
    assert len(data["elements"]) == len(g.elements)
    reloaded = grid_from_dict(data)
    assert reloaded.elements == g.elements
    assert verify_grid(reloaded)["success"]


def test_tampered_grid_dump_fails_verification():
    data = grid_to_dict(build_grid(type_iii(3)))
    data["elements"][0]["matrix"][0][0] = ["2", "0"]
    assert not verify_grid(grid_from_dict(data))["success"]


def test_grid_dump_requires_descriptor():
    with pytest.raises(ParseError):
        grid_from_dict({"elements": []})


def test_invariant_dict_roundtrip():
    inv = invariant_of_triple([type_i(2, 3), type_iii(3)])
    data = invariant_to_dict(inv)
    assert data["rank"] == 3
    assert data["summand_shapes"] == [[2, 3], [3, 2], [3, 3]]
    assert invariant_from_dict(data) == inv


def test_invariant_dict_carries_notes():
    data = invariant_to_dict(invariant_of_factor(type_i(2, 3)))
    assert data["notes"]


def test_plan_dict_is_one_based():
    plan = build_multiplicity_plan(TROShape(((1, 1), (1, 1))), TROShape(((4, 3),)), K0Morphism(((1, 2),)))
    data = plan_to_dict(plan)
    assert data["matrix"] == [[1, 2]]
    (block,) = data["layout"]
    assert [c["source"] for c in block["copies"]] == [1, 2, 2]
    assert (block["pad_rows"], block["pad_cols"]) == (1, 0)


@pytest.mark.parametrize("entry", [
    {"label": ["1", "0", "0"]},
    {"matrix": [[["1", "0"]]]},
    "not an element",
    {"matrix": [[["1", "0"]]], "label": 5},
])
def test_malformed_grid_element_is_a_parse_error(entry):
    data = grid_to_dict(build_grid(type_iii(2)))
    data["elements"][0] = entry
    with pytest.raises(ParseError):
        grid_from_dict(data)
