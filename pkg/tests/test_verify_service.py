from app.core.cartan_factors import spin, type_i, type_iii
from app.core.grids import build_grid
from app.core.serialization import grid_from_dict, grid_to_dict
from app.services import verify_service


def test_root_suite_passes():
    messages = []
    report = verify_service.run_root_suite(3, messages.append)
    assert report["success"], report["message"]
    assert messages and all(m.startswith("Checking ") for m in messages)
    assert len(report["results"]) == len(messages)


def test_standard_grid_descriptors():
    descriptors = verify_service.standard_grid_descriptors(2)
    assert len(descriptors) == 11
    assert type_i(2, 1) in descriptors and spin(5) in descriptors


def test_grid_suite_passes():
    report = verify_service.run_grid_suite(2)
    assert report["success"], report["message"]
    assert report["message"] == "grids: 11/11 passed"


def test_check_grid_reports_size_and_connectivity():
    report = verify_service.check_grid(build_grid(type_iii(3)))
    names = [c["check"] for c in report["checks"]]
    assert "size" in names and "connected" in names
    assert report["success"]


def test_grid_suite_on_a_tampered_fixture():
    data = grid_to_dict(build_grid(type_iii(3)))
    data["elements"].pop()
    report = verify_service.run_grid_suite(fixture=grid_from_dict(data))
    assert not report["success"]
    assert report["message"] == "grid fixture: 0/1 passed"


def test_spin_suite_passes():
    report = verify_service.run_spin_suite(3)
    assert report["success"]
    assert [r["generators"] for r in report["results"]] == [2, 4, 6]


def test_oracle_descriptors_respect_max_dim():
    descriptors = verify_service.oracle_descriptors(4)
    assert spin(5) not in descriptors
    assert type_i(2, 2) in descriptors and type_i(1, 4) in descriptors
    assert len(descriptors) == 7


def test_delta_suite_small():
    report = verify_service.run_delta_suite(seed=42, budget=120, max_dim=4)
    assert report["success"], report["message"]
    assert isinstance(report["printed_discrepancies"], list)


def test_root_suite_reports_reducible_systems_without_failing():
    report = verify_service.run_root_suite(2)
    assert report["success"], report["message"]
    (d2,) = [r for r in report["results"] if r["tag"] == "IV_even" and r["params"] == [1]]
    assert d2["success"] and not d2["irreducible"]


def test_check_grid_checks_independence_and_root_family():
    report = verify_service.check_grid(build_grid(spin(7)))
    checks = {c["check"]: c["passed"] for c in report["checks"]}
    assert checks["independent"] and checks["root_family"]
    assert verify_service.expected_root_family(spin(7)) == "B"
    assert verify_service.expected_root_family(spin(6)) == "D"
    assert verify_service.expected_root_family(type_iii(3)) == "C"


def test_check_grid_flags_a_repeated_element():
    data = grid_to_dict(build_grid(type_iii(3)))
    data["elements"][1]["matrix"] = data["elements"][0]["matrix"]
    report = verify_service.check_grid(grid_from_dict(data))
    checks = {c["check"]: c["passed"] for c in report["checks"]}
    assert not checks["independent"]
    assert not report["success"]
