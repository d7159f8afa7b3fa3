"""
Verification suites over the standard root systems, grids, spin systems and
the Δ oracle. Every suite returns a result dict {"success", "message", ...}
and reports progress through an optional progress_callback(message).
"""

import logging

from app.config.factor_definitions import DEFAULTS, FACTOR_DEFINITIONS
from app.core.cartan_factors import (
    factor_dimension, normalize_descriptor, spin, spin_system, type_i, type_ii, type_iii,
)
from app.core.errors import DeltaNotStabilizedError, DomainError
from app.core.exact_linear import identity, is_linearly_independent, mat_mul, scale
from app.core.grids import build_grid, is_connected_grid, verify_grid
from app.core.k_invariant import oracle_agreement
from app.core.root_systems import (
    is_irreducible, standard_systems, verify_grading_axioms, verify_root_axioms,
)

logger = logging.getLogger(__name__)


def _notify(progress_callback, message: str):
    logger.info(message)
    if progress_callback:
        progress_callback(message)


def _summary(name: str, results: list[dict]) -> dict:
    failed = [r for r in results if not r["success"]]
    message = f"{name}: {len(results) - len(failed)}/{len(results)} passed"
    return {"success": not failed, "message": message, "results": results}


def run_root_suite(max_rank: int = DEFAULTS["verify"]["max_rank"], progress_callback=None) -> dict:
    results = []
    for R in standard_systems(max_rank):
        _notify(progress_callback, f"Checking {R.name} ({R.tag}{R.params})…")
        roots = verify_root_axioms(R)
        grading = verify_grading_axioms(R)
        irreducible = is_irreducible(R)
        results.append({
            "success": roots["success"] and grading["success"],
            "system": R.name,
            "tag": R.tag,
            "params": list(R.params),
            "irreducible": irreducible,
            "axioms": roots["axioms"] + grading["axioms"],
        })
    return _summary("root systems", results)


def standard_grid_descriptors(max_n: int = DEFAULTS["verify"]["max_n"]) -> list:
    """Rectangular up to max_n × max_n, symplectic 5..max_n+3, hermitian
    2..max_n+1 and spin grids with 1..max_n pairs of either parity."""
    out = [type_i(n, m) for n in range(1, max_n + 1) for m in range(1, max_n + 1)]
    out += [type_ii(n) for n in range(5, max_n + 4)]
    out += [type_iii(n) for n in range(2, max_n + 2)]
    for k in range(1, max_n + 1):
        out += [spin(2 * k), spin(2 * k + 1)]
    return out


def expected_root_family(d) -> str:
    family = FACTOR_DEFINITIONS[d.kind]["root_family"]
    return family[d.spin_parity] if isinstance(family, dict) else family


def check_grid(g) -> dict:
    report = verify_grid(g)
    independent = is_linearly_independent(g.elements)
    report["checks"].append({"check": "independent", "passed": independent, "witness": None})
    expected = expected_root_family(g.descriptor)
    family_matches = g.root_system.family == expected
    report["checks"].append({"check": "root_family", "passed": family_matches,
                             "witness": None if family_matches else
                             {"expected": expected, "found": g.root_system.family}})
    size_matches = len(g.elements) == len(g.root_system.one_part)
    connected = is_connected_grid(g)
    report["checks"].append({"check": "size", "passed": size_matches,
                             "witness": None if size_matches else
                             {"grid": len(g.elements), "one_part": len(g.root_system.one_part)}})
    irreducible = is_irreducible(g.root_system)
    report["checks"].append({"check": "connected", "passed": connected == irreducible,
                             "witness": None if connected == irreducible else
                             {"connected": connected, "irreducible": irreducible}})
    report["success"] = all(c["passed"] for c in report["checks"])
    return report


def run_grid_suite(max_n: int = DEFAULTS["verify"]["max_n"], fixture=None, progress_callback=None) -> dict:
    if fixture is not None:
        _notify(progress_callback, f"Checking grid fixture {fixture.descriptor}…")
        return _summary("grid fixture", [check_grid(fixture)])
    results = []
    for d in standard_grid_descriptors(max_n):
        _notify(progress_callback, f"Checking grid of {d}…")
        results.append(check_grid(build_grid(d)))
    return _summary("grids", results)


def run_spin_suite(max_n: int = 6, progress_callback=None) -> dict:
    """s_i s_j + s_j s_i = 2δ_ij·id for the generators s_1, …, s_2n."""
    results = []
    for n in range(1, max_n + 1):
        _notify(progress_callback, f"Checking the spin system with n = {n}…")
        s = spin_system(n)
        one = identity(2 ** n)
        zero = scale(0, one)
        witness = None
        for i in range(1, len(s)):
            for j in range(i, len(s)):
                anti = mat_mul(s[i], s[j]) + mat_mul(s[j], s[i])
                if anti != (scale(2, one) if i == j else zero):
                    witness = [i, j]
                    break
            if witness:
                break
        results.append({"success": witness is None, "n": n, "generators": len(s) - 1, "witness": witness})
    return _summary("spin systems", results)


def oracle_descriptors(max_dim: int = DEFAULTS["verify"]["max_dim"]) -> list:
    out = [type_iii(n) for n in (3, 4)]
    out += [type_ii(n) for n in (5, 6)]
    out += [spin(d) for d in range(3, 9)]
    out += [type_i(1, n) for n in range(1, 5)]
    out += [type_i(n, m) for n in (2, 3) for m in (2, 3)]
    return [d for d in out if factor_dimension(normalize_descriptor(d)) <= max_dim]


def run_delta_suite(seed: int = DEFAULTS["oracle"]["seed"], budget: int = DEFAULTS["oracle"]["budget"],
                    max_dim: int = DEFAULTS["verify"]["max_dim"], progress_callback=None) -> dict:
    results = []
    for d in oracle_descriptors(max_dim):
        _notify(progress_callback, f"Sampling tripotents of {d}…")
        try:
            results.append(oracle_agreement(d, budget, seed))
        except (DeltaNotStabilizedError, DomainError) as e:
            results.append({"descriptor": str(d), "success": False, "error": str(e)})
    report = _summary("delta oracle", results)
    report["printed_discrepancies"] = [r["printed_discrepancy"] for r in results
                                       if r.get("printed_discrepancy")]
    return report


def run_all(max_rank: int = DEFAULTS["verify"]["max_rank"], max_n: int = DEFAULTS["verify"]["max_n"],
            seed: int = DEFAULTS["oracle"]["seed"], budget: int = DEFAULTS["oracle"]["budget"],
            max_dim: int = DEFAULTS["verify"]["max_dim"], progress_callback=None) -> dict:
    suites = {
        "roots": run_root_suite(max_rank, progress_callback),
        "grids": run_grid_suite(max_n, progress_callback=progress_callback),
        "spin": run_spin_suite(max_n, progress_callback),
        "delta": run_delta_suite(seed, budget, max_dim, progress_callback),
    }
    failed = [name for name, r in suites.items() if not r["success"]]
    message = "all suites passed" if not failed else f"failed suites: {', '.join(failed)}"
    return {"success": not failed, "message": message, "suites": suites}
