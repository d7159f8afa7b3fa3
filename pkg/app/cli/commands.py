"""
Subcommand implementations. Every cmd_* returns (exit_code, report) and
leaves printing to app.cli.main.
"""

import json
import logging

from app.config.factor_definitions import FACTOR_DEFINITIONS
from app.core.cartan_factors import factor_dimension, normalize_descriptor
from app.core.errors import ParseError
from app.core.expression_parser import parse_alpha, parse_expression, parse_tro_shape
from app.core.grids import build_grid
from app.core.k_invariant import (
    decide_isomorphism, delta_discrepancy, invariant_of_triple,
)
from app.core.lifting import (
    build_multiplicity_plan, k0_of_plan, lift_invariant_morphism, tro_shape_of,
)
from app.core.serialization import grid_from_dict, grid_to_dict, invariant_to_dict, plan_to_dict
from app.services import verify_service

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_BREACH = 3


def cmd_factor_info(expr: str) -> tuple[int, dict]:
    expression = parse_expression(expr)
    summands = []
    for d in expression.summands:
        g = build_grid(d)
        summands.append({
            "descriptor": str(d),
            "family": FACTOR_DEFINITIONS[d.kind]["name"],
            "normalized": str(normalize_descriptor(d)),
            "dim": factor_dimension(d),
            "grid": len(g.elements),
            "roots": g.root_system.name,
        })
    return EXIT_OK, {"expression": expression.render(), "summands": summands}


def cmd_invariant(expr: str) -> tuple[int, dict]:
    expression = parse_expression(expr)
    inv = invariant_of_triple(expression.summands)
    report = {"expression": expression.render(), "invariant": invariant_to_dict(inv)}
    discrepancies = [x for x in (delta_discrepancy(d) for d in expression.summands) if x]
    if discrepancies:
        report["printed_table_discrepancies"] = discrepancies
    return EXIT_OK, report


def cmd_iso(e1: str, e2: str) -> tuple[int, dict]:
    left, right = parse_expression(e1), parse_expression(e2)
    verdict = decide_isomorphism(left.summands, right.summands)
    report = {
        "left": "+".join(str(d) for d in verdict.left),
        "right": "+".join(str(d) for d in verdict.right),
        "isomorphic": verdict.isomorphic,
        "reason": verdict.reason,
    }
    if not verdict.isomorphic:
        return EXIT_NEGATIVE, report
    # the witness permutation lifted to the TRO level
    src = invariant_of_triple(verdict.left)
    dst = invariant_of_triple(verdict.right)
    plan = build_multiplicity_plan(tro_shape_of(src), tro_shape_of(dst), verdict.witness)
    report["permutation"] = [j + 1 for j in verdict.permutation]
    report["plan"] = plan_to_dict(plan)
    return EXIT_OK, report


def cmd_lift(src: str | None = None, dst: str | None = None, alpha: str | None = None,
             from_expr: str | None = None, to_expr: str | None = None) -> tuple[int, dict]:
    if alpha is None:
        raise ParseError("--alpha is required", 0)
    matrix = parse_alpha(alpha)
    if from_expr is not None or to_expr is not None:
        if from_expr is None or to_expr is None:
            raise ParseError("--from-expr and --to-expr go together", 0)
        zs, ws = parse_expression(from_expr).summands, parse_expression(to_expr).summands
        result = lift_invariant_morphism(zs, ws, matrix)
        report = {"applicable": result.applicable, "is_morphism": result.is_morphism,
                  "reason": result.reason}
        if result.plan is not None:
            report["plan"] = plan_to_dict(result.plan)
            report["verified"] = True
        return (EXIT_OK if result.is_morphism else EXIT_NEGATIVE), report

    if src is None or dst is None:
        raise ParseError("lift needs --src and --dst, or --from-expr and --to-expr", 0)
    src_shape, dst_shape = parse_tro_shape(src), parse_tro_shape(dst)
    # a violated scale inequality raises PreconditionError (exit 2)
    plan = build_multiplicity_plan(src_shape, dst_shape, matrix)
    verified = k0_of_plan(plan) == matrix
    return (EXIT_OK if verified else EXIT_BREACH), {"verified": verified, "plan": plan_to_dict(plan)}


def cmd_grid_dump(expr: str) -> tuple[int, dict]:
    expression = parse_expression(expr)
    if len(expression.summands) != 1:
        raise ParseError("grid dump takes a single factor", 0)
    g = build_grid(expression.summands[0])
    report = grid_to_dict(g)
    report["verification"] = verify_service.check_grid(g)
    return (EXIT_OK if report["verification"]["success"] else EXIT_NEGATIVE), report


def load_grid_fixture(path: str):
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path} is not JSON: {e.msg}", e.pos) from e
    except OSError as e:
        raise ParseError(f"cannot read grid fixture {path}: {e.strerror or e}", 0) from e
    return grid_from_dict(data)


def cmd_verify(scope: str, max_rank: int, max_n: int, seed: int, budget: int, max_dim: int,
               fixture: str | None = None, progress_callback=None) -> tuple[int, dict]:
    if scope == "roots":
        report = verify_service.run_root_suite(max_rank, progress_callback)
    elif scope == "grids":
        grid = load_grid_fixture(fixture) if fixture else None
        report = verify_service.run_grid_suite(max_n, grid, progress_callback)
    elif scope == "spin":
        report = verify_service.run_spin_suite(max_n, progress_callback)
    elif scope == "delta":
        report = verify_service.run_delta_suite(seed, budget, max_dim, progress_callback)
    elif scope == "all":
        report = verify_service.run_all(max_rank, max_n, seed, budget, max_dim, progress_callback)
    else:
        raise ParseError(f"unknown verification scope {scope!r}", 0)
    report["scope"] = scope
    return (EXIT_OK if report["success"] else EXIT_NEGATIVE), report
