"""
kjb command line: argument parsing, config precedence, output and exit codes.
"""

import argparse
import json
import logging
import sys

from app.cli import commands
from app.config.config_manager import ConfigManager
from app.config.version import get_current_version
from app.core.errors import InvariantBreachError, KJBError

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="kjb",
        description="Cartan factors, graded root systems and the K-JB* invariant in exact arithmetic.",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {get_current_version()}")
    ap.add_argument("--json", action="store_true", help="Print the full report as JSON.")
    ap.add_argument("--seed", type=int, help="Seed of the randomized oracles (default from config, 42).")
    ap.add_argument("--budget", type=int, help="Sample budget of the Δ oracle (default from config, 200).")
    ap.add_argument("--config", help="Path to kjb.toml.")
    ap.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG.")
    sub = ap.add_subparsers(dest="command", required=True)

    factor = sub.add_parser("factor", help="Factor data").add_subparsers(dest="action", required=True)
    info = factor.add_parser("info", help="Dimension, grid size and root system per summand")
    info.add_argument("expr")

    invariant = sub.add_parser("invariant", help="K-JB* invariant").add_subparsers(dest="action", required=True)
    compute = invariant.add_parser("compute", help="Invariant of a direct sum")
    compute.add_argument("expr")

    iso = sub.add_parser("iso", help="Isomorphism").add_subparsers(dest="action", required=True)
    check = iso.add_parser("check", help="Decide whether two direct sums are isomorphic")
    check.add_argument("left")
    check.add_argument("right")

    lift = sub.add_parser("lift", help="Lift a K₀ morphism to a TRO homomorphism")
    lift.add_argument("--src", help='Source TRO shape, e.g. "[(2,3),(1,1)]"')
    lift.add_argument("--dst", help='Destination TRO shape, e.g. "[(5,7)]"')
    lift.add_argument("--alpha", help='Nonnegative integer matrix, e.g. "[[2,1]]"')
    lift.add_argument("--from-expr", help="Source factor expression")
    lift.add_argument("--to-expr", help="Destination factor expression")

    grid = sub.add_parser("grid", help="Standard grids").add_subparsers(dest="action", required=True)
    dump = grid.add_parser("dump", help="Dump and verify the standard grid of a factor")
    dump.add_argument("expr")

    verify = sub.add_parser("verify", help="Run verification suites")
    verify.add_argument("scope", choices=["roots", "grids", "spin", "delta", "all"])
    verify.add_argument("--max-rank", type=int)
    verify.add_argument("--max-n", type=int)
    verify.add_argument("--max-dim", type=int)
    verify.add_argument("--fixture", help="Verify a grid dump instead of the standard grids")
    return ap


def _configure_logging(verbosity: int):
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.getLogger().setLevel(level)


def _pick(flag, fallback):
    return flag if flag is not None else fallback


def dispatch(args, config: ConfigManager) -> tuple[int, dict]:
    if args.command == "factor":
        return commands.cmd_factor_info(args.expr)
    if args.command == "invariant":
        return commands.cmd_invariant(args.expr)
    if args.command == "iso":
        return commands.cmd_iso(args.left, args.right)
    if args.command == "lift":
        return commands.cmd_lift(args.src, args.dst, args.alpha, args.from_expr, args.to_expr)
    if args.command == "grid":
        return commands.cmd_grid_dump(args.expr)
    return commands.cmd_verify(
        args.scope,
        max_rank=_pick(args.max_rank, config.get_max_rank()),
        max_n=_pick(args.max_n, config.get_max_n()),
        seed=_pick(args.seed, config.get_seed()),
        budget=_pick(args.budget, config.get_budget()),
        max_dim=_pick(args.max_dim, config.get_max_dim()),
        fixture=args.fixture,
        progress_callback=lambda message: print(message, file=sys.stderr) if args.verbose else None,
    )


def _render_text(report: dict, indent: str = "") -> list[str]:
    lines = []
    for key, value in report.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.extend(_render_text(value, indent + "  "))
        elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            lines.append(f"{indent}{key}:")
            for item in value:
                sub = _render_text(item, indent + "    ")
                if sub:
                    sub[0] = f"{indent}  - " + sub[0].lstrip()
                lines.extend(sub)
        else:
            lines.append(f"{indent}{key}: {json.dumps(value, ensure_ascii=False)}")
    return lines


def emit(report: dict, as_json: bool, indent: int):
    if as_json:
        print(json.dumps(report, ensure_ascii=False, indent=indent))
    else:
        print("\n".join(_render_text(report)))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    config = ConfigManager(args.config)
    indent = config.get_indent()
    try:
        code, report = dispatch(args, config)
    except InvariantBreachError as e:
        logger.error("internal cross-check failed: %s", e)
        emit({"success": False, "error": str(e), "kind": "invariant_breach"}, args.json, indent)
        return commands.EXIT_BREACH
    except KJBError as e:
        report = {"success": False, "error": str(e), "kind": type(e).__name__}
        position = getattr(e, "position", None)
        if position is not None:
            report["position"] = position
        emit(report, args.json, indent)
        return commands.EXIT_USAGE
    emit(report, args.json, indent)
    return code
