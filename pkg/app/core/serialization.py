"""
JSON shapes for matrices, root systems, grids, invariants and multiplicity plans.

Rationals are strings ("3/2"); a matrix is a list of rows of [re, im] pairs.
"""

from fractions import Fraction

from app.core.errors import DomainError, ParseError, ShapeError
from app.core.exact_linear import GaussianRational, GaussianRationalMatrix
from app.core.root_systems import GradedRootSystem, format_root


def rational_to_str(x: Fraction) -> str:
    return str(Fraction(x))


def rational_from_str(text) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"not a rational number: {text!r}", 0) from e


def matrix_to_json(a: GaussianRationalMatrix) -> list:
    return [[[rational_to_str(v.re), rational_to_str(v.im)] for v in row] for row in a.to_rows()]


def matrix_from_json(rows) -> GaussianRationalMatrix:
    if not isinstance(rows, list) or not rows:
        raise ParseError("a matrix is a nonempty list of rows", 0)
    width = len(rows[0])
    entries = []
    for row in rows:
        if not isinstance(row, list) or len(row) != width:
            raise ShapeError("ragged matrix rows")
        for pair in row:
            if not isinstance(pair, list) or len(pair) != 2:
                raise ParseError(f"matrix entries are [re, im] pairs, got {pair!r}", 0)
            entries.append(GaussianRational(rational_from_str(pair[0]), rational_from_str(pair[1])))
    return GaussianRationalMatrix(len(rows), width, entries)


def root_system_to_dict(R: GradedRootSystem) -> dict:
    return {
        "name": R.name,
        "family": R.family,
        "tag": R.tag,
        "params": list(R.params),
        "dim": R.dim,
        "roots": [format_root(r) for r in R.roots],
        "one_part": [R.index_of(r) for r in R.one_part],
    }


def grid_to_dict(g) -> dict:
    return {
        "descriptor": str(g.descriptor),
        "root_system": g.root_system.name,
        "elements": [
            {"name": name, "label": format_root(label), "matrix": matrix_to_json(z)}
            for name, label, z in zip(g.names, g.labels, g.elements)
        ],
    }


def grid_from_dict(data: dict):
    """Rebuild a grid from its dump; elements and labels are taken as given
    so that a tampered dump fails verification instead of being repaired."""
    from app.core.cartan_factors import build_factor
    from app.core.expression_parser import parse_expression
    from app.core.grids import Grid, build_grid
    from app.core.root_systems import build_graded_root_system

    try:
        expression = parse_expression(data["descriptor"])
        entries = data["elements"]
    except (KeyError, TypeError) as e:
        raise ParseError(f"grid dump lacks {e}", 0) from e
    if len(expression.summands) != 1:
        raise DomainError("a grid dump describes a single factor")
    d = expression.summands[0]
    reference = build_grid(d)
    elements, labels, names = [], [], []
    for k, entry in enumerate(entries):
        try:
            matrix = matrix_from_json(entry["matrix"])
            label = tuple(rational_from_str(x) for x in entry["label"])
        except (KeyError, TypeError) as e:
            raise ParseError(f"grid element {k + 1} is malformed: {e}", 0) from e
        elements.append(matrix)
        labels.append(label)
        names.append(entry.get("name", f"g_{k + 1}"))
    return Grid(build_factor(d), tuple(elements), tuple(labels), tuple(names),
                build_graded_root_system(*d.root_system_key()), reference.in_stated_range)


def invariant_to_dict(inv) -> dict:
    data = {
        "rank": inv.rank,
        "left_scale": list(inv.left_scale),
        "right_scale": list(inv.right_scale),
        "delta": [list(v) for v in sorted(inv.delta)],
        "summand_shapes": [list(s) for s in inv.summand_shapes],
    }
    if inv.notes:
        data["notes"] = list(inv.notes)
    return data


def invariant_from_dict(data: dict):
    from app.core.k_invariant import KJBInvariant

    try:
        return KJBInvariant(
            rank=data["rank"],
            left_scale=tuple(data["left_scale"]),
            right_scale=tuple(data["right_scale"]),
            delta=frozenset(tuple(v) for v in data["delta"]),
            summand_shapes=tuple(tuple(s) for s in data["summand_shapes"]),
            notes=tuple(data.get("notes", ())),
        )
    except (KeyError, TypeError) as e:
        raise ParseError(f"invariant dump lacks {e}", 0) from e


def morphism_to_list(alpha) -> list:
    return [list(row) for row in alpha.matrix]


def plan_to_dict(plan) -> dict:
    return {
        "src": [list(s) for s in plan.src.summands],
        "dst": [list(s) for s in plan.dst.summands],
        "matrix": morphism_to_list(plan.matrix),
        "layout": [
            {
                "copies": [{"source": i + 1, "row": r, "col": c} for i, r, c in block.placements],
                "pad_rows": block.pad_rows,
                "pad_cols": block.pad_cols,
            }
            for block in plan.layout
        ],
    }
