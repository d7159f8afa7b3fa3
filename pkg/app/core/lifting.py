"""
Realizing K₀ morphisms as TRO homomorphisms.

A TRO shape is a list of matrix blocks 𝕄_{n,m}. A multiplicity plan places
a_{j,i} copies of source block i on the diagonal of destination block j
(ascending source order, repetitions contiguous) and pads with zeros at the
end. matrix[j][i] is the multiplicity of source block i in destination j.
"""

import logging
from dataclasses import dataclass

from app.core.cartan_factors import FactorDescriptor, normalize_descriptor
from app.core.errors import InvariantBreachError, PreconditionError, ShapeError
from app.core.exact_linear import (
    GaussianRationalMatrix, adjoint, block_diagonal, mat_mul, matrix_unit, rank, zeros,
)
from app.core.k_invariant import (
    K0Morphism, KJBInvariant, invariant_of_triple, is_invariant_morphism,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TROShape:
    summands: tuple

    def __post_init__(self):
        summands = tuple((int(n), int(m)) for n, m in self.summands)
        if not summands:
            raise ShapeError("a TRO shape needs at least one summand")
        if any(n < 1 or m < 1 for n, m in summands):
            raise ShapeError(f"TRO block dimensions must be positive: {summands}")
        object.__setattr__(self, "summands", summands)

    def __len__(self):
        return len(self.summands)

    def __str__(self):
        return "[" + ",".join(f"({n},{m})" for n, m in self.summands) + "]"


@dataclass(frozen=True)
class BlockLayout:
    """placements: (source index, row offset, column offset) per copy."""

    placements: tuple
    pad_rows: int
    pad_cols: int


@dataclass(frozen=True)
class MultiplicityPlan:
    src: TROShape
    dst: TROShape
    matrix: K0Morphism
    layout: tuple


def tro_shape_of(inv: KJBInvariant) -> TROShape:
    return TROShape(inv.summand_shapes)


def _require_alpha_shape(src: TROShape, dst: TROShape, alpha: K0Morphism):
    if alpha.rows != len(dst) or alpha.cols != len(src):
        raise ShapeError(
            f"alpha is {alpha.rows}x{alpha.cols}, expected {len(dst)}x{len(src)}")


def _first_violation(src: TROShape, dst: TROShape, alpha: K0Morphism) -> str | None:
    if not alpha.is_positive():
        return "alpha has a negative entry"
    for j, (k, l) in enumerate(dst.summands):
        row = alpha.matrix[j]
        rows = sum(a * n for a, (n, _) in zip(row, src.summands))
        if rows > k:
            return f"rows of destination block {j + 1}: {rows} > {k}"
        cols = sum(a * m for a, (_, m) in zip(row, src.summands))
        if cols > l:
            return f"columns of destination block {j + 1}: {cols} > {l}"
    return None


def check_scale_conditions(src: TROShape, dst: TROShape, alpha: K0Morphism) -> bool:
    _require_alpha_shape(src, dst, alpha)
    return _first_violation(src, dst, alpha) is None


def build_multiplicity_plan(src: TROShape, dst: TROShape, alpha: K0Morphism) -> MultiplicityPlan:
    _require_alpha_shape(src, dst, alpha)
    violation = _first_violation(src, dst, alpha)
    if violation is not None:
        raise PreconditionError(f"alpha does not respect the scales: {violation}")
    layout = []
    for j, (k, l) in enumerate(dst.summands):
        placements, r, c = [], 0, 0
        for i, (n, m) in enumerate(src.summands):
            for _ in range(alpha.matrix[j][i]):
                placements.append((i, r, c))
                r += n
                c += m
        layout.append(BlockLayout(tuple(placements), k - r, l - c))
    return MultiplicityPlan(src, dst, alpha, tuple(layout))


def _require_element(shape: TROShape, x, what: str):
    if len(x) != len(shape):
        raise ShapeError(f"{what} has {len(x)} blocks, the shape has {len(shape)}")
    for b, (block, expected) in enumerate(zip(x, shape.summands)):
        if block.shape != expected:
            raise ShapeError(f"{what} block {b + 1} is {block.shape}, expected {expected}")


def apply_plan(plan: MultiplicityPlan, x) -> list[GaussianRationalMatrix]:
    _require_element(plan.src, x, "source element")
    out = []
    for (k, l), block in zip(plan.dst.summands, plan.layout):
        copies = [x[i] for i, _, _ in block.placements]
        out.append(block_diagonal(copies, k, l) if copies else zeros(k, l))
    return out


def tro_triple(x, y, z) -> list[GaussianRationalMatrix]:
    """Summandwise x·y*·z."""
    if not (len(x) == len(y) == len(z)):
        raise ShapeError("TRO elements with different numbers of blocks")
    return [mat_mul(mat_mul(a, adjoint(b)), c) for a, b, c in zip(x, y, z)]


def k0_of_plan(plan: MultiplicityPlan) -> K0Morphism:
    """Push the rank-one projection of each source block through the plan and
    count ranks per destination block."""
    columns = []
    for i, (n, m) in enumerate(plan.src.summands):
        x = [matrix_unit(a, b, 1, 1) if s == i else zeros(a, b)
             for s, (a, b) in enumerate(plan.src.summands)]
        image = apply_plan(plan, x)
        columns.append([rank(block) for block in image])
    q = len(plan.dst)
    return K0Morphism(tuple(tuple(col[j] for col in columns) for j in range(q)))


@dataclass(frozen=True)
class LiftResult:
    applicable: bool
    is_morphism: bool = False
    plan: MultiplicityPlan | None = None
    reason: str = ""


def lift_invariant_morphism(zs, ws, alpha: K0Morphism) -> LiftResult:
    """Check that α is a K-JB* morphism between two sums of type I–III
    factors and return the TRO-level plan realizing it."""
    zs = [FactorDescriptor(d.kind, d.params) for d in zs]
    ws = [FactorDescriptor(d.kind, d.params) for d in ws]
    spin_summands = [str(d) for d in zs + ws if d.kind == "IV"]
    if spin_summands:
        return LiftResult(False, reason=f"lifting covers type I-III sums only; spin summands {spin_summands}")
    src_inv = invariant_of_triple([normalize_descriptor(d) for d in zs])
    dst_inv = invariant_of_triple([normalize_descriptor(d) for d in ws])
    if not is_invariant_morphism(src_inv, dst_inv, alpha):
        return LiftResult(True, False, reason="alpha is not a K-JB* morphism")
    plan = build_multiplicity_plan(tro_shape_of(src_inv), tro_shape_of(dst_inv), alpha)
    if k0_of_plan(plan) != alpha:
        raise InvariantBreachError("the multiplicity plan does not realize alpha on K₀")
    logger.debug("lifted %s to a plan with %d destination blocks", alpha.matrix, len(plan.dst))
    return LiftResult(True, True, plan, "alpha lifts to a TRO homomorphism")
