"""
The K-JB* invariant (K₀, K₀₊, Σ_ℒ, Σ_ℛ, Δ) of finite-dimensional JB*-triples:
per-factor tables, direct sums, a brute-force Δ oracle and the
isomorphism/morphism decision procedures.

The positive cone is always ℕ₀ᵖ and is stored only through the rank. Scale
boxes are stored by their maxima; coordinate i ranges over {0, …, max_i}.
"""

import logging
from dataclasses import dataclass, field
from itertools import permutations, product
from math import comb

from app.config.factor_definitions import FACTOR_DEFINITIONS
from app.core import sampling
from app.core.cartan_factors import (
    MAXIMAL, MINIMAL,
    FactorDescriptor, apply_spin_automorphism, build_factor, classify_spin_tripotent,
    factor_dimension, normalize_descriptor, spin_element, spin_to_matrix, summand_shapes,
    tripotent_class_vector, type_i, type_ii, type_iii, spin,
)
from app.core.errors import (
    DeltaNotStabilizedError, DomainError, InvariantBreachError, ShapeError, UnsupportedFactorError,
)
from app.core.exact_linear import (
    HALF, I, GaussianRationalMatrix, mat_mul, scale, ternary_product, transpose,
)

logger = logging.getLogger(__name__)

MAX_ORACLE_DIMENSION = 36


# ----------------------------------------------------------------------
# Types
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class KJBInvariant:
    rank: int
    left_scale: tuple
    right_scale: tuple
    delta: frozenset
    summand_shapes: tuple
    notes: tuple = field(default=(), compare=False)

    def __post_init__(self):
        shapes = tuple(tuple(int(x) for x in s) for s in self.summand_shapes)
        delta = frozenset(tuple(int(x) for x in v) for v in self.delta)
        object.__setattr__(self, "summand_shapes", shapes)
        object.__setattr__(self, "left_scale", tuple(int(x) for x in self.left_scale))
        object.__setattr__(self, "right_scale", tuple(int(x) for x in self.right_scale))
        object.__setattr__(self, "delta", delta)
        if len(shapes) != self.rank:
            raise ShapeError(f"{len(shapes)} summand shapes for K₀ of rank {self.rank}")
        if self.left_scale != tuple(n for n, _ in shapes) or self.right_scale != tuple(m for _, m in shapes):
            raise DomainError("scale maxima must equal the summand shapes")
        if any(n < 1 or m < 1 for n, m in shapes):
            raise DomainError("scale maxima must be positive")
        for v in delta:
            if len(v) != self.rank or min(v, default=0) < 0 or not any(v):
                raise DomainError(f"invalid class vector {v} in Δ")
            if any(x > n or x > m for x, (n, m) in zip(v, shapes)):
                raise DomainError(f"class vector {v} leaves the scale boxes")


@dataclass(frozen=True)
class K0Morphism:
    """A q×p matrix of nonnegative integers; matrix[j][i] is the image of e_i in coordinate j."""

    matrix: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.matrix)
        if rows and len({len(r) for r in rows}) != 1:
            raise ShapeError("ragged K₀ morphism matrix")
        object.__setattr__(self, "matrix", rows)

    @property
    def rows(self) -> int:
        return len(self.matrix)

    @property
    def cols(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    def is_positive(self) -> bool:
        return all(x >= 0 for row in self.matrix for x in row)

    def apply(self, v) -> tuple:
        if len(v) != self.cols:
            raise ShapeError(f"vector of length {len(v)} for a map from rank {self.cols}")
        return tuple(sum(a * x for a, x in zip(row, v)) for row in self.matrix)

    @classmethod
    def identity(cls, p: int) -> "K0Morphism":
        return cls(tuple(tuple(int(i == j) for j in range(p)) for i in range(p)))

    @classmethod
    def from_permutation(cls, perm) -> "K0Morphism":
        """perm[i] is the image coordinate of coordinate i."""
        p = len(perm)
        return cls(tuple(tuple(int(perm[i] == j) for i in range(p)) for j in range(p)))


def compose_morphisms(b: K0Morphism, a: K0Morphism) -> K0Morphism:
    """B·A (first a, then b)."""
    if b.cols != a.rows:
        raise ShapeError(f"cannot compose {b.rows}x{b.cols} after {a.rows}x{a.cols}")
    return K0Morphism(tuple(
        tuple(sum(b.matrix[j][k] * a.matrix[k][i] for k in range(a.rows)) for i in range(a.cols))
        for j in range(b.rows)
    ))


# ----------------------------------------------------------------------
# Per-factor tables
# ----------------------------------------------------------------------
def _require_supported(d: FactorDescriptor) -> FactorDescriptor:
    nd = normalize_descriptor(d)
    if nd.is_spin and nd.params[0] < FACTOR_DEFINITIONS["IV"]["invariant_min"]:
        raise UnsupportedFactorError(f"{d} has no K-JB* table (spin factors start at dimension 3)")
    return nd


def _table_delta(nd: FactorDescriptor) -> frozenset:
    if nd.is_hilbert:
        n = max(nd.params)
        return frozenset({tuple(comb(n - 1, k - 1) for k in range(1, n + 1))})
    if nd.kind == "I":
        n, m = nd.params
        return frozenset((k, k) for k in range(1, min(n, m) + 1))
    if nd.kind == "II":
        n = nd.params[0]
        return frozenset((2 * j,) for j in range(1, n // 2 + 1))
    if nd.kind == "III":
        return frozenset((j,) for j in range(1, nd.params[0] + 1))
    k = nd.spin_pairs
    if nd.spin_parity == "even":
        return frozenset({(2 ** (k - 2), 2 ** (k - 2)), (2 ** (k - 1), 2 ** (k - 1))})
    return frozenset({(2 ** (k - 1),), (2 ** k,)})


def printed_table_delta(d: FactorDescriptor) -> frozenset:
    """Δ exactly as the classification table prints it."""
    nd = _require_supported(d)
    if nd.kind == "I" and not nd.is_hilbert:
        n, m = nd.params
        return frozenset((a, b) for a in range(1, n + 1) for b in range(1, m + 1))
    return _table_delta(nd)


def delta_discrepancy(d: FactorDescriptor) -> dict | None:
    computed = _table_delta(_require_supported(d))
    printed = printed_table_delta(d)
    if printed == computed:
        return None
    return {"descriptor": str(d), "printed": sorted(printed), "computed": sorted(computed)}


def invariant_of_factor(d: FactorDescriptor) -> KJBInvariant:
    nd = _require_supported(d)
    shapes = summand_shapes(nd)
    notes = ()
    discrepancy = delta_discrepancy(d)
    if discrepancy is not None:
        notes = (f"{d}: printed Δ is the full product box; the class-vector computation gives the diagonal",)
    return KJBInvariant(
        rank=len(shapes),
        left_scale=tuple(n for n, _ in shapes),
        right_scale=tuple(m for _, m in shapes),
        delta=_table_delta(nd),
        summand_shapes=shapes,
        notes=notes,
    )


def empty_invariant() -> KJBInvariant:
    """Invariant of the zero triple; the identity of the direct sum."""
    return KJBInvariant(0, (), (), frozenset(), ())


def invariant_direct_sum(a: KJBInvariant, b: KJBInvariant) -> KJBInvariant:
    za, zb = (0,) * a.rank, (0,) * b.rank
    delta = {u + zb for u in a.delta} | {za + v for v in b.delta}
    delta |= {u + v for u in a.delta for v in b.delta}
    return KJBInvariant(
        rank=a.rank + b.rank,
        left_scale=a.left_scale + b.left_scale,
        right_scale=a.right_scale + b.right_scale,
        delta=frozenset(delta),
        summand_shapes=a.summand_shapes + b.summand_shapes,
        notes=a.notes + b.notes,
    )


def invariant_of_triple(ds) -> KJBInvariant:
    """Invariant of a direct sum, with Δ built from every tuple of summand
    tripotents (zero allowed in each summand, not in all of them)."""
    parts = [invariant_of_factor(d) for d in ds]
    if not parts:
        return empty_invariant()
    options = [sorted(p.delta) + [(0,) * p.rank] for p in parts]
    delta = set()
    for combo in product(*options):
        v = tuple(x for part in combo for x in part)
        if any(v):
            delta.add(v)
    shapes = tuple(s for p in parts for s in p.summand_shapes)
    return KJBInvariant(
        rank=len(shapes),
        left_scale=tuple(n for n, _ in shapes),
        right_scale=tuple(m for _, m in shapes),
        delta=frozenset(delta),
        summand_shapes=shapes,
        notes=tuple(note for p in parts for note in p.notes),
    )


def permute_invariant(inv: KJBInvariant, perm) -> KJBInvariant:
    """Move coordinate i to position perm[i]."""
    if sorted(perm) != list(range(inv.rank)):
        raise ShapeError(f"{perm} is not a permutation of {inv.rank} coordinates")

    def move(v):
        out = [None] * len(v)
        for i, x in enumerate(v):
            out[perm[i]] = x
        return tuple(out)

    shapes = move(inv.summand_shapes)
    return KJBInvariant(inv.rank, move(inv.left_scale), move(inv.right_scale),
                        frozenset(move(v) for v in inv.delta), shapes, inv.notes)


# ----------------------------------------------------------------------
# Morphisms and isomorphisms
# ----------------------------------------------------------------------
def is_invariant_morphism(src: KJBInvariant, dst: KJBInvariant, alpha: K0Morphism) -> bool:
    if alpha.rows != dst.rank or alpha.cols != src.rank:
        raise ShapeError(f"a {alpha.rows}x{alpha.cols} matrix cannot map rank {src.rank} to rank {dst.rank}")
    if not alpha.is_positive():
        return False
    if any(x > k for x, k in zip(alpha.apply(src.left_scale), dst.left_scale)):
        return False
    if any(x > l for x, l in zip(alpha.apply(src.right_scale), dst.right_scale)):
        return False
    return all(alpha.apply(v) in dst.delta for v in src.delta)


def find_invariant_isomorphism(a: KJBInvariant, b: KJBInvariant) -> K0Morphism | None:
    perm = _find_permutation(a, b)
    return None if perm is None else K0Morphism.from_permutation(perm)


def _coordinate_profile(inv: KJBInvariant, i: int) -> tuple:
    return inv.summand_shapes[i], frozenset(v[i] for v in inv.delta)


def _find_permutation(a: KJBInvariant, b: KJBInvariant) -> tuple | None:
    if a.rank != b.rank:
        return None
    p = a.rank
    profiles_a = [_coordinate_profile(a, i) for i in range(p)]
    profiles_b = [_coordinate_profile(b, j) for j in range(p)]
    if sorted(map(repr, profiles_a)) != sorted(map(repr, profiles_b)):
        return None
    # only coordinates with identical shape and value profile may be swapped
    buckets: dict = {}
    for j, prof in enumerate(profiles_b):
        buckets.setdefault(prof, []).append(j)
    groups: dict = {}
    for i, prof in enumerate(profiles_a):
        groups.setdefault(prof, []).append(i)
    keys = list(groups)
    for choice in product(*(permutations(buckets[k]) for k in keys)):
        perm = [0] * p
        for k, targets in zip(keys, choice):
            for i, j in zip(groups[k], targets):
                perm[i] = j
        if _maps_delta_onto(a, b, perm):
            return tuple(perm)
    return None


def _maps_delta_onto(a: KJBInvariant, b: KJBInvariant, perm) -> bool:
    image = set()
    for v in a.delta:
        out = [0] * len(v)
        for i, x in enumerate(v):
            out[perm[i]] = x
        image.add(tuple(out))
    return image == b.delta


@dataclass(frozen=True)
class IsomorphismVerdict:
    isomorphic: bool
    permutation: tuple | None = None
    reason: str = ""
    left: tuple = ()
    right: tuple = ()

    @property
    def witness(self) -> K0Morphism | None:
        return None if self.permutation is None else K0Morphism.from_permutation(self.permutation)


def decide_isomorphism(zs, ws) -> IsomorphismVerdict:
    left = tuple(normalize_descriptor(d) for d in zs)
    right = tuple(normalize_descriptor(d) for d in ws)
    a, b = invariant_of_triple(left), invariant_of_triple(right)
    perm = _find_permutation(a, b)
    if perm is not None:
        return IsomorphismVerdict(True, perm, "invariants agree up to a permutation", left, right)
    if a.rank != b.rank:
        reason = f"rank mismatch: {a.rank} vs {b.rank}"
    elif sorted(a.summand_shapes) != sorted(b.summand_shapes):
        reason = "scale mismatch"
    else:
        reason = "delta mismatch"
    logger.debug("not isomorphic: %s", reason)
    return IsomorphismVerdict(False, None, reason, left, right)


# ----------------------------------------------------------------------
# Recovering the summands
# ----------------------------------------------------------------------
def _support(v) -> frozenset:
    return frozenset(i for i, x in enumerate(v) if x)


def _sub_invariant(inv: KJBInvariant, idx: list[int], block: frozenset) -> KJBInvariant:
    shapes = tuple(inv.summand_shapes[i] for i in idx)
    delta = frozenset(tuple(v[i] for i in idx) for v in inv.delta if _support(v) == block)
    return KJBInvariant(len(idx), tuple(n for n, _ in shapes), tuple(m for _, m in shapes), delta, shapes)


def _candidates(shapes) -> list[FactorDescriptor]:
    found = []

    def add(build, *args):
        try:
            d = normalize_descriptor(build(*args))
            _require_supported(d)
        except DomainError:
            return
        if d not in found:
            found.append(d)

    add(type_i, 1, len(shapes))
    for n, m in shapes:
        add(type_i, n, m)
        if n == m:
            add(type_ii, n)
            add(type_iii, n)
            k = n.bit_length() - 1
            if 2 ** k == n:
                add(spin, 2 * k + 1)
                add(spin, 2 * k + 2)
    return found


def identify_summands(inv: KJBInvariant) -> list[FactorDescriptor]:
    """Read the Cartan type of each summand off Δ and the scales."""
    supports = {_support(v) for v in inv.delta}
    atoms = sorted((s for s in supports if not any(t < s for t in supports)), key=min)
    covered = sorted(i for s in atoms for i in s)
    if covered != list(range(inv.rank)):
        raise DomainError("Δ does not split into factor blocks")
    result = []
    for block in atoms:
        idx = sorted(block)
        sub = _sub_invariant(inv, idx, block)
        match = next((c for c in _candidates(sub.summand_shapes)
                      if _find_permutation(sub, invariant_of_factor(c)) is not None), None)
        if match is None:
            raise DomainError(f"no Cartan factor has the invariant block on coordinates {idx}")
        result.append(match)
    return result


# ----------------------------------------------------------------------
# Brute-force Δ oracle
# ----------------------------------------------------------------------
def _orthogonal(u, v) -> bool:
    return ternary_product(u, u, v).is_zero() and ternary_product(v, v, u).is_zero()


def _orthogonal_families(elements):
    """Sums of pairwise orthogonal grid elements, depth first."""
    n = len(elements)
    orth = [[i != j and _orthogonal(elements[i], elements[j]) for j in range(n)] for i in range(n)]

    def extend(chosen, total, start):
        for j in range(start, n):
            if all(orth[i][j] for i in chosen):
                z = elements[j] if total is None else total + elements[j]
                yield z
                yield from extend(chosen + [j], z, j + 1)

    yield from extend([], None, 0)


def _matrix_stream(nd: FactorDescriptor, rng):
    from app.core.grids import build_grid

    grid = build_grid(nd)
    families = []
    for z in _orthogonal_families(list(grid.elements)):
        families.append(z)
        yield z
    rows, cols = grid.factor.shape
    while True:
        z = rng.choice(families)
        lam = sampling.random_unimodular(rng)
        if nd.kind == "I":
            left = sampling.random_orthogonal(rng, rows)
            right = sampling.random_orthogonal(rng, cols)
            yield scale(lam, mat_mul(mat_mul(left, z), right))
        else:
            q = sampling.random_orthogonal(rng, rows)
            yield scale(lam, mat_mul(mat_mul(q, z), transpose(q)))


def _hilbert_stream(nd: FactorDescriptor, rng):
    from app.core.grids import build_grid

    grid = build_grid(nd)
    yield from grid.elements
    rows, cols = grid.factor.shape
    n = rows * cols
    while True:
        q = sampling.random_orthogonal(rng, n)
        a = rng.randrange(n)
        lam = sampling.random_unimodular(rng)
        column = [q[i, a] * lam for i in range(n)]
        yield GaussianRationalMatrix(rows, cols, column)


def _spin_stream(nd: FactorDescriptor, rng):
    from app.core.grids import build_grid

    f = build_factor(nd)
    yield from build_grid(nd).elements
    yield f.basis[0]
    dim = f.dimension
    minimal = True
    while True:
        a, b = rng.sample(range(dim), 2)
        coords = [0] * dim
        if minimal:
            coords[a], coords[b] = HALF, HALF * I
        else:
            coords[a] = 1
        e = apply_spin_automorphism(spin_element(*coords), sampling.random_orthogonal(rng, dim),
                                    sampling.random_unimodular(rng))
        expected = MINIMAL if minimal else MAXIMAL
        if classify_spin_tripotent(e) != expected:
            raise InvariantBreachError(f"automorphic image of a {expected} normal form classified otherwise")
        minimal = not minimal
        yield spin_to_matrix(f, e)


def delta_bruteforce(d: FactorDescriptor, sample_budget: int = 200, seed: int = 42) -> frozenset:
    """Δ from class vectors of enumerated and sampled tripotents."""
    if sample_budget < 1:
        raise DomainError("the sample budget must be positive")
    nd = _require_supported(d)
    if factor_dimension(nd) > MAX_ORACLE_DIMENSION:
        raise DomainError(f"{d} exceeds the oracle's dimension limit {MAX_ORACLE_DIMENSION}")
    f = build_factor(nd)
    rng = sampling.make_rng(seed)
    if nd.is_spin:
        stream = _spin_stream(nd, rng)
    elif nd.is_hilbert:
        stream = _hilbert_stream(nd, rng)
    else:
        stream = _matrix_stream(nd, rng)

    found, last_new, seen = set(), -1, 0
    for z in stream:
        if seen >= sample_budget:
            break
        if not z.is_zero():
            try:
                cls = tripotent_class_vector(f, z)
            except DomainError as e:
                raise InvariantBreachError(f"oracle candidate {seen} of {d} is not a tripotent") from e
            if cls not in found:
                found.add(cls)
                last_new = seen
        seen += 1
    else:
        return frozenset(found)

    if last_new >= sample_budget - max(1, sample_budget // 4):
        raise DeltaNotStabilizedError(
            f"{d}: a new class appeared at sample {last_new} of {sample_budget}")
    logger.debug("%s: %d classes from %d samples", d, len(found), seen)
    return frozenset(found)


def oracle_agreement(d: FactorDescriptor, sample_budget: int = 200, seed: int = 42) -> dict:
    """Compare the table Δ with the oracle; printed-table disagreements are logged."""
    table = invariant_of_factor(d).delta
    oracle = delta_bruteforce(d, sample_budget, seed)
    discrepancy = delta_discrepancy(d)
    if discrepancy is not None:
        logger.warning("%s: printed Δ %s differs from the computed Δ %s",
                       d, discrepancy["printed"], discrepancy["computed"])
    return {
        "descriptor": str(d),
        "success": table == oracle,
        "table": sorted(table),
        "oracle": sorted(oracle),
        "printed_discrepancy": discrepancy,
    }
