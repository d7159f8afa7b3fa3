"""
3-graded root systems of the classical Cartan factor families, with exact
checks of the root-system and grading axioms.

Roots are tuples of Fractions. Type I systems live in ℓ²(m+n) with the
sum-zero constraint; spin systems carry e_∞ as their last coordinate.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from app.core.errors import DomainError, ShapeError
from app.core.exact_linear import GaussianRationalMatrix, SpanSolver, gr, rank

logger = logging.getLogger(__name__)

RootVector = tuple[Fraction, ...]

ROOT_SYSTEM_TAGS = ("I", "II", "III", "IV_even", "IV_odd")


# ----------------------------------------------------------------------
# Vector helpers
# ----------------------------------------------------------------------
def root(*coords) -> RootVector:
    return tuple(Fraction(c) for c in coords)


def unit(dim: int, k: int, coefficient=1) -> RootVector:
    """coefficient·e_k (0-based k) in ℓ²(dim)."""
    return tuple(Fraction(coefficient) if i == k else Fraction(0) for i in range(dim))


def dot(a: RootVector, b: RootVector) -> Fraction:
    if len(a) != len(b):
        raise ShapeError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def vadd(a: RootVector, b: RootVector) -> RootVector:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: RootVector, b: RootVector) -> RootVector:
    return tuple(x - y for x, y in zip(a, b))


def vneg(a: RootVector) -> RootVector:
    return tuple(-x for x in a)


def vscale(c, a: RootVector) -> RootVector:
    c = Fraction(c)
    return tuple(c * x for x in a)


def is_zero_vector(a: RootVector) -> bool:
    return not any(a)


def format_root(v: RootVector) -> list[str]:
    return [str(x) for x in v]


def reflect(alpha: RootVector, x: RootVector) -> RootVector:
    """s_α(x) = x − 2(⟨x,α⟩/⟨α,α⟩)α."""
    aa = dot(alpha, alpha)
    if not aa:
        raise DomainError("cannot reflect in the zero vector")
    return vsub(x, vscale(2 * dot(x, alpha) / aa, alpha))


def cartan_integer(alpha: RootVector, beta: RootVector, system: "GradedRootSystem | None" = None):
    """2⟨α,β⟩/⟨β,β⟩ as an int when integral, else as a Fraction.

    When both roots belong to `system` a non-integral value is a DomainError.
    """
    bb = dot(beta, beta)
    if not bb:
        raise DomainError("Cartan integer against the zero vector")
    value = 2 * dot(alpha, beta) / bb
    if value.denominator == 1:
        return int(value)
    if system is not None and alpha in system.root_set and beta in system.root_set:
        raise DomainError(f"non-integral Cartan number {value} inside {system.name}")
    return value


def _proportional(a: RootVector, b: RootVector) -> bool:
    return dot(a, b) ** 2 == dot(a, a) * dot(b, b)


# ----------------------------------------------------------------------
# Graded root systems
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class GradedRootSystem:
    family: str
    dim: int
    roots: tuple
    one_part: tuple
    params: tuple = ()
    rank_index: int = 0
    ambient: str = "full"
    tag: str = "custom"
    simple: tuple = field(default=(), compare=False)

    def __post_init__(self):
        roots = tuple(tuple(Fraction(x) for x in r) for r in self.roots)
        one = tuple(tuple(Fraction(x) for x in r) for r in self.one_part)
        for r in roots + one:
            if len(r) != self.dim:
                raise ShapeError(f"root of length {len(r)} in a system of dimension {self.dim}")
        object.__setattr__(self, "roots", roots)
        object.__setattr__(self, "one_part", one)

    @cached_property
    def root_set(self) -> frozenset:
        return frozenset(self.roots)

    @cached_property
    def one_set(self) -> frozenset:
        return frozenset(self.one_part)

    @property
    def minus_one_part(self) -> tuple:
        return tuple(vneg(r) for r in self.one_part)

    @cached_property
    def zero_part(self) -> tuple:
        minus = frozenset(self.minus_one_part)
        return tuple(r for r in self.roots if r not in self.one_set and r not in minus)

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank_index}" if self.rank_index else self.family

    @property
    def ambient_dimension(self) -> int:
        return self.dim - 1 if self.ambient == "sum_zero" else self.dim

    def index_of(self, v: RootVector) -> int:
        return self.roots.index(v)


def _pm_pairs(dim: int, indices) -> list[RootVector]:
    """±e_a ± e_b for a < b drawn from indices."""
    out = []
    indices = list(indices)
    for x, a in enumerate(indices):
        for b in indices[x + 1:]:
            for sa in (1, -1):
                for sb in (1, -1):
                    out.append(vadd(unit(dim, a, sa), unit(dim, b, sb)))
    return out


def build_graded_root_system(factor_type: str, *params: int) -> GradedRootSystem:
    """Root system and 1-part attached to a Cartan factor family.

    Tags: "I" (n, m), "II" (n), "III" (n), "IV_even" (n) and "IV_odd" (n),
    where n counts the pairs of a spin grid.
    """
    if factor_type not in ROOT_SYSTEM_TAGS:
        raise DomainError(f"unknown factor type tag {factor_type!r}")
    if factor_type == "I":
        if len(params) != 2 or min(params) < 1:
            raise DomainError(f"type I needs n, m >= 1, got {params}")
        n, m = params
        size = n + m
        roots = [vsub(unit(size, k), unit(size, l)) for k in range(size) for l in range(size) if k != l]
        one = [vsub(unit(size, i), unit(size, m + j)) for i in range(m) for j in range(n)]
        simple = [vsub(unit(size, k), unit(size, k + 1)) for k in range(size - 1)]
        return GradedRootSystem("A", size, tuple(roots), tuple(one), (n, m), size - 1,
                                "sum_zero", "I", tuple(simple))

    if len(params) != 1:
        raise DomainError(f"type {factor_type} takes one parameter, got {params}")
    (n,) = params

    if factor_type == "II":
        if n < 3:
            raise DomainError(f"type II needs n >= 3, got {n}")
        roots = _pm_pairs(n, range(n))
        one = [vadd(unit(n, i), unit(n, j)) for i in range(n) for j in range(i + 1, n)]
        simple = [vsub(unit(n, i), unit(n, i + 1)) for i in range(n - 1)]
        simple.append(vadd(unit(n, n - 2), unit(n, n - 1)))
        return GradedRootSystem("D", n, tuple(roots), tuple(one), (n,), n, "full", "II", tuple(simple))

    if factor_type == "III":
        if n < 1:
            raise DomainError(f"type III needs n >= 1, got {n}")
        roots = [unit(n, i, s) for i in range(n) for s in (2, -2)] + _pm_pairs(n, range(n))
        one = [vadd(unit(n, i), unit(n, j)) for i in range(n) for j in range(i, n)]
        simple = [vsub(unit(n, i), unit(n, i + 1)) for i in range(n - 1)]
        simple.append(unit(n, n - 1, 2))
        return GradedRootSystem("C", n, tuple(roots), tuple(one), (n,), n, "full", "III", tuple(simple))

    if factor_type in ("IV_even", "IV_odd"):
        if n < 1:
            raise DomainError(f"spin systems need n >= 1, got {n}")
        dim = n + 1
        inf = n
        roots = _pm_pairs(dim, range(dim))
        one = [vadd(unit(dim, inf), unit(dim, j, s)) for j in range(n) for s in (1, -1)]
        # simple roots in the ordered basis f = (e_∞, e_1, ..., e_n)
        f = [inf] + list(range(n))
        simple = [vsub(unit(dim, f[i]), unit(dim, f[i + 1])) for i in range(n)]
        if factor_type == "IV_odd":
            roots += [unit(dim, i, s) for i in range(dim) for s in (1, -1)]
            one.append(unit(dim, inf))
            simple.append(unit(dim, f[-1]))
            family = "B"
        else:
            simple.append(vadd(unit(dim, f[-2]), unit(dim, f[-1])))
            family = "D"
        return GradedRootSystem(family, dim, tuple(roots), tuple(one), (n,), dim, "full",
                                factor_type, tuple(simple))


def standard_systems(max_rank: int) -> list[GradedRootSystem]:
    """Every standard graded system of rank <= max_rank across the four families."""
    systems = []
    for size in range(2, max_rank + 2):
        for n in range(1, size):
            systems.append(build_graded_root_system("I", n, size - n))
    for n in range(4, max_rank + 1):
        systems.append(build_graded_root_system("II", n))
    for n in range(2, max_rank + 1):
        systems.append(build_graded_root_system("III", n))
    for n in range(1, max_rank):
        systems.append(build_graded_root_system("IV_even", n))
        systems.append(build_graded_root_system("IV_odd", n))
    return systems


# ----------------------------------------------------------------------
# Axiom checks
# ----------------------------------------------------------------------
def _entry(axiom: str, witness=None) -> dict:
    if witness is None:
        return {"axiom": axiom, "passed": True, "witness": None}
    return {"axiom": axiom, "passed": False, "witness": [format_root(w) for w in witness]}


def _report(R: GradedRootSystem, entries: list[dict]) -> dict:
    failed = [e["axiom"] for e in entries if not e["passed"]]
    if failed:
        logger.info("%s fails %s", R.name, ", ".join(failed))
    return {
        "success": not failed,
        "system": R.name,
        "params": list(R.params),
        "axioms": entries,
        "message": "all axioms hold" if not failed else f"failed: {', '.join(failed)}",
    }


def _check_generates(R: GradedRootSystem) -> dict:
    zero = next((r for r in R.roots if is_zero_vector(r)), None)
    if zero is not None:
        return _entry("root-(a)", [zero])
    if R.ambient == "sum_zero":
        outside = next((r for r in R.roots if sum(r)), None)
        if outside is not None:
            return _entry("root-(a)", [outside])
    span = 0
    if R.roots:
        mat = GaussianRationalMatrix(len(R.roots), R.dim, (gr(x) for r in R.roots for x in r))
        span = rank(mat)
    if span != R.ambient_dimension:
        return {"axiom": "root-(a)", "passed": False,
                "witness": f"roots span {span} of {R.ambient_dimension} ambient dimensions"}
    return _entry("root-(a)")


def verify_root_axioms(R: GradedRootSystem) -> dict:
    roots = R.roots
    rset = R.root_set
    entries = [_check_generates(R)]

    witness = None
    for a in roots:
        for b in roots:
            if reflect(a, b) not in rset:
                witness = [a, b]
                break
        if witness:
            break
    entries.append(_entry("root-(b)", witness))

    witness = None
    for a in roots:
        for b in roots:
            if not is_zero_vector(b) and Fraction(2 * dot(a, b), dot(b, b)).denominator != 1:
                witness = [a, b]
                break
        if witness:
            break
    entries.append(_entry("root-(c)", witness))

    witness = None
    for a in roots:
        other = next((b for b in roots if b != a and b != vneg(a) and _proportional(a, b)), None)
        if other is not None:
            witness = [a, other]
            break
        if vneg(a) not in rset:
            witness = [a]
            break
    entries.append(_entry("root-(d)", witness))
    return _report(R, entries)


def verify_grading_axioms(R: GradedRootSystem) -> dict:
    entries = []
    rset = R.root_set
    one = R.one_part
    one_set = R.one_set
    zero_set = frozenset(R.zero_part)

    witness = next(([a] for a in one if a not in rset), None)
    if witness is None:
        witness = next(([a, vneg(a)] for a in one if vneg(a) in one_set), None)
    entries.append(_entry("grading-(d)", witness))

    entries.append(_entry("grading-(e)", next(([vneg(a)] for a in one if vneg(a) not in rset), None)))

    # R₀ = (R₁ − R₁) ∩ R: differences of distinct non-orthogonal elements
    reached = set()
    witness = None
    for a in one:
        for b in one:
            if a == b or not dot(a, b):
                continue
            diff = vsub(a, b)
            if diff not in zero_set:
                witness = [a, b]
                break
            reached.add(diff)
        if witness:
            break
    if witness is None:
        missing = next((r for r in R.zero_part if r not in reached), None)
        if missing is not None:
            witness = [missing]
    entries.append(_entry("grading-(f)", witness))

    witness = None
    for a in one:
        for b in one:
            if vadd(a, b) in rset:
                witness = [a, b]
                break
        if witness:
            break
    entries.append(_entry("grading-(g)", witness))

    witness = None
    for a in R.zero_part:
        for b in one:
            s = vadd(a, b)
            if s in rset and s not in one_set:
                witness = [a, b]
                break
        if witness:
            break
    entries.append(_entry("grading-(h)", witness))
    return _report(R, entries)


# ----------------------------------------------------------------------
# Structure
# ----------------------------------------------------------------------
def is_irreducible(R: GradedRootSystem) -> bool:
    if not R.roots:
        raise DomainError("empty root system")
    seen = {0}
    queue = deque([0])
    while queue:
        k = queue.popleft()
        for j, b in enumerate(R.roots):
            if j not in seen and dot(R.roots[k], b):
                seen.add(j)
                queue.append(j)
    return len(seen) == len(R.roots)


def default_generators(R: GradedRootSystem) -> tuple:
    if R.simple:
        return R.simple
    # hand-built systems: first maximal independent subset, descending lex order
    pool = sorted(set(R.one_part) | set(R.zero_part), reverse=True)
    chosen = []
    for r in pool:
        trial = chosen + [r]
        mat = GaussianRationalMatrix(len(trial), R.dim, (gr(x) for v in trial for x in v))
        if rank(mat) == len(trial):
            chosen.append(r)
    return tuple(chosen)


def root_lattice_coordinates(R: GradedRootSystem, v: RootVector, generators=None) -> "tuple[int, ...] | None":
    """Integer coefficients of v over the generators, or None outside the lattice."""
    gens = tuple(generators) if generators is not None else default_generators(R)
    if len(v) != R.dim:
        raise ShapeError(f"vector of length {len(v)} in a system of dimension {R.dim}")
    if not gens:
        return () if is_zero_vector(v) else None
    solver = SpanSolver(GaussianRationalMatrix(1, R.dim, (gr(x) for x in g)) for g in gens)
    coords = solver.coordinates(GaussianRationalMatrix(1, R.dim, (gr(x) for x in v)))
    if coords is None:
        return None
    if any(c.im or c.re.denominator != 1 for c in coords):
        return None
    return tuple(int(c.re) for c in coords)


def simple_roots(R: GradedRootSystem) -> tuple:
    """A ℤ-base of the root lattice: the family's simple roots when known."""
    return default_generators(R)


def root_system_name(R: GradedRootSystem) -> str:
    return R.name
