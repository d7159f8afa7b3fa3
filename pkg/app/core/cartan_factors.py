"""
Concrete realizations of the classical Cartan factors: rectangular (I),
symplectic (II), hermitian (III) and spin (IV) factors, their triple
products, tripotent tests and K₀ class vectors of tripotents.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache, reduce
from itertools import combinations, permutations
from math import comb

from app.config.factor_definitions import COINCIDENCES, FACTOR_DEFINITIONS
from app.core.errors import DomainError, ShapeError
from app.core.exact_linear import (
    HALF, I, ONE, ZERO,
    GaussianRational, GaussianRationalMatrix, SpanSolver,
    adjoint, gr, identity, linear_combination, mat_mul, matrix_unit,
    rank, scale, tensor, tensor_power, ternary_product, transpose,
)

logger = logging.getLogger(__name__)

MINIMAL = "minimal"
MAXIMAL = "maximal"
NOT_TRIPOTENT = "not_tripotent"
ZERO_CLASS = "zero"


# ----------------------------------------------------------------------
# Descriptors
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class FactorDescriptor:
    kind: str
    params: tuple

    def __post_init__(self):
        definition = FACTOR_DEFINITIONS.get(self.kind)
        if definition is None:
            raise DomainError(f"unknown Cartan factor type {self.kind!r}")
        params = tuple(int(p) for p in self.params)
        if len(params) != definition["arity"]:
            raise DomainError(f"{self.kind} takes {definition['arity']} parameter(s), got {len(params)}")
        if any(p < lo for p, lo in zip(params, definition["min_params"])):
            raise DomainError(f"{self.kind}{params} is below the minimum {definition['min_params']}")
        object.__setattr__(self, "params", params)

    def __str__(self):
        return f"{self.kind}({','.join(str(p) for p in self.params)})"

    @property
    def is_spin(self) -> bool:
        return self.kind == "IV"

    @property
    def is_hilbert(self) -> bool:
        return self.kind == "I" and min(self.params) == 1

    @property
    def spin_parity(self) -> str | None:
        if not self.is_spin:
            return None
        return "even" if self.params[0] % 2 == 0 else "odd"

    @property
    def spin_pairs(self) -> int:
        """Tensor factors of the spin realization (= pairs in the spin grid)."""
        return self.params[0] // 2

    def root_system_key(self) -> tuple:
        if self.is_spin:
            return (f"IV_{self.spin_parity}", self.spin_pairs)
        return (self.kind,) + self.params


def type_i(n: int, m: int) -> FactorDescriptor:
    return FactorDescriptor("I", (n, m))


def type_ii(n: int) -> FactorDescriptor:
    return FactorDescriptor("II", (n,))


def type_iii(n: int) -> FactorDescriptor:
    return FactorDescriptor("III", (n,))


def spin(dim: int) -> FactorDescriptor:
    return FactorDescriptor("IV", (dim,))


def normalize_descriptor(d: FactorDescriptor) -> FactorDescriptor:
    """Resolve the low-dimensional coincidences and the row/column Hilbert spaces."""
    target = COINCIDENCES.get((d.kind, d.params))
    if target is not None:
        return FactorDescriptor(*target)
    if d.kind == "I" and d.params[1] == 1 and d.params[0] > 1:
        return type_i(1, d.params[0])
    return d


def factor_dimension(d: FactorDescriptor) -> int:
    if d.kind == "I":
        n, m = d.params
        return n * m
    n = d.params[0]
    if d.kind == "II":
        return n * (n - 1) // 2
    if d.kind == "III":
        return n * (n + 1) // 2
    return n


# ----------------------------------------------------------------------
# Pauli matrices and spin systems
# ----------------------------------------------------------------------
SIGMA_1 = GaussianRationalMatrix.from_rows([[1, 0], [0, -1]])
SIGMA_2 = GaussianRationalMatrix.from_rows([[0, 1], [1, 0]])
SIGMA_3 = GaussianRationalMatrix.from_rows([[0, 1j], [-1j, 0]])


@lru_cache(maxsize=None)
def spin_system(n: int) -> tuple:
    """s₀ = id, s_{2l+1} = σ₃^l ⊗ σ₁ ⊗ id^{n−l−1}, s_{2l+2} = σ₃^l ⊗ σ₂ ⊗ id^{n−l−1}."""
    if n < 1:
        raise DomainError(f"spin systems need n >= 1, got {n}")
    system = [identity(2 ** n)]
    for l in range(n):
        head = tensor_power(SIGMA_3, l)
        tail = identity(2 ** (n - l - 1))
        for sigma in (SIGMA_1, SIGMA_2):
            system.append(tensor(tensor(head, sigma), tail))
    return tuple(system)


# ----------------------------------------------------------------------
# Concrete factors
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class ConcreteFactor:
    descriptor: FactorDescriptor
    shape: tuple
    basis: tuple
    basis_names: tuple

    @cached_property
    def solver(self) -> SpanSolver:
        return SpanSolver(self.basis)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @cached_property
    def central_projections(self) -> tuple:
        """½(1 ± ω) for an even-dimensional spin factor, ω = s₁⋯s_{d−1} made self-adjoint."""
        d = self.dimension
        omega = reduce(mat_mul, self.basis[1:d])
        size = self.shape[0]
        if mat_mul(omega, omega) != identity(size):
            omega = scale(I, omega)
        return (scale(HALF, identity(size) + omega), scale(HALF, identity(size) - omega))


def _hermitian_basis(n: int):
    basis, names = [], []
    for i in range(1, n + 1):
        basis.append(matrix_unit(n, n, i, i))
        names.append(f"E_{{{i},{i}}}")
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            basis.append(matrix_unit(n, n, i, j) + matrix_unit(n, n, j, i))
            names.append(f"E_{{{i},{j}}}+E_{{{j},{i}}}")
    return basis, names


@lru_cache(maxsize=None)
def build_factor(d: FactorDescriptor) -> ConcreteFactor:
    if d.kind == "I":
        n, m = d.params
        basis = [matrix_unit(n, m, i, j) for i in range(1, n + 1) for j in range(1, m + 1)]
        names = [f"E_{{{i},{j}}}" for i in range(1, n + 1) for j in range(1, m + 1)]
        return ConcreteFactor(d, (n, m), tuple(basis), tuple(names))
    if d.kind == "II":
        n = d.params[0]
        pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        basis = [matrix_unit(n, n, i, j) - matrix_unit(n, n, j, i) for i, j in pairs]
        names = [f"E_{{{i},{j}}}-E_{{{j},{i}}}" for i, j in pairs]
        return ConcreteFactor(d, (n, n), tuple(basis), tuple(names))
    if d.kind == "III":
        n = d.params[0]
        basis, names = _hermitian_basis(n)
        return ConcreteFactor(d, (n, n), tuple(basis), tuple(names))
    dim = d.params[0]
    k = d.spin_pairs
    basis = spin_system(k)[:dim]
    size = 2 ** k
    return ConcreteFactor(d, (size, size), tuple(basis), tuple(f"s_{j}" for j in range(dim)))


def element(f: ConcreteFactor, coords) -> GaussianRationalMatrix:
    """The factor element with the given coordinates over f.basis."""
    coords = list(coords)
    if len(coords) != f.dimension:
        raise ShapeError(f"{len(coords)} coordinates for a {f.dimension}-dimensional factor")
    return linear_combination(coords, f.basis)


def coordinates(f: ConcreteFactor, z: GaussianRationalMatrix) -> tuple:
    if z.shape != f.shape:
        raise ShapeError(f"element of shape {z.shape} in a factor realized in {f.shape}")
    coords = f.solver.coordinates(z)
    if coords is None:
        raise DomainError(f"element lies outside {f.descriptor}")
    return coords


def _require_member(f: ConcreteFactor, *elements):
    for z in elements:
        coordinates(f, z)


def triple_product(f: ConcreteFactor, a, b, c) -> GaussianRationalMatrix:
    _require_member(f, a, b, c)
    return ternary_product(a, b, c)


def is_tripotent(f: ConcreteFactor, z: GaussianRationalMatrix) -> bool:
    _require_member(f, z)
    return ternary_product(z, z, z) == z


def peirce_eigenvalue(f: ConcreteFactor, u, z) -> Fraction | None:
    """λ with {u,u,z} = λz, or None when z is not an eigenvector of u □ u."""
    if not is_tripotent(f, u):
        raise DomainError("Peirce eigenvalues need a tripotent")
    if z.is_zero():
        raise DomainError("the zero element is not an eigenvector")
    return eigenvalue_ratio(triple_product(f, u, u, z), z)


def eigenvalue_ratio(w: GaussianRationalMatrix, z: GaussianRationalMatrix) -> Fraction | None:
    """The real λ with w = λz, if there is one."""
    k = next(idx for idx, v in enumerate(z.entries) if v)
    lam = w.entries[k] / z.entries[k]
    if lam.im or scale(lam, z) != w:
        return None
    return lam.re


# ----------------------------------------------------------------------
# Abstract spin factor
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class SpinElement:
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(gr(c) for c in self.coords))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)


def spin_element(*coords) -> SpinElement:
    return SpinElement(coords)


def _same_dim(*elements: SpinElement):
    if len({e.dim for e in elements}) != 1:
        raise ShapeError("spin elements of different dimensions")


def spin_inner(a: SpinElement, b: SpinElement) -> GaussianRational:
    """⟨a,b⟩ = Σ a_k·conj(b_k)."""
    _same_dim(a, b)
    acc = ZERO
    for x, y in zip(a.coords, b.coords):
        if x and y:
            acc = acc + x * y.conjugate()
    return acc


def spin_conjugate(a: SpinElement) -> SpinElement:
    return SpinElement(tuple(x.conjugate() for x in a.coords))


def _combine(*terms) -> SpinElement:
    dim = terms[0][1].dim
    acc = [ZERO] * dim
    for c, e in terms:
        if c:
            acc = [x + c * y for x, y in zip(acc, e.coords)]
    return SpinElement(tuple(acc))


def spin_triple_product(a: SpinElement, b: SpinElement, c: SpinElement) -> SpinElement:
    """{a,b,c} = ⟨a,b⟩c + ⟨c,b⟩a − ⟨a,c̄⟩b̄."""
    _same_dim(a, b, c)
    return _combine((spin_inner(a, b), c), (spin_inner(c, b), a),
                    (-spin_inner(a, spin_conjugate(c)), spin_conjugate(b)))


def classify_spin_tripotent(e: SpinElement) -> str:
    if e.is_zero():
        return ZERO_CLASS
    norm = spin_inner(e, e)
    q = spin_inner(e, spin_conjugate(e))
    if not q and norm == HALF:
        return MINIMAL
    # e = μr with r self-adjoint of unit norm  <=>  ē = conj(⟨e,ē⟩)·e with |⟨e,ē⟩| = 1
    if q and norm == ONE and q.norm() == 1:
        if spin_conjugate(e) == _combine((q.conjugate(), e)):
            return MAXIMAL
    return NOT_TRIPOTENT


def _require_spin(f: ConcreteFactor):
    if not f.descriptor.is_spin:
        raise DomainError(f"{f.descriptor} is not a spin factor")


def spin_to_matrix(f: ConcreteFactor, e: SpinElement) -> GaussianRationalMatrix:
    """Identification e₀ ↦ i·s₀, e_j ↦ s_j."""
    _require_spin(f)
    if e.dim != f.dimension:
        raise ShapeError(f"{e.dim} coordinates for a {f.dimension}-dimensional spin factor")
    coords = (e.coords[0] * I,) + e.coords[1:]
    return linear_combination(coords, f.basis)


def matrix_to_spin(f: ConcreteFactor, z: GaussianRationalMatrix) -> SpinElement:
    _require_spin(f)
    c = coordinates(f, z)
    return SpinElement((c[0] * -I,) + tuple(c[1:]))


def apply_spin_automorphism(e: SpinElement, q: GaussianRationalMatrix, lam) -> SpinElement:
    """λ·Q(e) for a real orthogonal Q and a unimodular scalar λ."""
    if q.shape != (e.dim, e.dim):
        raise ShapeError(f"a {q.shape} map cannot act on {e.dim} coordinates")
    lam = gr(lam)
    out = []
    for i in range(e.dim):
        acc = ZERO
        for j, x in enumerate(e.coords):
            w = q[i, j]
            if w and x:
                acc = acc + w * x
        out.append(lam * acc)
    return SpinElement(tuple(out))


# ----------------------------------------------------------------------
# K₀ class vectors
# ----------------------------------------------------------------------
def _projection_rank(z: GaussianRationalMatrix) -> int:
    return rank(mat_mul(z, adjoint(z)))


def wedge_matrix(v, k: int) -> GaussianRationalMatrix:
    """Exterior multiplication by v as a map Λ^{k−1} → Λ^k."""
    n = len(v)
    rows = list(combinations(range(n), k))
    cols = list(combinations(range(n), k - 1))
    row_index = {s: r for r, s in enumerate(rows)}
    entries = [ZERO] * (len(rows) * len(cols))
    for c, t in enumerate(cols):
        for i in range(n):
            if i in t or not v[i]:
                continue
            s = tuple(sorted(t + (i,)))
            sign = -1 if sum(1 for x in t if x < i) % 2 else 1
            entries[row_index[s] * len(cols) + c] = v[i] * sign
    return GaussianRationalMatrix(len(rows), len(cols), entries)


def hilbert_class_vector(z: GaussianRationalMatrix) -> tuple:
    v = z.entries
    return tuple(_projection_rank(wedge_matrix(v, k)) for k in range(1, len(v) + 1))


def hodge_dual(z: GaussianRationalMatrix) -> GaussianRationalMatrix:
    """(*z)_{ij} = ½ Σ ε_{ijkl} z_{kl} on 4×4 skew matrices."""
    entries = [ZERO] * 16
    for perm in permutations(range(4)):
        inversions = sum(1 for a in range(4) for b in range(a + 1, 4) if perm[a] > perm[b])
        i, j, k, l = perm
        v = z[k, l]
        if v:
            term = v * HALF
            entries[i * 4 + j] = entries[i * 4 + j] + (-term if inversions % 2 else term)
    return GaussianRationalMatrix(4, 4, entries)


def k0_rank(d: FactorDescriptor) -> int:
    """Number of TRO summands, i.e. the rank of K₀."""
    if d.is_hilbert:
        return max(d.params)
    if d.kind == "I" or (d.kind == "II" and d.params[0] == 4):
        return 2
    if d.is_spin:
        return 2 if d.spin_parity == "even" else 1
    return 1


def tripotent_class_vector(f: ConcreteFactor, z: GaussianRationalMatrix) -> tuple:
    if not is_tripotent(f, z):
        raise DomainError("class vectors are defined for tripotents only")
    d = f.descriptor
    if d.is_hilbert:
        return hilbert_class_vector(z)
    if d.kind == "I":
        zt = transpose(z)
        return _projection_rank(z), _projection_rank(zt)
    if d.kind == "II" and d.params[0] == 4:
        return _projection_rank(z), _projection_rank(hodge_dual(z))
    if d.is_spin:
        zz = mat_mul(z, adjoint(z))
        if d.spin_parity == "odd":
            return (rank(zz),)
        p_plus, p_minus = f.central_projections
        return rank(mat_mul(p_plus, zz)), rank(mat_mul(p_minus, zz))
    return (_projection_rank(z),)


def summand_shapes(d: FactorDescriptor) -> tuple:
    """TRO summand shapes (n_i, m_i) of the universal enveloping TRO."""
    if d.is_hilbert:
        n = max(d.params)
        return tuple((comb(n, k), comb(n, k - 1)) for k in range(1, n + 1))
    if d.kind == "I":
        n, m = d.params
        return (n, m), (m, n)
    if d.is_spin:
        k = d.spin_pairs
        if d.spin_parity == "even":
            return (2 ** (k - 1), 2 ** (k - 1)), (2 ** (k - 1), 2 ** (k - 1))
        return ((2 ** k, 2 ** k),)
    if d.kind == "II" and d.params[0] == 4:
        return (4, 4), (4, 4)
    n = d.params[0]
    return ((n, n),)
