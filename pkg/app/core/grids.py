"""
Standard grids of the classical Cartan factors and their labeling by the
1-part of the associated 3-graded root system.
"""

import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from app.config.factor_definitions import FACTOR_DEFINITIONS
from app.core.cartan_factors import (
    ConcreteFactor, FactorDescriptor, build_factor, coordinates, eigenvalue_ratio,
    spin_system, tripotent_class_vector,
)
from app.core.errors import DomainError, GridVerificationError
from app.core.exact_linear import (
    HALF, I, adjoint, linear_combination, mat_mul, matrix_unit, scale, ternary_product,
)
from app.core.root_systems import (
    GradedRootSystem, build_graded_root_system, cartan_integer, dot, format_root, unit, vadd, vsub,
)

logger = logging.getLogger(__name__)

PEIRCE_VALUES = (Fraction(0), Fraction(1, 2), Fraction(1))


@dataclass(frozen=True)
class Grid:
    factor: ConcreteFactor
    elements: tuple
    labels: tuple
    names: tuple
    root_system: GradedRootSystem
    in_stated_range: bool = True

    @property
    def descriptor(self) -> FactorDescriptor:
        return self.factor.descriptor


def build_grid(d: FactorDescriptor) -> Grid:
    f = build_factor(d)
    R = build_graded_root_system(*d.root_system_key())
    elements, labels, names = [], [], []

    if d.kind == "I":
        n, m = d.params
        size = n + m
        for r in range(1, n + 1):
            for c in range(1, m + 1):
                elements.append(matrix_unit(n, m, r, c))
                labels.append(vsub(unit(size, c - 1), unit(size, m + r - 1)))
                names.append(f"E_{{{r},{c}}}")
    elif d.kind == "II":
        n = d.params[0]
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                elements.append(matrix_unit(n, n, i, j) - matrix_unit(n, n, j, i))
                labels.append(vadd(unit(n, i - 1), unit(n, j - 1)))
                names.append(f"E_{{{i},{j}}}-E_{{{j},{i}}}")
    elif d.kind == "III":
        n = d.params[0]
        for i in range(1, n + 1):
            elements.append(matrix_unit(n, n, i, i))
            labels.append(unit(n, i - 1, 2))
            names.append(f"E_{{{i},{i}}}")
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                elements.append(matrix_unit(n, n, i, j) + matrix_unit(n, n, j, i))
                labels.append(vadd(unit(n, i - 1), unit(n, j - 1)))
                names.append(f"E_{{{i},{j}}}+E_{{{j},{i}}}")
    else:
        k = d.spin_pairs
        s = spin_system(k)
        dim = k + 1
        inf = unit(dim, k)
        elements.append(scale(HALF, s[0] - s[1]))
        elements.append(scale(-HALF, s[0] + s[1]))
        labels += [vadd(inf, unit(dim, 0)), vsub(inf, unit(dim, 0))]
        names += ["u_1", "~u_1"]
        for j in range(1, k):
            elements.append(linear_combination([HALF, HALF * I], [s[2 * j], s[2 * j + 1]]))
            elements.append(linear_combination([HALF, -HALF * I], [s[2 * j], s[2 * j + 1]]))
            labels += [vadd(inf, unit(dim, j)), vsub(inf, unit(dim, j))]
            names += [f"u_{j + 1}", f"~u_{j + 1}"]
        if d.spin_parity == "odd":
            elements.append(s[2 * k])
            labels.append(inf)
            names.append("u_0")

    grid_min = FACTOR_DEFINITIONS[d.kind].get("grid_min", 0)
    in_range = not (d.kind == "II" and d.params[0] < grid_min)
    if not in_range:
        logger.info("%s lies outside the stated grid range (n >= %d)", d, grid_min)
    return Grid(f, tuple(elements), tuple(labels), tuple(names), R, in_range)


# ----------------------------------------------------------------------
# Verification
# ----------------------------------------------------------------------
def _check(name: str, witness=None) -> dict:
    return {"check": name, "passed": witness is None, "witness": witness}


def _pair_invariant(alpha, beta) -> tuple:
    return cartan_integer(beta, alpha), dot(alpha, alpha), dot(beta, beta)


def _eigenvalue_table(g: Grid, tripotent: list[bool]) -> tuple[dict, dict, list | None]:
    """Eigenvalues of every ordered pair whose first element is a tripotent,
    the invariant dictionary they induce, and the first conflicting pair of pairs."""
    products = [(mat_mul(u, adjoint(u)), mat_mul(adjoint(u), u)) for u in g.elements]
    values = {}
    for a, u in enumerate(g.elements):
        if not tripotent[a]:
            continue
        left, right = products[a]
        for b, z in enumerate(g.elements):
            if z.is_zero():
                values[(a, b)] = None
                continue
            w = scale(HALF, mat_mul(left, z) + mat_mul(z, right))
            values[(a, b)] = eigenvalue_ratio(w, z)
    dictionary, conflict = {}, None
    for (a, b), lam in values.items():
        if lam is None:
            continue
        key = _pair_invariant(g.labels[a], g.labels[b])
        seen = dictionary.get(key)
        if seen is None:
            dictionary[key] = (lam, (g.names[a], g.names[b]))
        elif seen[0] != lam and conflict is None:
            conflict = [list(seen[1]), [g.names[a], g.names[b]]]
    return values, {k: v[0] for k, v in dictionary.items()}, conflict


def verify_grid(g: Grid) -> dict:
    checks = []
    labels = list(g.labels)
    if len(set(labels)) != len(labels):
        dup = next(l for l in labels if labels.count(l) > 1)
        checks.append(_check("bijection", {"duplicate_label": format_root(dup)}))
    elif set(labels) != set(g.root_system.one_part):
        missing = [format_root(r) for r in g.root_system.one_part if r not in set(labels)]
        extra = [format_root(l) for l in labels if l not in g.root_system.one_set]
        checks.append(_check("bijection", {"missing": missing, "extra": extra}))
    else:
        checks.append(_check("bijection"))

    outside = []
    for name, z in zip(g.names, g.elements):
        try:
            coordinates(g.factor, z)
        except DomainError:
            outside.append(name)
    checks.append(_check("membership", outside or None))

    tripotent = [ternary_product(z, z, z) == z for z in g.elements]
    failures = [name for name, ok in zip(g.names, tripotent) if not ok]
    checks.append(_check("tripotent", failures or None))

    values, dictionary, conflict = _eigenvalue_table(g, tripotent)
    bad = next(((a, b) for (a, b), lam in values.items() if lam not in PEIRCE_VALUES), None)
    if bad is not None:
        lam = values[bad]
        checks.append(_check("peirce", {"pair": [g.names[bad[0]], g.names[bad[1]]],
                                        "eigenvalue": None if lam is None else str(lam)}))
    else:
        checks.append(_check("peirce"))
    checks.append(_check("dictionary", {"conflicting_pairs": conflict} if conflict else None))

    success = all(c["passed"] for c in checks)
    if not success:
        logger.info("grid %s fails %s", g.descriptor,
                    ", ".join(c["check"] for c in checks if not c["passed"]))
    return {
        "success": success,
        "grid": str(g.descriptor),
        "size": len(g.elements),
        "root_system": g.root_system.name,
        "in_stated_range": g.in_stated_range,
        "checks": checks,
        "table": _render_table(dictionary),
    }


def _render_table(dictionary: dict) -> list[dict]:
    return [
        {"cartan_integer": c, "norm_alpha": str(na), "norm_beta": str(nb), "eigenvalue": str(lam)}
        for (c, na, nb), lam in sorted(dictionary.items(), key=lambda kv: tuple(map(Fraction, kv[0])))
    ]


def grid_root_table(g: Grid) -> dict:
    """(cartan_integer(β,α), ⟨α,α⟩, ⟨β,β⟩) ↦ Peirce eigenvalue of g_β under g_α □ g_α."""
    report = verify_grid(g)
    if not report["success"]:
        raise GridVerificationError(f"grid {g.descriptor} failed verification", report)
    _, dictionary, _ = _eigenvalue_table(g, [True] * len(g.elements))
    return dictionary


def is_connected_grid(g: Grid) -> bool:
    """Connectedness of the graph joining non-orthogonal grid elements."""
    if not g.elements:
        raise DomainError("empty grid")
    values, _, _ = _eigenvalue_table(g, [True] * len(g.elements))
    seen, queue = {0}, deque([0])
    while queue:
        a = queue.popleft()
        for b in range(len(g.elements)):
            if b not in seen and (values.get((a, b)) or values.get((b, a))):
                seen.add(b)
                queue.append(b)
    return len(seen) == len(g.elements)


def grid_classes(g: Grid) -> set:
    return {tripotent_class_vector(g.factor, z) for z in g.elements}
