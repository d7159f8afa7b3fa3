"""
Seeded exact random objects: rational orthogonal matrices built from
Householder reflections and unimodular Gaussian rationals.
"""

import random
from fractions import Fraction

from app.core.exact_linear import (
    GaussianRational, GaussianRationalMatrix, identity, mat_mul,
)


def make_rng(seed: int) -> random.Random:
    return random.Random(seed)


def random_integer_vector(rng: random.Random, dim: int, bound: int = 3) -> list[int]:
    while True:
        v = [rng.randint(-bound, bound) for _ in range(dim)]
        if any(v):
            return v


def householder(v) -> GaussianRationalMatrix:
    """I − 2vvᵀ/(vᵀv) for a nonzero rational vector v."""
    v = [Fraction(x) for x in v]
    norm = sum(x * x for x in v)
    n = len(v)
    return GaussianRationalMatrix(n, n, (
        GaussianRational((1 if i == j else 0) - 2 * v[i] * v[j] / norm)
        for i in range(n) for j in range(n)
    ))


def random_orthogonal(rng: random.Random, dim: int, reflections: int = 2) -> GaussianRationalMatrix:
    q = identity(dim)
    for _ in range(reflections):
        q = mat_mul(householder(random_integer_vector(rng, dim)), q)
    return q


def random_unimodular(rng: random.Random, bound: int = 4) -> GaussianRational:
    """(a + bi)²/(a² + b²): every value has modulus one."""
    while True:
        a, b = rng.randint(-bound, bound), rng.randint(-bound, bound)
        if a or b:
            n = a * a + b * b
            return GaussianRational(Fraction(a * a - b * b, n), Fraction(2 * a * b, n))
