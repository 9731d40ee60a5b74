"""Random arrangements and complexes for stress tests and experiments.

All generators take an explicit `random.Random` so runs are reproducible.
Random bounded complexes are built so the squared differential vanishes by
construction: each map factors through the left kernel of its predecessor.
"""

from __future__ import annotations

from fractions import Fraction
from random import Random

from .arrangement import AFFINE, PROJECTIVE, Arrangement, Hyperplane
from .flats import is_general_position
from .linalg import QMatrix
from .spectral import Complex


def random_fraction(rng: Random, bound: int = 4, max_den: int = 3) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, max_den))


def _random_normal(rng: Random, n: int, bound: int) -> list:
    while True:
        normal = [random_fraction(rng, bound) for _ in range(n)]
        if any(normal):
            return normal


def random_affine_arrangement(
    rng: Random,
    n: int,
    r: int,
    *,
    parallel: float = 0.25,
    central: float = 0.25,
    bound: int = 4,
) -> Arrangement:
    """Mix of parallel, central (through the origin) and generic hyperplanes."""
    hyperplanes: list = []
    seen = set()
    while len(hyperplanes) < r:
        if hyperplanes and rng.random() < parallel:
            base = rng.choice(hyperplanes)
            h = Hyperplane.canonical(base.normal, random_fraction(rng, bound))
        else:
            normal = _random_normal(rng, n, bound)
            constant = 0 if rng.random() < central else random_fraction(rng, bound)
            h = Hyperplane.canonical(normal, constant)
        if h not in seen:
            seen.add(h)
            hyperplanes.append(h)
    return Arrangement(n, tuple(hyperplanes), AFFINE)


def random_projective_arrangement(rng: Random, n: int, r: int, *, bound: int = 4) -> Arrangement:
    hyperplanes: list = []
    seen = set()
    while len(hyperplanes) < r:
        h = Hyperplane.canonical(_random_normal(rng, n + 1, bound), 0)
        if h not in seen:
            seen.add(h)
            hyperplanes.append(h)
    return Arrangement(n, tuple(hyperplanes), PROJECTIVE)


def random_general_position_arrangement(
    rng: Random, n: int, r: int, *, bound: int = 30
) -> Arrangement:
    """Random arrangement retried until verified to be in general position."""
    while True:
        arr = random_affine_arrangement(rng, n, r, parallel=0.0, central=0.0, bound=bound)
        if is_general_position(arr):
            return arr


def random_matrix(rng: Random, rows: int, cols: int, bound: int = 2) -> QMatrix:
    return QMatrix(rows, cols, [rng.randint(-bound, bound) for _ in range(rows * cols)])


def random_complex(
    rng: Random,
    *,
    max_terms: int = 5,
    max_dim: int = 4,
    bound: int = 2,
    start_range: int = 2,
) -> Complex:
    """Bounded complex with d o d = 0: each map factors over the previous left kernel."""
    length = rng.randint(1, max_terms)
    start = rng.randint(-start_range, start_range)
    dims = [rng.randint(1, max_dim) for _ in range(length)]
    degrees = list(range(start, start + length))
    diff = {}
    prev = None
    for k in range(length - 1):
        src, tgt = dims[k], dims[k + 1]
        if prev is None:
            d = random_matrix(rng, tgt, src, bound)
        else:
            # rows of `left` span the left kernel of prev: left @ prev = 0
            left = prev.transpose().kernel_basis().transpose()
            d = random_matrix(rng, tgt, left.rows, bound) @ left
        diff[degrees[k]] = d
        prev = d
    return Complex(dict(zip(degrees, dims)), diff)
