"""Seeded random inputs for experiments and verification."""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

from .core import InputError, SpaceParams, SymmetricSet, weight_simplex


def generate_random_set(q: int, n: int, density: float, seed: int) -> SymmetricSet:
    """Keep each weight tuple independently with probability ``density``."""
    if not 0 <= density <= 1:
        raise InputError(f"density must lie in [0, 1], got {density}")
    rng = random.Random(seed)
    keep = [t for t in weight_simplex(q, n) if rng.random() < density]
    return SymmetricSet(SpaceParams(q, n), frozenset(keep))


def point_density(s: SymmetricSet) -> Fraction:
    return Fraction(s.size(), s.params.q ** s.params.n)


def random_set_tuple(q: int, n: int, seed: int, densities=(0.3, 0.5, 0.7, 0.9)) -> list[SymmetricSet]:
    """q independent sets; the density cycles with the seed."""
    density = densities[seed % len(densities)]
    return [generate_random_set(q, n, density, seed * 1000 + j) for j in range(q)]


def random_label_sets(q: int, N: int, density: float, seed: int) -> list[frozenset]:
    rng = random.Random(seed)
    labels = list(itertools.product(range(N), repeat=q - 1))
    return [frozenset(t for t in labels if rng.random() < density) for _ in range(q)]


def random_box_set(N: int, density: float, seed: int) -> frozenset:
    """Exactly ceil(density * (2N+1)^2) points of [-N, N]^2."""
    rng = random.Random(seed)
    box = [(x, y) for x in range(-N, N + 1) for y in range(-N, N + 1)]
    k = math.ceil(Fraction(density).limit_denominator(10**6) * len(box))
    return frozenset(rng.sample(box, k))
