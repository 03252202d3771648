"""Synthetic election generators: resampling and Euclidean approval models.

Both are pure functions of (parameters, seed) using the package RNG, so
batches parallelize by seed. Probabilities are compared exactly against
64-bit draws; only the Euclidean geometry uses binary floating point, and
the resulting ballots are exact sets either way.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .core import Election, build_election
from .rng import SplitMix64


def _frac01(value, name: str) -> Fraction:
    f = Fraction(value)
    if not 0 <= f <= 1:
        raise ValueError(f"{name} must lie in [0, 1], got {value}")
    return f


def gen_resampling(n: int, m: int, k: int, p, phi, seed: int) -> Election:
    """Resampling model: ballots are noisy copies of a central ballot.

    A central ballot of floor(p*m) candidates is drawn uniformly once.
    Every voter starts from it; each candidate independently keeps its
    central membership with probability 1 - phi, and otherwise is
    re-approved with probability p.
    """
    p = _frac01(p, "p")
    phi = _frac01(phi, "phi")
    gen = SplitMix64(seed)
    central_size = int(p * m)
    central = set(gen.sample_committee(m, central_size)) if central_size else set()
    ballots = []
    for _ in range(n):
        ballot = set()
        for c in range(m):
            if gen.bernoulli(phi.numerator, phi.denominator):
                if gen.bernoulli(p.numerator, p.denominator):
                    ballot.add(c)
            elif c in central:
                ballot.add(c)
        ballots.append(ballot)
    name = f"resampling-n{n}-m{m}-k{k}-p{float(p):g}-phi{float(phi):g}-s{seed}"
    return build_election(ballots, m, k, name=name, meta={"model": "resampling"})


def gen_euclidean(n: int, m: int, k: int, radius, dim: int, seed: int) -> Election:
    """Euclidean approval model in the unit cube.

    Voters then candidates are drawn uniformly from [0, 1]^dim (coordinates
    in axis order); a voter approves every candidate within Euclidean
    distance ``radius``, compared as squared distance in double precision.
    """
    r = float(radius)
    if r < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    if dim not in (1, 2):
        raise ValueError(f"dim must be 1 or 2, got {dim}")
    gen = SplitMix64(seed)
    voters = [tuple(gen.uniform01() for _ in range(dim)) for _ in range(n)]
    candidates = [tuple(gen.uniform01() for _ in range(dim)) for _ in range(m)]
    r2 = r * r
    ballots = []
    for v in voters:
        ballot = set()
        for c, point in enumerate(candidates):
            d2 = sum((a - b) ** 2 for a, b in zip(v, point))
            if d2 <= r2:
                ballot.add(c)
        ballots.append(ballot)
    name = f"euclidean-n{n}-m{m}-k{k}-r{r}-d{dim}-s{seed}"
    return build_election(ballots, m, k, name=name, meta={"model": "euclidean"})


def resampling_parameter_grid() -> list[tuple[Fraction, Fraction]]:
    """The (p, phi) grid used for the synthetic resampling dataset."""
    return [
        (Fraction(p, 10), Fraction(phi, 10)) for p in (1, 3) for phi in (6, 7, 8, 9)
    ]


def euclidean_parameter_grid() -> list[tuple[Fraction, int]]:
    """The (radius, dim) grid used for the synthetic Euclidean dataset."""
    return [(Fraction(r, 100), d) for r in range(4, 33, 4) for d in (1, 2)]


def expected_euclidean_overlap_1d(radius) -> float:
    """P(|x - y| <= r) for independent uniforms on [0, 1]: 2r - r^2 (r <= 1)."""
    r = min(float(radius), 1.0)
    return 2 * r - r * r


def cube_diameter(dim: int) -> float:
    return math.sqrt(dim)
