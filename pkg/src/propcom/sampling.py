"""Randomized estimators with Hoeffding (epsilon, delta) guarantees.

One sample budget rules them all: r = ceil(ln(2/delta) / (2 epsilon^2))
draws (direct mode) or acceptances (rejection mode) put the estimate within
epsilon of truth with probability at least 1 - delta. Rejection-mode
estimators also accept a fixed acceptance count instead of (epsilon,
delta); their result then carries epsilon = delta = None.

Every estimator is deterministic given (parameters, seed) and bit-identical
across kernel backends.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from . import _kernel
from .axioms import Axiom
from .core import Committee, Election, expected_random_distance
from .rng import SplitMix64

DEFAULT_DRAW_CAP_FACTOR = 10**4


class DrawCapExceeded(Exception):
    """Rejection sampling hit its draw cap: the axiom fraction is near zero."""


@dataclass(frozen=True)
class EstimatorResult:
    """Point estimate plus the parameters needed to reproduce or audit it.

    ``epsilon``/``delta`` are None when the caller fixed the acceptance
    count directly instead of a guarantee. ``degenerate`` flags a distance
    estimate whose sample contained a single distinct committee.
    """

    estimate: Fraction
    epsilon: Fraction | None
    delta: Fraction | None
    samples_drawn: int
    samples_accepted: int
    seed: int
    degenerate: bool = False


def required_samples(epsilon, delta) -> int:
    """Hoeffding sample budget ceil(ln(2/delta) / (2 epsilon^2))."""
    eps = Fraction(epsilon)
    dlt = Fraction(delta)
    if not 0 < eps < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    if not 0 < dlt < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    return math.ceil(math.log(2 / float(dlt)) / (2 * float(eps) ** 2))


def sample_committee_uniform(election: Election, gen: SplitMix64) -> Committee:
    """One uniform size-k committee; advances the generator by k draws."""
    return gen.sample_committee(election.m, election.k)


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Rational) else Fraction(x)


def estimate_fraction(
    election: Election, axiom: Axiom, epsilon, delta, seed: int
) -> EstimatorResult:
    """Monte Carlo estimate of the axiom fraction from r uniform draws."""
    r = required_samples(epsilon, delta)
    t = axiom.threshold(election.k)
    handle = _kernel.handle_for(election)
    _, satisfied = _kernel.impl.count_satisfying(handle, t, r, seed)
    return EstimatorResult(
        estimate=Fraction(satisfied, r),
        epsilon=_as_fraction(epsilon),
        delta=_as_fraction(delta),
        samples_drawn=r,
        samples_accepted=satisfied,
        seed=seed,
    )


def collect_satisfying_committees(
    election: Election,
    axiom: Axiom,
    need: int,
    seed: int,
    draw_cap_factor: int = DEFAULT_DRAW_CAP_FACTOR,
) -> tuple[int, list[Committee]]:
    """Rejection-sample until ``need`` axiom-satisfying committees are found.

    Returns (draws used, committees). Raises :class:`DrawCapExceeded` after
    ``need * draw_cap_factor`` draws, mirroring a timeout-and-exclude policy
    for near-zero axiom fractions.
    """
    t = axiom.threshold(election.k)
    handle = _kernel.handle_for(election)
    cap = need * draw_cap_factor
    _, draws, accepted = _kernel.impl.collect_satisfying(handle, t, need, cap, seed)
    if len(accepted) < need:
        raise DrawCapExceeded(
            f"found only {len(accepted)}/{need} {axiom} committees in {draws} draws"
        )
    return draws, accepted


def _budget(num_accepted, epsilon, delta):
    if num_accepted is not None:
        if epsilon is not None or delta is not None:
            raise ValueError("pass either num_accepted or (epsilon, delta), not both")
        if num_accepted < 1:
            raise ValueError("num_accepted must be >= 1")
        return int(num_accepted), None, None
    if epsilon is None or delta is None:
        raise ValueError("need num_accepted or both epsilon and delta")
    return required_samples(epsilon, delta), _as_fraction(epsilon), _as_fraction(delta)


def estimate_prevalence(
    election: Election,
    candidate: int,
    axiom: Axiom,
    epsilon=None,
    delta=None,
    seed: int = 0,
    num_accepted: int | None = None,
    draw_cap_factor: int = DEFAULT_DRAW_CAP_FACTOR,
) -> EstimatorResult:
    """Fraction of axiom-satisfying committees containing ``candidate``.

    Rejection sampling: with r accepted committees the estimate lies within
    epsilon of the exact prevalence with probability at least 1 - delta.
    Expected draws scale with the inverse axiom fraction.
    """
    if not 0 <= candidate < election.m:
        raise ValueError(f"candidate {candidate} outside 0..{election.m - 1}")
    r, eps, dlt = _budget(num_accepted, epsilon, delta)
    draws, accepted = collect_satisfying_committees(
        election, axiom, r, seed, draw_cap_factor
    )
    containing = sum(1 for committee in accepted if candidate in committee)
    return EstimatorResult(
        estimate=Fraction(containing, r),
        epsilon=eps,
        delta=dlt,
        samples_drawn=draws,
        samples_accepted=r,
        seed=seed,
    )


def estimate_power_index(
    election: Election,
    candidate: int,
    axiom: Axiom,
    num_accepted: int | None = None,
    epsilon=None,
    delta=None,
    seed: int = 0,
    draw_cap_factor: int = DEFAULT_DRAW_CAP_FACTOR,
) -> EstimatorResult:
    """Fraction of sampled axiom-satisfying committees for which the
    candidate is pivotal: the committee contains it and stops satisfying the
    axiom when it is removed (checked at the election's original k).

    Reported as a fraction of accepted samples; callers holding exact set
    sizes can scale up to the raw pivot count.
    """
    if not 0 <= candidate < election.m:
        raise ValueError(f"candidate {candidate} outside 0..{election.m - 1}")
    r, eps, dlt = _budget(num_accepted, epsilon, delta)
    draws, accepted = collect_satisfying_committees(
        election, axiom, r, seed, draw_cap_factor
    )
    t = axiom.threshold(election.k)
    handle = _kernel.handle_for(election)
    check = _kernel.impl.check
    pivotal = 0
    for committee in accepted:
        if candidate not in committee:
            continue
        reduced = tuple(c for c in committee if c != candidate)
        if not check(handle, reduced, t):
            pivotal += 1
    return EstimatorResult(
        estimate=Fraction(pivotal, r),
        epsilon=eps,
        delta=dlt,
        samples_drawn=draws,
        samples_accepted=r,
        seed=seed,
    )


def estimate_avg_distance(
    election: Election,
    axiom: Axiom,
    num_accepted: int | None = None,
    epsilon=None,
    delta=None,
    seed: int = 0,
    draw_cap_factor: int = DEFAULT_DRAW_CAP_FACTOR,
) -> EstimatorResult:
    """Mean pairwise distance among sampled axiom-satisfying committees,
    normalized by the expected distance of two uniform random committees.

    A sample consisting of one repeated committee (in particular whenever
    m = k) yields estimate 0 with ``degenerate=True``.
    """
    r, eps, dlt = _budget(num_accepted, epsilon, delta)
    if r < 2:
        raise ValueError("need at least two accepted committees for distances")
    draws, accepted = collect_satisfying_committees(
        election, axiom, r, seed, draw_cap_factor
    )
    distinct = len(set(accepted))
    if distinct == 1:
        return EstimatorResult(
            estimate=Fraction(0),
            epsilon=eps,
            delta=dlt,
            samples_drawn=draws,
            samples_accepted=r,
            seed=seed,
            degenerate=True,
        )
    total = _kernel.impl.pairwise_distance_total(accepted, election.m)
    pairs = r * (r - 1) // 2
    normalizer = expected_random_distance(election.m, election.k)
    return EstimatorResult(
        estimate=Fraction(total, pairs) / normalizer,
        epsilon=eps,
        delta=dlt,
        samples_drawn=draws,
        samples_accepted=r,
        seed=seed,
    )
