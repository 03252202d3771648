"""Shared fixtures and independent oracles.

``definition_violations`` is the ground-truth axiom check used throughout:
a literal transcription of the representation definition that enumerates
every voter subset. It shares no code with the package's bitset kernels.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from propcom import build_election

# 10 voters, 9 candidates (0-indexed): voters 0,1 approve {0,1,2};
# voters 2,3 approve {0,1,3}; voter 4 approves {4}; voters 5,6 approve
# {4,5}; voter 7 approves {5}; voter 8 approves {5,6,7}; voter 9 approves
# {5,6,8}. With k=5 the committee {0,2,3,4,6} satisfies JR but not EJR+
# (candidate 5 is approved by five voters none of whom gets two seats).
TEN_VOTER_BALLOTS = [
    {0, 1, 2},
    {0, 1, 2},
    {0, 1, 3},
    {0, 1, 3},
    {4},
    {4, 5},
    {4, 5},
    {5},
    {5, 6, 7},
    {5, 6, 8},
]


@pytest.fixture(scope="session")
def ten_voter_election():
    return build_election(TEN_VOTER_BALLOTS, 9, 5, name="ten-voter")


def definition_violations(ballots, n, k, committee, t):
    """All (candidate, group size) pairs violating the representation
    definition, found by enumerating every approver subset.

    A pair (c, ell) violates iff c is unselected and some subset of c's
    approvers of size at least ell*n/k consists only of voters approving
    fewer than ell committee members.
    """
    committee = set(committee)
    violations = []
    for c in range(max((max(b, default=-1) for b in ballots), default=-1) + 1):
        if c in committee:
            continue
        approvers = [i for i in range(n) if c in ballots[i]]
        for ell in range(1, t + 1):
            threshold = Fraction(ell * n, k)
            found = False
            for size in range(len(approvers), -1, -1):
                if size < threshold:
                    break
                for group in itertools.combinations(approvers, size):
                    if all(len(ballots[i] & committee) < ell for i in group):
                        found = True
                        break
                if found:
                    break
            if found:
                violations.append((c, ell))
    return violations


def definition_satisfies(ballots, n, k, committee, t):
    return not definition_violations(ballots, n, k, committee, t)


def random_election(rnd: random.Random, max_n: int, max_m: int, k: int | None = None):
    """A random election with ballots drawn at a random density."""
    n = rnd.randint(1, max_n)
    m = rnd.randint(1, max_m)
    density = rnd.choice([0.15, 0.3, 0.5, 0.7])
    ballots = [{c for c in range(m) if rnd.random() < density} for _ in range(n)]
    if k is None:
        k = rnd.randint(1, m)
    return build_election(ballots, m, k)
