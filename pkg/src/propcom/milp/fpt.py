"""Combinatorial search for the most distant pair of JR committees.

Works on the candidate quotient: a committee satisfies JR exactly when the
set of equivalence classes it touches does (one representative each), so it
suffices to enumerate JR class-subsets of size <= k and reason about pairs
of them. For a pair (X1, X2) the unavoidable overlap of committees built on
them is

    max(k_c, 2k - m, 0)

where k_c counts shared classes that are singletons (a shared class with a
second member lets the two committees pick different representatives), and
2k - m is the pigeonhole overlap once the candidate pool runs dry. The
maximal distance for the pair is k minus that, and both committees can be
completed greedily to realize it. Pairs are iterated with repetition: the
best pair may use the same class-subset twice (distinct members of a
multi-candidate class).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .. import axioms
from ..core import Committee, Election, build_quotient, candidate_set
from ..counting import DEFAULT_SUBSET_CAP, SubsetCapExceeded


@dataclass(frozen=True)
class DistantPair:
    distance: int
    first: Committee
    second: Committee


def _pair_distance(k: int, m: int, shared_singletons: int) -> int:
    return k - max(shared_singletons, 2 * k - m, 0)


def _realize_pair(election: Election, classes, x1: frozenset, x2: frozenset):
    """Build committees on the two class-subsets achieving the bound."""
    k, m = election.k, election.m
    first: list[int] = []
    second: list[int] = []
    used: set[int] = set()
    for q in sorted(x1):
        rep = classes[q].members[0]
        first.append(rep)
        used.add(rep)
    for q in sorted(x2):
        members = classes[q].members
        if q in x1 and len(members) > 1:
            second.append(members[1])
            used.add(members[1])
        else:
            # fresh class, or a shared singleton (overlap forced)
            second.append(members[0])
            used.add(members[0])
    pool = [c for c in range(m) if c not in used]
    while len(first) < k:
        if pool:
            first.append(pool.pop(0))
        else:
            # pool exhausted: reuse second-committee members (overlap is
            # forced once every candidate is in play)
            first.append(min(set(second) - set(first)))
    while len(second) < k:
        if pool:
            second.append(pool.pop(0))
        else:
            second.append(min(set(first) - set(second)))
    return tuple(sorted(first)), tuple(sorted(second))


def diff_committees_fpt_jr(
    election: Election,
    min_distance: int | None = None,
    subset_cap: int = DEFAULT_SUBSET_CAP,
) -> tuple[bool, DistantPair]:
    """Most distant pair of JR committees via quotient-subset enumeration.

    Returns (answer, pair): ``answer`` is whether two JR committees at
    distance >= ``min_distance`` exist (True alongside the optimum when no
    threshold is given); ``pair`` realizes the maximal distance and is
    post-checkable with :func:`propcom.axioms.check_jr`.
    """
    k, m = election.k, election.m
    quotient = build_quotient(election)
    classes = quotient.classes
    width = min(k, len(classes))
    n_subsets = sum(math.comb(len(classes), j) for j in range(width + 1))
    if n_subsets > subset_cap:
        raise SubsetCapExceeded(f"{n_subsets} quotient subsets exceed cap {subset_cap}")

    jr_subsets = []
    for j in range(width + 1):
        for chosen in itertools.combinations(range(len(classes)), j):
            reps = candidate_set(classes[q].members[0] for q in chosen)
            if axioms.satisfies(election, reps, axioms.JR):
                jr_subsets.append(frozenset(chosen))
    if not jr_subsets:
        raise RuntimeError("a JR committee always exists; quotient search found none")

    best_d = -1
    best_pair = None
    for x1, x2 in itertools.combinations_with_replacement(jr_subsets, 2):
        shared_singletons = sum(1 for q in x1 & x2 if classes[q].size == 1)
        d = _pair_distance(k, m, shared_singletons)
        if d > best_d:
            best_d = d
            best_pair = (x1, x2)
            if best_d == k:
                break
    first, second = _realize_pair(election, classes, *best_pair)
    pair = DistantPair(best_d, first, second)
    answer = True if min_distance is None else min_distance <= best_d
    return answer, pair
