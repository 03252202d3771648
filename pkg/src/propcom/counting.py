"""Exact committee counting: brute-force oracle and the equivalence-class DP.

Counting works at any level but the subset dynamic program applies to JR
only (level 1), where satisfaction depends only on which approver sets are
covered and is therefore invariant within a candidate equivalence class.
All counts are Python big integers; pabulib-scale binomials overflow 64
bits routinely.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterable, Sequence

from . import _kernel
from .axioms import Axiom, JR
from .core import (
    DEFAULT_ENUMERATION_CAP,
    Election,
    build_quotient,
    candidate_set,
    enumerate_committees,
)

DEFAULT_SUBSET_CAP = 10**6


class SubsetCapExceeded(Exception):
    """Raised when the quotient has too many small subsets to iterate."""


class _Pascal:
    """Incrementally grown Pascal triangle of big-integer binomials."""

    def __init__(self):
        self._rows = [[1]]

    def binom(self, n: int, k: int) -> int:
        if k < 0 or k > n:
            return 0
        rows = self._rows
        while len(rows) <= n:
            prev = rows[-1]
            rows.append([1] + [prev[i - 1] + prev[i] for i in range(1, len(prev))] + [1])
        return rows[n][k]


_PASCAL = _Pascal()


def completion_table(class_sizes: Sequence[int], max_total: int) -> list[list[int]]:
    """Table T with T[j][s] = #size-s multisets drawing >= 1 candidate from
    each of the first j classes (and nothing else).

    Row 0 is the empty-selection base case; T[j][s] = 0 for s < j,
    T[j][j] = prod(sizes), T[1][s] = C(a_1, s).
    """
    j_max = len(class_sizes)
    table = [[1] + [0] * max_total]
    for j in range(1, j_max + 1):
        size = class_sizes[j - 1]
        prev = table[j - 1]
        row = [0] * (max_total + 1)
        for s in range(j, max_total + 1):
            acc = 0
            for i in range(1, min(s - j + 1, size) + 1):
                acc += _PASCAL.binom(size, i) * prev[s - i]
            row[s] = acc
        table.append(row)
    return table


def completion_count(class_sizes: Sequence[int], total: int) -> int:
    """Number of ways to pick ``total`` candidates covering every class."""
    if total < len(class_sizes):
        return 0
    return completion_table(class_sizes, total)[len(class_sizes)][total]


def count_brute_force(
    election: Election,
    axiom: Axiom = JR,
    must_contain: Iterable[int] = (),
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> int:
    """Exhaustively count size-k committees satisfying ``axiom`` and
    containing ``must_contain``."""
    must = candidate_set(must_contain)
    if must and (must[0] < 0 or must[-1] >= election.m):
        raise ValueError(f"must_contain {must} not a subset of 0..{election.m - 1}")
    if len(must) > election.k:
        return 0
    must_bits = election.committee_bits(must)
    t = axiom.threshold(election.k)
    handle = _kernel.handle_for(election)
    check = _kernel.impl.check
    count = 0
    for committee in enumerate_committees(election, cap):
        bits = election.committee_bits(committee)
        if bits & must_bits != must_bits:
            continue
        if check(handle, committee, t):
            count += 1
    return count


def count_jr_fpt(
    election: Election,
    must_contain: Iterable[int] = (),
    subset_cap: int = DEFAULT_SUBSET_CAP,
) -> int:
    """Count JR committees (containing ``must_contain``) via the candidate
    quotient.

    Every committee decomposes uniquely into the set of equivalence classes
    it touches; JR holds for the committee iff it holds for one
    representative per touched class. So we enumerate class subsets of the
    non-required candidates, test JR on representatives plus the required
    set, and count completions (at least one member per touched class) with
    the table DP. Agrees with :func:`count_brute_force` exactly.
    """
    must = candidate_set(must_contain)
    if must and (must[0] < 0 or must[-1] >= election.m):
        raise ValueError(f"must_contain {must} not a subset of 0..{election.m - 1}")
    if len(must) > election.k:
        return 0
    target = election.k - len(must)
    remaining = [c for c in range(election.m) if c not in set(must)]
    quotient = build_quotient(election, restrict_to=remaining)
    classes = quotient.classes
    width = min(target, len(classes))
    n_subsets = sum(math.comb(len(classes), j) for j in range(width + 1))
    if n_subsets > subset_cap:
        raise SubsetCapExceeded(
            f"{n_subsets} quotient subsets exceed cap {subset_cap}"
        )

    handle = _kernel.handle_for(election)
    check = _kernel.impl.check
    total = 0
    if target == 0:
        return 1 if check(handle, must, 1) else 0
    for j in range(1, width + 1):
        for chosen in itertools.combinations(classes, j):
            sizes = [cls.size for cls in chosen]
            if sum(sizes) < target:
                continue
            reps = candidate_set(must + tuple(cls.representative for cls in chosen))
            if check(handle, reps, 1):
                total += completion_count(sizes, target)
    return total


def axiom_fraction_exact(
    election: Election, axiom: Axiom, cap: int = DEFAULT_ENUMERATION_CAP
) -> Fraction:
    """Share of all C(m, k) committees satisfying the axiom, exact."""
    count = count_brute_force(election, axiom, cap=cap)
    return Fraction(count, math.comb(election.m, election.k))
