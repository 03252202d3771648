"""Election data model, committee arithmetic and candidate equivalence classes.

Candidate and voter ids are dense integers (0..m-1 and 0..n-1); names from
data files live in metadata, never in the hot path. Ballots are stored both
as frozensets and as bitsets over candidates, approver sets as bitsets over
voters, so axiom checks are word-parallel. All types are immutable after
construction and safe to share across threads.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

Committee = tuple[int, ...]

DEFAULT_ENUMERATION_CAP = 10**7


class EnumerationCapExceeded(Exception):
    """Raised when an exhaustive operation would exceed its committee cap."""


def candidate_set(ids: Iterable[int]) -> Committee:
    """Normalize a collection of candidate ids to a sorted duplicate-free tuple."""
    out = tuple(sorted(set(ids)))
    return out


class Election:
    """An approval-based committee election.

    Parameters
    ----------
    ballots : sequence of candidate-id collections, one per voter
    num_candidates : number of candidates m (ids 0..m-1)
    committee_size : target committee size k, 1 <= k <= m
    name : optional label carried through reports
    """

    __slots__ = (
        "num_voters",
        "num_candidates",
        "committee_size",
        "ballots",
        "ballot_bits",
        "approver_bits",
        "approver_lists",
        "name",
        "meta",
        "_kernel_handle",
    )

    def __init__(
        self,
        ballots: Sequence[Iterable[int]],
        num_candidates: int,
        committee_size: int,
        name: str = "",
        meta: dict | None = None,
    ):
        m = int(num_candidates)
        k = int(committee_size)
        if m < 1:
            raise ValueError(f"need at least one candidate, got m={m}")
        if not 1 <= k <= m:
            raise ValueError(f"committee size k={k} outside [1, {m}]")
        frozen = []
        for i, ballot in enumerate(ballots):
            b = frozenset(ballot)
            for c in b:
                if not 0 <= c < m:
                    raise ValueError(f"ballot of voter {i} contains candidate {c} outside 0..{m - 1}")
            frozen.append(b)
        if not frozen:
            raise ValueError("need at least one voter")
        self.num_voters = len(frozen)
        self.num_candidates = m
        self.committee_size = k
        self.ballots = tuple(frozen)
        self.name = name
        self.meta = dict(meta) if meta else {}

        ballot_bits = []
        approver_bits = [0] * m
        for i, b in enumerate(frozen):
            word = 0
            for c in b:
                word |= 1 << c
                approver_bits[c] |= 1 << i
            ballot_bits.append(word)
        self.ballot_bits = tuple(ballot_bits)
        self.approver_bits = tuple(approver_bits)
        self.approver_lists = tuple(
            tuple(i for i in range(self.num_voters) if approver_bits[c] >> i & 1) for c in range(m)
        )
        self._kernel_handle = None

    @property
    def n(self) -> int:
        return self.num_voters

    @property
    def m(self) -> int:
        return self.num_candidates

    @property
    def k(self) -> int:
        return self.committee_size

    def approval_score(self, c: int) -> int:
        return len(self.approver_lists[c])

    def with_committee_size(self, k: int) -> "Election":
        """Same profile with a different k (ballots are shared, not copied)."""
        return Election(self.ballots, self.num_candidates, k, name=self.name, meta=self.meta)

    def committee_bits(self, committee: Iterable[int]) -> int:
        word = 0
        for c in committee:
            if not 0 <= c < self.num_candidates:
                raise ValueError(f"candidate {c} outside 0..{self.num_candidates - 1}")
            word |= 1 << c
        return word

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<Election{label} n={self.n} m={self.m} k={self.k}>"


def build_election(
    ballots: Sequence[Iterable[int]],
    num_candidates: int,
    committee_size: int,
    name: str = "",
    meta: dict | None = None,
) -> Election:
    """Validate and build an :class:`Election` with derived approver indexes."""
    return Election(ballots, num_candidates, committee_size, name=name, meta=meta)


def committee_distance(first: Iterable[int], second: Iterable[int]) -> int:
    """Number of candidates in ``first`` missing from ``second``.

    Requires equal sizes, under which the measure is symmetric.
    """
    a = frozenset(first)
    b = frozenset(second)
    if len(a) != len(b):
        raise ValueError(f"committee sizes differ: {len(a)} vs {len(b)}")
    return len(a - b)


def expected_random_distance(m: int, k: int) -> Fraction:
    """Expected distance between two independent uniform size-k subsets of m.

    Closed form k*(m-k)/m: each member of the first committee is missing
    from the second with probability (m-k)/m. Validated exhaustively against
    the all-pairs average for every m <= 8 in the test suite.
    """
    if not 1 <= k <= m:
        raise ValueError(f"k={k} outside [1, {m}]")
    return Fraction(k * (m - k), m)


def enumerate_committees(
    election: Election, cap: int = DEFAULT_ENUMERATION_CAP
) -> Iterator[Committee]:
    """Yield every size-k committee once, in lexicographic order."""
    total = math.comb(election.m, election.k)
    if total > cap:
        raise EnumerationCapExceeded(
            f"C({election.m},{election.k}) = {total} exceeds enumeration cap {cap}"
        )
    return iter(itertools.combinations(range(election.m), election.k))


@dataclass(frozen=True)
class CandidateClass:
    """A maximal set of candidates approved by exactly the same voters."""

    representative: int
    members: tuple[int, ...]
    approvers: tuple[int, ...]
    approver_bits: int = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class QuotientStructure:
    """Partition of the candidates into equal-approver-set classes."""

    classes: tuple[CandidateClass, ...]
    class_of: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.classes)


def build_quotient(election: Election, restrict_to: Iterable[int] | None = None) -> QuotientStructure:
    """Group candidates by identical approver sets.

    ``restrict_to`` optionally limits the partition to a candidate subset
    (classes of the induced sub-profile). Classes are ordered by smallest
    member id; the representative is the smallest member.
    """
    pool = range(election.m) if restrict_to is None else sorted(set(restrict_to))
    groups: dict[int, list[int]] = {}
    for c in pool:
        groups.setdefault(election.approver_bits[c], []).append(c)
    classes = []
    for bits, members in sorted(groups.items(), key=lambda kv: kv[1][0]):
        members_t = tuple(members)
        approvers = tuple(i for i in range(election.n) if bits >> i & 1)
        classes.append(CandidateClass(members_t[0], members_t, approvers, bits))
    class_of = [-1] * election.m
    for idx, cls in enumerate(classes):
        for c in cls.members:
            class_of[c] = idx
    return QuotientStructure(tuple(classes), tuple(class_of))
