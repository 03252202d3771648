"""Pure-Python kernel: bitset axiom checks and rejection-sampling loops.

Reference implementation of the kernel contract. The compiled backend in
``_fast.pyx`` must produce bit-identical results (same RNG stream, same
accepted committees, same counts); parity is enforced by the test suite.
"""

from __future__ import annotations

from ..rng import SplitMix64

NAME = "pure"


class Handle:
    __slots__ = ("n", "m", "k", "ballot_bits", "approver_lists")

    def __init__(self, n, m, k, ballot_bits, approver_lists):
        self.n = n
        self.m = m
        self.k = k
        self.ballot_bits = ballot_bits
        self.approver_lists = approver_lists


def prepare(n: int, m: int, k: int, ballots) -> Handle:
    ballot_bits = []
    approvers = [[] for _ in range(m)]
    for i, ballot in enumerate(ballots):
        word = 0
        for c in ballot:
            word |= 1 << c
            approvers[c].append(i)
        ballot_bits.append(word)
    return Handle(n, m, k, tuple(ballot_bits), tuple(tuple(a) for a in approvers))


def _satisfies(handle: Handle, committee_bits: int, t: int) -> bool:
    n = handle.n
    k = handle.k
    rep = [(b & committee_bits).bit_count() for b in handle.ballot_bits]
    for c in range(handle.m):
        if committee_bits >> c & 1:
            continue
        approvers = handle.approver_lists[c]
        # even the weakest group-size threshold n/k is out of reach
        if len(approvers) * k < n:
            continue
        cnt = [0] * t
        for i in approvers:
            r = rep[i]
            if r < t:
                cnt[r] += 1
        deficient = 0
        for ell in range(1, t + 1):
            deficient += cnt[ell - 1]
            if deficient * k >= ell * n:
                return False
    return True


def check(handle: Handle, committee, t: int) -> bool:
    """True iff the candidate set satisfies t-level representation."""
    bits = 0
    for c in committee:
        bits |= 1 << c
    return _satisfies(handle, bits, t)


def count_satisfying(handle: Handle, t: int, ndraws: int, state: int) -> tuple[int, int]:
    """Draw ``ndraws`` uniform committees, return (new rng state, #satisfying)."""
    gen = SplitMix64(state)
    m = handle.m
    k = handle.k
    nsat = 0
    for _ in range(ndraws):
        committee = gen.sample_committee(m, k)
        bits = 0
        for c in committee:
            bits |= 1 << c
        if _satisfies(handle, bits, t):
            nsat += 1
    return gen.state, nsat


def collect_satisfying(
    handle: Handle, t: int, need: int, max_draws: int, state: int
) -> tuple[int, int, list[tuple[int, ...]]]:
    """Rejection-sample until ``need`` committees satisfy level t.

    Returns (new rng state, draws used, accepted committees); stops early at
    ``max_draws`` with fewer accepted.
    """
    gen = SplitMix64(state)
    m = handle.m
    k = handle.k
    accepted: list[tuple[int, ...]] = []
    draws = 0
    while len(accepted) < need and draws < max_draws:
        committee = gen.sample_committee(m, k)
        draws += 1
        bits = 0
        for c in committee:
            bits |= 1 << c
        if _satisfies(handle, bits, t):
            accepted.append(committee)
    return gen.state, draws, accepted


def pairwise_distance_total(committees, m: int) -> int:
    """Sum of |W_i \\ W_j| over unordered pairs i < j (equal-size sets)."""
    words = []
    for committee in committees:
        bits = 0
        for c in committee:
            bits |= 1 << c
        words.append(bits)
    total = 0
    for i in range(len(words)):
        wi = words[i]
        for j in range(i + 1, len(words)):
            total += (wi & ~words[j]).bit_count()
    return total
