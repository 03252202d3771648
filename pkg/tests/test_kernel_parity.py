"""The compiled and pure kernels must be bit-identical, not just close."""

import random

import pytest

from propcom import _kernel
from propcom._kernel import pure
from propcom.rng import SplitMix64

fast = pytest.importorskip(
    "propcom._kernel._fast", reason="compiled kernel not built"
)


def random_profile(rnd):
    n = rnd.randint(1, 12)
    m = rnd.randint(1, 90)
    k = rnd.randint(1, m)
    ballots = [set(rnd.sample(range(m), rnd.randint(0, m))) for _ in range(n)]
    return n, m, k, ballots


class TestParity:
    def test_checks_match(self):
        rnd = random.Random(1)
        for _ in range(150):
            n, m, k, ballots = random_profile(rnd)
            hp = pure.prepare(n, m, k, ballots)
            hf = fast.prepare(n, m, k, ballots)
            t = rnd.randint(1, k)
            gen = SplitMix64(rnd.getrandbits(64))
            for _ in range(4):
                committee = gen.sample_committee(m, k)
                assert pure.check(hp, committee, t) == fast.check(hf, committee, t)

    def test_streams_match(self):
        rnd = random.Random(2)
        for _ in range(60):
            n, m, k, ballots = random_profile(rnd)
            hp = pure.prepare(n, m, k, ballots)
            hf = fast.prepare(n, m, k, ballots)
            t = rnd.randint(1, k)
            seed = rnd.getrandbits(64)
            assert pure.count_satisfying(hp, t, 30, seed) == fast.count_satisfying(
                hf, t, 30, seed
            )
            got_p = pure.collect_satisfying(hp, t, 5, 400, seed)
            got_f = fast.collect_satisfying(hf, t, 5, 400, seed)
            assert got_p == got_f

    def test_distance_totals_match(self):
        rnd = random.Random(3)
        for _ in range(40):
            m = rnd.randint(1, 90)
            k = rnd.randint(1, m)
            committees = [
                tuple(sorted(rnd.sample(range(m), k))) for _ in range(rnd.randint(0, 12))
            ]
            assert pure.pairwise_distance_total(
                committees, m
            ) == fast.pairwise_distance_total(committees, m)

    def test_uint64_state_wraps(self):
        n, m, k, ballots = 2, 5, 2, [{0}, {1}]
        hp = pure.prepare(n, m, k, ballots)
        hf = fast.prepare(n, m, k, ballots)
        seed = (1 << 64) - 3
        assert pure.count_satisfying(hp, 1, 10, seed) == fast.count_satisfying(
            hf, 1, 10, seed
        )


class TestSelection:
    def test_backend_reports_a_name(self):
        assert _kernel.backend_name() in ("pure", "fast")

    def test_handles_cached_per_backend(self, ten_voter_election):
        first = _kernel.handle_for(ten_voter_election)
        assert _kernel.handle_for(ten_voter_election) is first
