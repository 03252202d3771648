import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from propcom import (
    EJRP,
    JR,
    build_election,
    check_ejrp,
    check_jr,
    check_t_ejrp,
    construct_ejrp_committee,
    parse_axiom,
    satisfies,
    t_ejrp_axiom,
)

from .conftest import definition_satisfies, random_election


class TestTenVoterExample:
    """Checks pinned to the worked ten-voter profile."""

    def test_jr_holds_despite_uncovered_voter(self, ten_voter_election):
        # voter 7 is uncovered but alone below the n/k = 2 threshold
        report = check_t_ejrp(ten_voter_election, (0, 2, 3, 4, 6), 1)
        assert report.satisfied

    def test_ejrp_fails_with_witness(self, ten_voter_election):
        report = check_t_ejrp(ten_voter_election, (0, 2, 3, 4, 6), 5)
        assert not report.satisfied
        assert report.witness.candidate == 5
        assert report.witness.group_size == 2
        assert report.witness.voters == (5, 6, 7, 8, 9)

    def test_good_committee_satisfies_ejrp(self, ten_voter_election):
        assert check_t_ejrp(ten_voter_election, (0, 1, 2, 3, 5), 5).satisfied

    def test_full_candidate_set_always_satisfies(self, ten_voter_election):
        for t in range(1, 6):
            assert check_t_ejrp(ten_voter_election, range(9), t).satisfied

    def test_jr_violation_witness(self, ten_voter_election):
        report = check_jr(ten_voter_election, (1, 2, 3, 7, 8))
        assert not report.satisfied
        assert report.witness.candidate == 4
        assert report.witness.group_size == 1
        assert report.witness.voters == (4, 5, 6)


class TestValidation:
    def test_t_out_of_range(self, ten_voter_election):
        with pytest.raises(ValueError):
            check_t_ejrp(ten_voter_election, (0,), 0)
        with pytest.raises(ValueError):
            check_t_ejrp(ten_voter_election, (0,), 6)

    def test_committee_outside_candidates(self, ten_voter_election):
        with pytest.raises(ValueError):
            check_jr(ten_voter_election, (0, 9))

    def test_undersized_committee_accepted(self, ten_voter_election):
        # the power index probes size k-1 sets; thresholds still use k
        report = check_ejrp(ten_voter_election, (0, 1, 2, 3))
        assert isinstance(report.satisfied, bool)

    def test_empty_profile_satisfies_everything(self):
        e = build_election([set(), set()], 4, 2)
        for committee in itertools.combinations(range(4), 2):
            assert check_ejrp(e, committee).satisfied


class TestParseAxiom:
    def test_round_trips(self):
        assert parse_axiom("jr") == JR
        assert parse_axiom("ejrp") == EJRP
        assert parse_axiom("t:3") == t_ejrp_axiom(3)

    def test_thresholds(self):
        assert JR.threshold(7) == 1
        assert EJRP.threshold(7) == 7
        assert t_ejrp_axiom(3).threshold(7) == 3

    def test_rejects_garbage(self):
        with pytest.raises(ValueError):
            parse_axiom("pjr")


class TestOracleEquivalence:
    def test_level_checks_match_subset_enumeration(self):
        # >= 500 seeded elections with n <= 6, m <= 7, both JR and EJR+
        rnd = random.Random(0xA5A5)
        checked = 0
        while checked < 500:
            e = random_election(rnd, max_n=6, max_m=7)
            committee = tuple(sorted(rnd.sample(range(e.m), e.k)))
            for t in (1, e.k):
                expected = definition_satisfies(
                    list(e.ballots), e.n, e.k, committee, t
                )
                got = check_t_ejrp(e, committee, t).satisfied
                assert got == expected, (e.ballots, e.k, committee, t)
            checked += 1

    def test_witnesses_certify_violations(self):
        rnd = random.Random(77)
        seen_violation = 0
        for _ in range(300):
            e = random_election(rnd, max_n=7, max_m=8)
            committee = tuple(sorted(rnd.sample(range(e.m), e.k)))
            report = check_t_ejrp(e, committee, e.k)
            if report.satisfied:
                continue
            seen_violation += 1
            w = report.witness
            assert w.candidate not in committee
            assert set(w.voters) <= set(e.approver_lists[w.candidate])
            assert len(w.voters) * e.k >= w.group_size * e.n
            chosen = set(committee)
            for i in w.voters:
                assert len(e.ballots[i] & chosen) < w.group_size
        assert seen_violation >= 30


class TestProperties:
    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_monotone_in_t(self, data):
        ballots = data.draw(st.lists(st.sets(st.integers(0, 5)), min_size=1, max_size=7))
        m = 6
        k = data.draw(st.integers(1, m))
        e = build_election(ballots, m, k)
        committee = tuple(
            sorted(data.draw(st.sets(st.integers(0, m - 1), min_size=k, max_size=k)))
        )
        t = data.draw(st.integers(1, k))
        if check_t_ejrp(e, committee, t).satisfied:
            for smaller in range(1, t):
                assert check_t_ejrp(e, committee, smaller).satisfied

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_adding_candidates_never_hurts(self, data):
        ballots = data.draw(st.lists(st.sets(st.integers(0, 5)), min_size=1, max_size=7))
        m = 6
        k = data.draw(st.integers(1, m - 1))
        e = build_election(ballots, m, k)
        committee = set(data.draw(st.sets(st.integers(0, m - 1), min_size=k, max_size=k)))
        extra = data.draw(st.integers(0, m - 1))
        t = data.draw(st.integers(1, k))
        if check_t_ejrp(e, tuple(sorted(committee)), t).satisfied:
            grown = tuple(sorted(committee | {extra}))
            assert check_t_ejrp(e, grown, t).satisfied

    def test_ejrp_implies_jr(self, ten_voter_election):
        for committee in itertools.combinations(range(9), 5):
            if satisfies(ten_voter_election, committee, EJRP):
                assert satisfies(ten_voter_election, committee, JR)


class TestConstructEjrp:
    def test_ten_voter(self, ten_voter_election):
        committee = construct_ejrp_committee(ten_voter_election)
        assert len(committee) == 5
        assert check_ejrp(ten_voter_election, committee).satisfied

    def test_k_equals_m(self):
        e = build_election([{0, 1}], 2, 2)
        assert construct_ejrp_committee(e) == (0, 1)

    def test_all_empty_ballots(self):
        e = build_election([set()] * 4, 5, 3)
        assert construct_ejrp_committee(e) == (0, 1, 2)
