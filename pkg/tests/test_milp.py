import itertools
import random
import sys
import textwrap

import pytest

from propcom import EJRP, JR, build_election, check_ejrp, check_jr, satisfies
from propcom.milp import (
    BackendError,
    DistantPair,
    MilpModel,
    available_backends,
    build_diff_committees,
    build_diff_committees_ejrp_quotient,
    build_jr_not_ejrp,
    build_jr_not_ejrp_quotient,
    build_p_candidates,
    build_p_candidates_ejrp_quotient,
    build_quotient_variant,
    decode_solution,
    diff_committees_fpt_jr,
    solve,
    write_lp,
)
from propcom.milp.model import INTEGER

from .conftest import random_election

HAVE_SCIPY = "scipy" in available_backends()

BACKENDS = ["fallback"] + (["scipy"] if HAVE_SCIPY else [])


def brute_truths(election, required):
    committees = list(itertools.combinations(range(election.m), election.k))
    jr_set = [w for w in committees if satisfies(election, w, JR)]
    ejrp_set = [w for w in committees if satisfies(election, w, EJRP)]
    ejrp_frozen = set(ejrp_set)

    def max_distance(group):
        if not group:
            return None
        return max(len(set(a) - set(b)) for a in group for b in group)

    return {
        "jr_not_ejrp": any(w not in ejrp_frozen for w in jr_set),
        "diff_jr": max_distance(jr_set),
        "diff_ejrp": max_distance(ejrp_set),
        "pc_jr": any(set(required) <= set(w) for w in jr_set),
        "pc_ejrp": any(set(required) <= set(w) for w in ejrp_set),
    }


class TestJrNotEjrp:
    @pytest.mark.parametrize("backend", BACKENDS)
    def test_ten_voter_feasible(self, ten_voter_election, backend):
        model = build_jr_not_ejrp(ten_voter_election)
        outcome = solve(model, backend=backend)
        assert outcome.status == "feasible"
        committee, witness = decode_solution(model, outcome.assignment)
        assert check_jr(ten_voter_election, committee).satisfied
        report = check_ejrp(ten_voter_election, committee)
        assert not report.satisfied
        assert witness.candidate not in committee

    @pytest.mark.parametrize("backend", BACKENDS)
    def test_all_empty_infeasible(self, backend):
        e = build_election([set()] * 4, 5, 2)
        assert solve(build_jr_not_ejrp(e), backend=backend).status == "infeasible"

    def test_k1_never_separates(self):
        e = build_election([{0}, {1}], 3, 1)
        assert solve(build_jr_not_ejrp(e)).status == "infeasible"


class TestDiffCommittees:
    @pytest.mark.parametrize("backend", BACKENDS)
    def test_all_empty_disjoint(self, backend):
        e = build_election([set()] * 3, 4, 2)
        outcome = solve(build_diff_committees(e, JR), backend=backend)
        assert outcome.objective_value == 2

    @pytest.mark.parametrize("axiom", [JR, EJRP])
    def test_ten_voter_optimum(self, ten_voter_election, axiom):
        truth = brute_truths(ten_voter_election, ())[
            "diff_jr" if axiom is JR else "diff_ejrp"
        ]
        model = build_diff_committees(ten_voter_election, axiom)
        outcome = solve(model)
        assert outcome.objective_value == truth == 4
        first, second = decode_solution(model, outcome.assignment)
        assert satisfies(ten_voter_election, first, axiom)
        assert satisfies(ten_voter_election, second, axiom)
        assert len(set(first) - set(second)) == outcome.objective_value


class TestPCandidates:
    @pytest.mark.parametrize("backend", BACKENDS)
    def test_singleton_always_feasible_when_approved(self, backend):
        rnd = random.Random(3)
        for _ in range(10):
            e = random_election(rnd, max_n=6, max_m=6)
            approved = [c for c in range(e.m) if e.approver_lists[c]]
            if not approved:
                continue
            c = rnd.choice(approved)
            outcome = solve(build_p_candidates(e, (c,), JR), backend=backend)
            assert outcome.status == "feasible", (e.ballots, e.k, c)

    def test_ten_voter_tail_pair(self, ten_voter_election):
        model = build_p_candidates(ten_voter_election, (7, 8), JR)
        outcome = solve(model)
        assert outcome.status == "feasible"
        committee = decode_solution(model, outcome.assignment)
        assert {7, 8} <= set(committee)
        assert check_jr(ten_voter_election, committee).satisfied

    def test_oversized_required_set(self, ten_voter_election):
        with pytest.raises(ValueError):
            build_p_candidates(ten_voter_election, range(6), JR)


class TestQuotientVariants:
    def test_ten_voter_agreement(self, ten_voter_election):
        plain = solve(build_jr_not_ejrp(ten_voter_election))
        quotient = solve(build_jr_not_ejrp_quotient(ten_voter_election))
        assert plain.status == quotient.status == "feasible"

    def test_all_empty_single_class(self):
        e = build_election([set()] * 3, 4, 2)
        model = build_jr_not_ejrp_quotient(e)
        # one class: class variables stay O(k); voter variables remain
        class_vars = [v for v in model.variables if v.startswith(("x_", "z_", "u_", "t_"))]
        assert len(class_vars) == 4
        assert solve(model).status == "infeasible"

    @pytest.mark.parametrize("backend", BACKENDS)
    def test_random_agreement(self, backend):
        rnd = random.Random(11)
        for _ in range(8):
            e = random_election(rnd, max_n=5, max_m=6)
            req = tuple(sorted(rnd.sample(range(e.m), min(2, e.k))))
            truths = brute_truths(e, req)
            got = solve(build_jr_not_ejrp_quotient(e), backend=backend)
            assert got.feasible == truths["jr_not_ejrp"]
            got = solve(build_diff_committees_ejrp_quotient(e), backend=backend)
            assert got.objective_value == truths["diff_ejrp"]
            got = solve(build_p_candidates_ejrp_quotient(e, req), backend=backend)
            assert got.feasible == truths["pc_ejrp"]

    def test_dispatcher(self, ten_voter_election):
        model = build_quotient_variant(ten_voter_election, "diff_committees_ejrp")
        assert model.metadata["quotient"] is not None
        with pytest.raises(ValueError):
            build_quotient_variant(ten_voter_election, "nope")


class TestStrictInequalityScaling:
    def test_scaled_rows_equal_rational_comparison(self):
        # "fewer than ell*n/k uncovered" iff "k*count <= ell*n - 1"
        for n in range(1, 9):
            for k in range(1, 7):
                for ell in range(1, k + 1):
                    for count in range(n + 1):
                        exact = count < ell * n / k if (ell * n) % k else count < ell * n // k
                        from fractions import Fraction

                        exact = Fraction(count) < Fraction(ell * n, k)
                        scaled = count * k <= ell * n - 1
                        assert exact == scaled


class TestBackendsAndProtocol:
    def test_infeasible_toy(self):
        model = MilpModel("toy")
        model.add_variable("x")
        model.add_constraint("ge", [(1, "x")], ">=", 1)
        model.add_constraint("le", [(1, "x")], "<=", 0)
        assert solve(model).status == "infeasible"

    def test_generic_maximize(self):
        model = MilpModel("box")
        model.add_variable("x", INTEGER, 0, 5)
        model.add_variable("y", INTEGER, 0, 5)
        model.add_constraint("cap", [(1, "x"), (1, "y")], "<=", 7)
        model.set_objective([(2, "x"), (3, "y")])
        outcome = solve(model)
        assert outcome.status == "optimal"
        assert outcome.objective_value == 19  # x=2, y=5

    def test_zero_timeout(self, ten_voter_election):
        outcome = solve(build_jr_not_ejrp(ten_voter_election), time_limit=0)
        assert outcome.status == "timeout"

    def test_unknown_backend(self, ten_voter_election):
        with pytest.raises(ValueError):
            solve(build_jr_not_ejrp(ten_voter_election), backend="gurobi!!")

    def test_lp_writer_shape(self, ten_voter_election):
        text = write_lp(build_diff_committees(ten_voter_election, JR))
        assert text.startswith("\\ diff_jr")
        assert "Maximize" in text and "Subject To" in text
        assert "Binaries" in text and text.rstrip().endswith("End")
        size_row = next(ln for ln in text.splitlines() if ln.startswith(" size_1:"))
        assert size_row.endswith("= 5")

    def test_subprocess_protocol(self, tmp_path, monkeypatch):
        script = tmp_path / "toy_solver.py"
        script.write_text(STUB_SOLVER, encoding="utf-8")
        monkeypatch.setenv("SOLVER_CMD", f"{sys.executable} {script}")
        e = build_election([{0, 1}, {2}], 3, 2)
        for build, kind in (
            (lambda: build_jr_not_ejrp(e), "feas"),
            (lambda: build_diff_committees(e, JR), "opt"),
        ):
            model = build()
            ours = solve(model, backend="fallback")
            external = solve(model, backend="subprocess")
            assert external.status in ("feasible", "optimal", "infeasible")
            assert external.feasible == ours.feasible
            if kind == "opt" and external.feasible:
                assert external.objective_value == ours.objective_value

    def test_subprocess_requires_command(self, monkeypatch, ten_voter_election):
        monkeypatch.delenv("SOLVER_CMD", raising=False)
        with pytest.raises(BackendError):
            solve(build_jr_not_ejrp(ten_voter_election), backend="subprocess")


class TestFptDiff:
    def test_all_empty_disjoint_pair(self):
        e = build_election([set()] * 3, 4, 2)
        answer, pair = diff_committees_fpt_jr(e, 2)
        assert answer and pair.distance == 2
        assert set(pair.first).isdisjoint(pair.second)

    def test_single_committee(self):
        e = build_election([{0, 1}], 2, 2)
        answer, pair = diff_committees_fpt_jr(e, 1)
        assert not answer
        assert pair.distance == 0

    def test_ten_voter_matches_ilp(self, ten_voter_election):
        outcome = solve(build_diff_committees(ten_voter_election, JR))
        answer, pair = diff_committees_fpt_jr(ten_voter_election)
        assert pair.distance == outcome.objective_value
        assert check_jr(ten_voter_election, pair.first).satisfied
        assert check_jr(ten_voter_election, pair.second).satisfied

    def test_shared_multi_candidate_class(self):
        # only one JR class-subset exists, but its two-member class still
        # lets committees differ
        e = build_election([{0, 1, 2}, {3}], 4, 2)
        answer, pair = diff_committees_fpt_jr(e, 1)
        assert answer and pair.distance == 1

    def test_random_agreement_with_ilp(self):
        rnd = random.Random(29)
        for _ in range(25):
            e = random_election(rnd, max_n=6, max_m=7)
            outcome = solve(build_diff_committees(e, JR))
            answer, pair = diff_committees_fpt_jr(e)
            assert pair.distance == outcome.objective_value, (e.ballots, e.k)
            assert check_jr(e, pair.first).satisfied
            assert check_jr(e, pair.second).satisfied
            assert len(set(pair.first) - set(pair.second)) == pair.distance


STUB_SOLVER = textwrap.dedent(
    '''
    #!/usr/bin/env python3
    """Toy LP-file solver implementing the subprocess protocol.

    Parses the LP subset this package emits, enumerates the integer box,
    and writes "status" plus "name value" lines. Independent of the
    package: its only contract is the LP text and the solution format.
    """
    import itertools
    import re
    import sys


    def parse(text):
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("\\\\")]
        sense = None
        objective = []
        constraints = []
        bounds = {}
        binaries = []
        generals = []
        section = None
        for ln in lines:
            low = ln.lower()
            if low in ("maximize", "minimize"):
                sense = low
                section = "objective"
                continue
            if low == "subject to":
                section = "rows"
                continue
            if low in ("bounds", "binaries", "generals", "end"):
                section = low
                continue
            if section == "objective":
                _, _, rest = ln.partition(":")
                objective = parse_terms(rest)
            elif section == "rows":
                _, _, rest = ln.partition(":")
                m = re.search(r"(<=|>=|=)\\s*(-?\\d+)$", rest)
                op, rhs = m.group(1), int(m.group(2))
                constraints.append((parse_terms(rest[: m.start()]), op, rhs))
            elif section == "bounds":
                lo, var, hi = re.match(r"(-?\\d+) <= (\\S+) <= (-?\\d+)", ln).groups()
                bounds[var] = (int(lo), int(hi))
            elif section == "binaries":
                binaries += ln.split()
            elif section == "generals":
                generals += ln.split()
        return sense, objective, constraints, bounds, binaries, generals


    def parse_terms(text):
        terms = []
        tokens = text.split()
        sign = 1
        coef = None
        for tok in tokens:
            if tok == "+":
                sign = 1
            elif tok == "-":
                sign = -1
            elif re.fullmatch(r"-?\\d+", tok):
                coef = sign * int(tok)
            else:
                terms.append((coef if coef is not None else sign, tok))
                sign, coef = 1, None
        return terms


    def main():
        text = open(sys.argv[1]).read()
        sense, objective, constraints, bounds, binaries, generals = parse(text)
        variables = []
        domains = []
        for name in binaries:
            variables.append(name)
            domains.append(range(2))
        for name in generals:
            lo, hi = bounds[name]
            variables.append(name)
            domains.append(range(lo, hi + 1))
        best = None
        best_val = None
        for values in itertools.product(*domains):
            point = dict(zip(variables, values))
            ok = True
            for terms, op, rhs in constraints:
                lhs = sum(c * point[v] for c, v in terms)
                if op == "<=" and lhs > rhs:
                    ok = False
                elif op == ">=" and lhs < rhs:
                    ok = False
                elif op == "=" and lhs != rhs:
                    ok = False
                if not ok:
                    break
            if not ok:
                continue
            val = sum(c * point[v] for c, v in objective)
            if sense == "minimize" and not objective:
                best = point
                break
            if best_val is None or (val > best_val if sense == "maximize" else val < best_val):
                best, best_val = point, val
        with open(sys.argv[2], "w") as fh:
            if best is None:
                fh.write("infeasible\\n")
            else:
                fh.write("optimal\\n" if objective else "feasible\\n")
                for name, value in best.items():
                    fh.write(f"{name} {value}\\n")


    if __name__ == "__main__":
        main()
    '''
)
