"""Integer-program builders for the committee-space decision problems.

Four plain families (JR-but-not-EJR+ feasibility, most-distant committee
pairs, committees through a required candidate set, for JR and for EJR+)
plus quotient variants whose variable count depends only on the number of
candidate equivalence classes.

Strict inequalities are converted once and for all by integer scaling:
"sum < ell * n / k" becomes "k * sum <= ell * n - 1", exact because every
quantity involved is integral. Big-M constants are m (representation rows)
and k*n after scaling (class-saturation rows); tightness is covered by the
cross-validation tests.

Every builder has a matching ``encode_*`` (solution -> assignment, used by
the exhaustive fallback and by soundness tests) and ``decode_*``
(assignment -> solution).
"""

from __future__ import annotations

from ..axioms import EJRP, JR, Axiom, Witness
from ..core import Election, QuotientStructure, build_quotient, candidate_set
from .model import EQUAL, GREATER_EQUAL, INTEGER, LESS_EQUAL, MilpModel

__all__ = [
    "build_jr_not_ejrp",
    "build_diff_committees",
    "build_p_candidates",
    "build_jr_not_ejrp_quotient",
    "build_diff_committees_ejrp_quotient",
    "build_p_candidates_ejrp_quotient",
    "build_quotient_variant",
    "decode_solution",
]


# ---------------------------------------------------------------------------
# shared constraint groups


def _committee_size_row(model, name, var_names, k):
    model.add_constraint(name, [(1, v) for v in var_names], EQUAL, k)


def _coverage_rows(model, election, x_of, y_of, tag):
    # y_i = 1 exactly when voter i approves someone selected
    for i in range(election.n):
        ballot = sorted(election.ballots[i])
        for c in ballot:
            model.add_constraint(
                f"{tag}_cover_{i}_{c}", [(1, x_of(c)), (-1, y_of(i))], LESS_EQUAL, 0
            )
        model.add_constraint(
            f"{tag}_uncov_{i}",
            [(1, y_of(i))] + [(-1, x_of(c)) for c in ballot],
            LESS_EQUAL,
            0,
        )


def _jr_rows(model, election, y_of, tag, approvers_of=None, items=None):
    # for every candidate (or class): fewer than n/k approvers uncovered,
    # scaled: k * (|N| - sum y) <= n - 1
    n, k = election.n, election.k
    items = range(election.m) if items is None else items
    for c in items:
        approvers = election.approver_lists[c] if approvers_of is None else approvers_of(c)
        model.add_constraint(
            f"{tag}_jr_{c}",
            [(-k, y_of(i)) for i in approvers],
            LESS_EQUAL,
            n - 1 - k * len(approvers),
        )


def _rep_level_rows(model, election, x_of, y_of, tag, classes_of=None):
    # y_{i,ell} = 1 only if voter i approves >= ell selected candidates
    for i in range(election.n):
        items = sorted(election.ballots[i]) if classes_of is None else classes_of(i)
        for ell in range(1, election.k + 1):
            model.add_constraint(
                f"{tag}_rep_{i}_{ell}",
                [(ell, y_of(i, ell))] + [(-1, x_of(c)) for c in items],
                LESS_EQUAL,
                0,
            )


def _ejrp_rows(model, election, guard_of, y_of, tag, approvers_of=None, items=None):
    # for every candidate (or class) and level: fewer than ell*n/k approvers
    # are ell-deficient unless the guard disables the row; scaled by k with
    # big-M k*n
    n, k = election.n, election.k
    items = range(election.m) if items is None else items
    for c in items:
        approvers = election.approver_lists[c] if approvers_of is None else approvers_of(c)
        for ell in range(1, k + 1):
            model.add_constraint(
                f"{tag}_ejrp_{c}_{ell}",
                [(-k, y_of(i, ell)) for i in approvers] + [(-k * n, guard_of(c))],
                LESS_EQUAL,
                ell * n - 1 - k * len(approvers),
            )


def _covered(election: Election, committee_bits: int, i: int) -> int:
    return 1 if election.ballot_bits[i] & committee_bits else 0


def _rep(election: Election, committee_bits: int, i: int) -> int:
    return (election.ballot_bits[i] & committee_bits).bit_count()


# ---------------------------------------------------------------------------
# JR-but-not-EJR+


def build_jr_not_ejrp(election: Election) -> MilpModel:
    """Feasible iff some size-k committee satisfies JR but violates EJR+.

    Variables: committee membership x_c, coverage y_i, violating-group
    membership v_i, witness choice u_c and the group size ell >= 2 (a
    level-1 violation would contradict JR, so only ell >= 2 is searched).
    """
    n, m, k = election.n, election.m, election.k
    model = MilpModel(f"jr_not_ejrp[{election.name or 'election'}]")
    model.metadata = {"problem": "jr_not_ejrp", "election": election, "quotient": None}
    x = [model.add_variable(f"x_{c}") for c in range(m)]
    y = [model.add_variable(f"y_{i}") for i in range(n)]
    v = [model.add_variable(f"v_{i}") for i in range(n)]
    u = [model.add_variable(f"u_{c}") for c in range(m)]
    ell = model.add_variable("ell", INTEGER, 2, k)

    _committee_size_row(model, "size", x, k)
    _coverage_rows(model, election, x.__getitem__, y.__getitem__, "w")
    _jr_rows(model, election, y.__getitem__, "w")
    # the violating group is large enough: k * sum v_i >= n * ell
    model.add_constraint(
        "group_size", [(k, vi) for vi in v] + [(-n, ell)], GREATER_EQUAL, 0
    )
    model.add_constraint("one_witness", [(1, uc) for uc in u], EQUAL, 1)
    for c in range(m):
        model.add_constraint(f"witness_out_{c}", [(1, u[c]), (1, x[c])], LESS_EQUAL, 1)
    for i in range(n):
        for c in range(m):
            if c not in election.ballots[i]:
                model.add_constraint(
                    f"witness_approved_{i}_{c}", [(1, u[c]), (1, v[i])], LESS_EQUAL, 1
                )
    # group members are deficient: sum_{c in A_i} x_c <= ell - 1 + m(1 - v_i)
    for i in range(n):
        model.add_constraint(
            f"deficient_{i}",
            [(1, x[c]) for c in sorted(election.ballots[i])] + [(-1, ell), (m, v[i])],
            LESS_EQUAL,
            m - 1,
        )
    return model


def encode_jr_not_ejrp(election: Election, committee, witness: Witness) -> dict[str, int]:
    bits = election.committee_bits(committee)
    assignment = {f"x_{c}": (bits >> c) & 1 for c in range(election.m)}
    assignment.update({f"y_{i}": _covered(election, bits, i) for i in range(election.n)})
    group = set(witness.voters)
    assignment.update({f"v_{i}": int(i in group) for i in range(election.n)})
    assignment.update({f"u_{c}": int(c == witness.candidate) for c in range(election.m)})
    assignment["ell"] = witness.group_size
    return assignment


def decode_jr_not_ejrp(election: Election, assignment) -> tuple[tuple[int, ...], Witness]:
    committee = tuple(c for c in range(election.m) if assignment[f"x_{c}"])
    candidate = next(c for c in range(election.m) if assignment[f"u_{c}"])
    voters = tuple(i for i in range(election.n) if assignment[f"v_{i}"])
    return committee, Witness(candidate, assignment["ell"], voters)


# ---------------------------------------------------------------------------
# most-distant pairs


def build_diff_committees(election: Election, axiom: Axiom = JR) -> MilpModel:
    """Maximize |W1 \\ W2| over pairs of axiom-satisfying committees."""
    n, m, k = election.n, election.m, election.k
    model = MilpModel(f"diff_{axiom}[{election.name or 'election'}]")
    model.metadata = {
        "problem": "diff_committees",
        "election": election,
        "axiom": axiom,
        "quotient": None,
    }
    x = [model.add_variable(f"x_{c}") for c in range(m)]
    a = [model.add_variable(f"a_{c}") for c in range(m)]
    z = [model.add_variable(f"z_{c}") for c in range(m)]
    _committee_size_row(model, "size_1", x, k)
    _committee_size_row(model, "size_2", a, k)
    if axiom.threshold(k) == 1:
        y = [model.add_variable(f"y_{i}") for i in range(n)]
        b = [model.add_variable(f"b_{i}") for i in range(n)]
        _coverage_rows(model, election, x.__getitem__, y.__getitem__, "w1")
        _coverage_rows(model, election, a.__getitem__, b.__getitem__, "w2")
        _jr_rows(model, election, y.__getitem__, "w1")
        _jr_rows(model, election, b.__getitem__, "w2")
    else:
        y = {
            (i, ell): model.add_variable(f"y_{i}_{ell}")
            for i in range(n)
            for ell in range(1, k + 1)
        }
        b = {
            (i, ell): model.add_variable(f"b_{i}_{ell}")
            for i in range(n)
            for ell in range(1, k + 1)
        }
        _rep_level_rows(model, election, x.__getitem__, lambda i, ell: y[i, ell], "w1")
        _rep_level_rows(model, election, a.__getitem__, lambda i, ell: b[i, ell], "w2")
        _ejrp_rows(model, election, x.__getitem__, lambda i, ell: y[i, ell], "w1")
        _ejrp_rows(model, election, a.__getitem__, lambda i, ell: b[i, ell], "w2")
    for c in range(m):
        model.add_constraint(f"diff_in_{c}", [(1, z[c]), (-1, x[c])], LESS_EQUAL, 0)
        model.add_constraint(f"diff_out_{c}", [(1, z[c]), (1, a[c])], LESS_EQUAL, 1)
    model.set_objective([(1, zc) for zc in z])
    return model


def encode_diff_committees(
    election: Election, axiom: Axiom, first, second
) -> dict[str, int]:
    bits1 = election.committee_bits(first)
    bits2 = election.committee_bits(second)
    m, n, k = election.m, election.n, election.k
    assignment = {f"x_{c}": (bits1 >> c) & 1 for c in range(m)}
    assignment.update({f"a_{c}": (bits2 >> c) & 1 for c in range(m)})
    assignment.update(
        {f"z_{c}": int(bits1 >> c & 1 and not bits2 >> c & 1) for c in range(m)}
    )
    if axiom.threshold(k) == 1:
        assignment.update({f"y_{i}": _covered(election, bits1, i) for i in range(n)})
        assignment.update({f"b_{i}": _covered(election, bits2, i) for i in range(n)})
    else:
        for i in range(n):
            rep1 = _rep(election, bits1, i)
            rep2 = _rep(election, bits2, i)
            for ell in range(1, k + 1):
                assignment[f"y_{i}_{ell}"] = int(rep1 >= ell)
                assignment[f"b_{i}_{ell}"] = int(rep2 >= ell)
    return assignment


def decode_diff_committees(election: Election, assignment):
    first = tuple(c for c in range(election.m) if assignment[f"x_{c}"])
    second = tuple(c for c in range(election.m) if assignment[f"a_{c}"])
    return first, second


# ---------------------------------------------------------------------------
# committees through a required candidate set


def build_p_candidates(election: Election, required, axiom: Axiom = JR) -> MilpModel:
    """Feasible iff an axiom-satisfying committee contains ``required``."""
    req = candidate_set(required)
    if req and (req[0] < 0 or req[-1] >= election.m):
        raise ValueError(f"required set {req} not a subset of 0..{election.m - 1}")
    if len(req) > election.k:
        raise ValueError(f"required set of size {len(req)} exceeds k={election.k}")
    n, m, k = election.n, election.m, election.k
    model = MilpModel(f"p_candidates_{axiom}[{election.name or 'election'}]")
    model.metadata = {
        "problem": "p_candidates",
        "election": election,
        "axiom": axiom,
        "required": req,
        "quotient": None,
    }
    x = [model.add_variable(f"x_{c}") for c in range(m)]
    _committee_size_row(model, "size", x, k)
    if axiom.threshold(k) == 1:
        y = [model.add_variable(f"y_{i}") for i in range(n)]
        _coverage_rows(model, election, x.__getitem__, y.__getitem__, "w")
        _jr_rows(model, election, y.__getitem__, "w")
    else:
        y = {
            (i, ell): model.add_variable(f"y_{i}_{ell}")
            for i in range(n)
            for ell in range(1, k + 1)
        }
        _rep_level_rows(model, election, x.__getitem__, lambda i, ell: y[i, ell], "w")
        _ejrp_rows(model, election, x.__getitem__, lambda i, ell: y[i, ell], "w")
    for c in req:
        model.add_constraint(f"required_{c}", [(1, x[c])], EQUAL, 1)
    return model


def encode_p_candidates(election: Election, axiom: Axiom, committee) -> dict[str, int]:
    bits = election.committee_bits(committee)
    n, m, k = election.n, election.m, election.k
    assignment = {f"x_{c}": (bits >> c) & 1 for c in range(m)}
    if axiom.threshold(k) == 1:
        assignment.update({f"y_{i}": _covered(election, bits, i) for i in range(n)})
    else:
        for i in range(n):
            rep = _rep(election, bits, i)
            for ell in range(1, k + 1):
                assignment[f"y_{i}_{ell}"] = int(rep >= ell)
    return assignment


def decode_p_candidates(election: Election, assignment):
    return tuple(c for c in range(election.m) if assignment[f"x_{c}"])


# ---------------------------------------------------------------------------
# quotient variants: variable counts depend on #classes (and k), not m


def _class_approver_lists(quotient: QuotientStructure):
    return [cls.approvers for cls in quotient.classes]


def _classes_of_voter(election: Election, quotient: QuotientStructure):
    out = [[] for _ in range(election.n)]
    for q, cls in enumerate(quotient.classes):
        for i in cls.approvers:
            out[i].append(q)
    return out


def build_jr_not_ejrp_quotient(election: Election) -> MilpModel:
    """Class-level JR-but-not-EJR+ model.

    Per class: presence x_q, selected count z_q, witness marker u_q and
    witness count t_q. The exclusion z_q + t_q <= |class| guarantees the
    witness candidate is genuinely outside the committee (class-level
    analogue of the candidate-level row u_c + x_c <= 1).
    """
    n, m, k = election.n, election.m, election.k
    quotient = build_quotient(election)
    classes = quotient.classes
    voter_classes = _classes_of_voter(election, quotient)
    model = MilpModel(f"jr_not_ejrp_quotient[{election.name or 'election'}]")
    model.metadata = {
        "problem": "jr_not_ejrp",
        "election": election,
        "quotient": quotient,
    }
    x = [model.add_variable(f"x_{q}") for q in range(len(classes))]
    z = [model.add_variable(f"z_{q}", INTEGER, 0, cls.size) for q, cls in enumerate(classes)]
    y = [model.add_variable(f"y_{i}") for i in range(n)]
    v = [model.add_variable(f"v_{i}") for i in range(n)]
    u = [model.add_variable(f"u_{q}") for q in range(len(classes))]
    t = [model.add_variable(f"t_{q}", INTEGER, 0, cls.size) for q, cls in enumerate(classes)]
    ell = model.add_variable("ell", INTEGER, 2, k)

    _committee_size_row(model, "size", z, k)
    for i in range(n):
        for q in voter_classes[i]:
            model.add_constraint(f"w_cover_{i}_{q}", [(1, x[q]), (-1, y[i])], LESS_EQUAL, 0)
        model.add_constraint(
            f"w_uncov_{i}", [(1, y[i])] + [(-1, x[q]) for q in voter_classes[i]], LESS_EQUAL, 0
        )
    for q, cls in enumerate(classes):
        model.add_constraint(f"link_lo_{q}", [(1, x[q]), (-1, z[q])], LESS_EQUAL, 0)
        model.add_constraint(f"link_hi_{q}", [(1, z[q]), (-cls.size, x[q])], LESS_EQUAL, 0)
    _jr_rows(
        model,
        election,
        y.__getitem__,
        "w",
        approvers_of=lambda q: classes[q].approvers,
        items=range(len(classes)),
    )
    model.add_constraint("group_size", [(k, vi) for vi in v] + [(-n, ell)], GREATER_EQUAL, 0)
    model.add_constraint("some_witness", [(1, tq) for tq in t], GREATER_EQUAL, 1)
    for q, cls in enumerate(classes):
        model.add_constraint(f"wit_lo_{q}", [(1, u[q]), (-1, t[q])], LESS_EQUAL, 0)
        model.add_constraint(f"wit_hi_{q}", [(1, t[q]), (-cls.size, u[q])], LESS_EQUAL, 0)
        model.add_constraint(
            f"wit_excl_{q}", [(1, z[q]), (1, t[q])], LESS_EQUAL, cls.size
        )
    for i in range(n):
        in_classes = set(voter_classes[i])
        for q in range(len(classes)):
            if q not in in_classes:
                model.add_constraint(
                    f"wit_approved_{i}_{q}", [(1, u[q]), (1, v[i])], LESS_EQUAL, 1
                )
    for i in range(n):
        model.add_constraint(
            f"deficient_{i}",
            [(1, z[q]) for q in voter_classes[i]] + [(-1, ell), (m, v[i])],
            LESS_EQUAL,
            m - 1,
        )
    return model


def encode_jr_not_ejrp_quotient(
    election: Election, quotient: QuotientStructure, committee, witness: Witness
) -> dict[str, int]:
    bits = election.committee_bits(committee)
    counts = [sum(1 for c in cls.members if bits >> c & 1) for cls in quotient.classes]
    assignment = {}
    for q, cls in enumerate(quotient.classes):
        assignment[f"x_{q}"] = int(counts[q] > 0)
        assignment[f"z_{q}"] = counts[q]
        wq = quotient.class_of[witness.candidate]
        assignment[f"u_{q}"] = int(q == wq)
        assignment[f"t_{q}"] = int(q == wq)
    assignment.update({f"y_{i}": _covered(election, bits, i) for i in range(election.n)})
    group = set(witness.voters)
    assignment.update({f"v_{i}": int(i in group) for i in range(election.n)})
    assignment["ell"] = witness.group_size
    return assignment


def decode_jr_not_ejrp_quotient(election: Election, quotient, assignment):
    committee = []
    for q, cls in enumerate(quotient.classes):
        committee.extend(cls.members[: assignment[f"z_{q}"]])
    witness_class = next(q for q in range(len(quotient.classes)) if assignment[f"u_{q}"])
    selected = set(committee)
    candidate = next(c for c in quotient.classes[witness_class].members if c not in selected)
    voters = tuple(i for i in range(election.n) if assignment[f"v_{i}"])
    return tuple(sorted(committee)), Witness(candidate, assignment["ell"], voters)


def _saturation_link_rows(model, classes, count_of, hat_of, tag):
    # hat_q may be 1 only when the whole class is selected (count = size);
    # the companion row is kept although implied by the count's upper bound
    for q, cls in enumerate(classes):
        s = cls.size
        model.add_constraint(
            f"{tag}_sat_ub_{q}", [(-1, count_of(q)), (-s, hat_of(q))], GREATER_EQUAL, -2 * s
        )
        model.add_constraint(
            f"{tag}_sat_lo_{q}", [(s, hat_of(q)), (-1, count_of(q))], LESS_EQUAL, 0
        )


def build_diff_committees_ejrp_quotient(election: Election) -> MilpModel:
    """Class-level most-distant EJR+ pair.

    Selected counts replace memberships; a saturation flag per class and
    committee disables the deficiency row once every class member is
    selected (no witness candidate remains there). The per-class distance
    contribution is min(count_1, size - count_2), linearized through z_q.
    """
    n, m, k = election.n, election.m, election.k
    quotient = build_quotient(election)
    classes = quotient.classes
    voter_classes = _classes_of_voter(election, quotient)
    model = MilpModel(f"diff_ejrp_quotient[{election.name or 'election'}]")
    model.metadata = {
        "problem": "diff_committees",
        "election": election,
        "axiom": EJRP,
        "quotient": quotient,
    }
    nq = len(classes)
    x = [model.add_variable(f"x_{q}", INTEGER, 0, cls.size) for q, cls in enumerate(classes)]
    a = [model.add_variable(f"a_{q}", INTEGER, 0, cls.size) for q, cls in enumerate(classes)]
    z = [model.add_variable(f"z_{q}", INTEGER, 0, cls.size) for q, cls in enumerate(classes)]
    xh = [model.add_variable(f"xh_{q}") for q in range(nq)]
    ah = [model.add_variable(f"ah_{q}") for q in range(nq)]
    y = {
        (i, ell): model.add_variable(f"y_{i}_{ell}")
        for i in range(n)
        for ell in range(1, k + 1)
    }
    b = {
        (i, ell): model.add_variable(f"b_{i}_{ell}")
        for i in range(n)
        for ell in range(1, k + 1)
    }
    _committee_size_row(model, "size_1", x, k)
    _committee_size_row(model, "size_2", a, k)
    _rep_level_rows(
        model, election, x.__getitem__, lambda i, ell: y[i, ell], "w1",
        classes_of=voter_classes.__getitem__,
    )
    _rep_level_rows(
        model, election, a.__getitem__, lambda i, ell: b[i, ell], "w2",
        classes_of=voter_classes.__getitem__,
    )
    _saturation_link_rows(model, classes, x.__getitem__, xh.__getitem__, "w1")
    _saturation_link_rows(model, classes, a.__getitem__, ah.__getitem__, "w2")
    _ejrp_rows(
        model, election, xh.__getitem__, lambda i, ell: y[i, ell], "w1",
        approvers_of=lambda q: classes[q].approvers, items=range(nq),
    )
    _ejrp_rows(
        model, election, ah.__getitem__, lambda i, ell: b[i, ell], "w2",
        approvers_of=lambda q: classes[q].approvers, items=range(nq),
    )
    for q, cls in enumerate(classes):
        model.add_constraint(f"diff_in_{q}", [(1, z[q]), (-1, x[q])], LESS_EQUAL, 0)
        model.add_constraint(f"diff_out_{q}", [(1, z[q]), (1, a[q])], LESS_EQUAL, cls.size)
    model.set_objective([(1, zq) for zq in z])
    return model


def encode_diff_committees_ejrp_quotient(
    election: Election, quotient: QuotientStructure, first, second
) -> dict[str, int]:
    bits1 = election.committee_bits(first)
    bits2 = election.committee_bits(second)
    n, k = election.n, election.k
    assignment = {}
    for q, cls in enumerate(quotient.classes):
        c1 = sum(1 for c in cls.members if bits1 >> c & 1)
        c2 = sum(1 for c in cls.members if bits2 >> c & 1)
        assignment[f"x_{q}"] = c1
        assignment[f"a_{q}"] = c2
        assignment[f"z_{q}"] = min(c1, cls.size - c2)
        assignment[f"xh_{q}"] = int(c1 == cls.size)
        assignment[f"ah_{q}"] = int(c2 == cls.size)
    for i in range(n):
        rep1 = _rep(election, bits1, i)
        rep2 = _rep(election, bits2, i)
        for ell in range(1, k + 1):
            assignment[f"y_{i}_{ell}"] = int(rep1 >= ell)
            assignment[f"b_{i}_{ell}"] = int(rep2 >= ell)
    return assignment


def decode_diff_committees_quotient(election: Election, quotient, assignment):
    first = []
    second = []
    for q, cls in enumerate(quotient.classes):
        c1 = assignment[f"x_{q}"]
        c2 = assignment[f"a_{q}"]
        first.extend(cls.members[:c1])
        # fill the second committee from the top so overlap is minimal
        second.extend(cls.members[cls.size - c2 :])
    return tuple(sorted(first)), tuple(sorted(second))


def build_p_candidates_ejrp_quotient(election: Election, required) -> MilpModel:
    """Class-level EJR+ committee through a required candidate set."""
    req = candidate_set(required)
    if req and (req[0] < 0 or req[-1] >= election.m):
        raise ValueError(f"required set {req} not a subset of 0..{election.m - 1}")
    if len(req) > election.k:
        raise ValueError(f"required set of size {len(req)} exceeds k={election.k}")
    n, k = election.n, election.k
    quotient = build_quotient(election)
    classes = quotient.classes
    voter_classes = _classes_of_voter(election, quotient)
    model = MilpModel(f"p_candidates_ejrp_quotient[{election.name or 'election'}]")
    model.metadata = {
        "problem": "p_candidates",
        "election": election,
        "axiom": EJRP,
        "required": req,
        "quotient": quotient,
    }
    nq = len(classes)
    required_in_class = [sum(1 for c in req if quotient.class_of[c] == q) for q in range(nq)]
    x = [model.add_variable(f"x_{q}", INTEGER, 0, cls.size) for q, cls in enumerate(classes)]
    xh = [model.add_variable(f"xh_{q}") for q in range(nq)]
    y = {
        (i, ell): model.add_variable(f"y_{i}_{ell}")
        for i in range(n)
        for ell in range(1, k + 1)
    }
    _committee_size_row(model, "size", x, k)
    _rep_level_rows(
        model, election, x.__getitem__, lambda i, ell: y[i, ell], "w",
        classes_of=voter_classes.__getitem__,
    )
    _saturation_link_rows(model, classes, x.__getitem__, xh.__getitem__, "w")
    _ejrp_rows(
        model, election, xh.__getitem__, lambda i, ell: y[i, ell], "w",
        approvers_of=lambda q: classes[q].approvers, items=range(nq),
    )
    for q in range(nq):
        if required_in_class[q]:
            model.add_constraint(
                f"required_{q}", [(1, x[q])], GREATER_EQUAL, required_in_class[q]
            )
    return model


def encode_p_candidates_ejrp_quotient(
    election: Election, quotient: QuotientStructure, committee
) -> dict[str, int]:
    bits = election.committee_bits(committee)
    assignment = {}
    for q, cls in enumerate(quotient.classes):
        count = sum(1 for c in cls.members if bits >> c & 1)
        assignment[f"x_{q}"] = count
        assignment[f"xh_{q}"] = int(count == cls.size)
    for i in range(election.n):
        rep = _rep(election, bits, i)
        for ell in range(1, election.k + 1):
            assignment[f"y_{i}_{ell}"] = int(rep >= ell)
    return assignment


def decode_p_candidates_quotient(election: Election, quotient, required, assignment):
    committee = list(required)
    chosen = set(required)
    for q, cls in enumerate(quotient.classes):
        need = assignment[f"x_{q}"] - sum(1 for c in required if quotient.class_of[c] == q)
        for c in cls.members:
            if need == 0:
                break
            if c not in chosen:
                committee.append(c)
                chosen.add(c)
                need -= 1
    return tuple(sorted(committee))


_QUOTIENT_BUILDERS = {
    "jr_not_ejrp": lambda e, required: build_jr_not_ejrp_quotient(e),
    "diff_committees_ejrp": lambda e, required: build_diff_committees_ejrp_quotient(e),
    "p_candidates_ejrp": build_p_candidates_ejrp_quotient,
}


def build_quotient_variant(election: Election, problem: str, required=()) -> MilpModel:
    """Dispatch to a quotient builder by problem id."""
    try:
        builder = _QUOTIENT_BUILDERS[problem]
    except KeyError:
        raise ValueError(
            f"unknown quotient problem {problem!r}; expected one of {sorted(_QUOTIENT_BUILDERS)}"
        ) from None
    return builder(election, required)


def decode_solution(model: MilpModel, assignment: dict[str, int]):
    """Decode an assignment of any builder's model into its solution object."""
    meta = model.metadata
    election = meta["election"]
    quotient = meta.get("quotient")
    problem = meta["problem"]
    if problem == "jr_not_ejrp":
        if quotient is None:
            return decode_jr_not_ejrp(election, assignment)
        return decode_jr_not_ejrp_quotient(election, quotient, assignment)
    if problem == "diff_committees":
        if quotient is None:
            return decode_diff_committees(election, assignment)
        return decode_diff_committees_quotient(election, quotient, assignment)
    if problem == "p_candidates":
        if quotient is None:
            return decode_p_candidates(election, assignment)
        return decode_p_candidates_quotient(election, quotient, meta["required"], assignment)
    raise ValueError(f"cannot decode problem {problem!r}")
