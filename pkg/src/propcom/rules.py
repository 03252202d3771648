"""Proportional voting rules and score-based selections.

All budget, load and score arithmetic is exact (fractions), so tie
detection is never perturbed by rounding. Ties are always broken toward the
smallest candidate id; every rule is deterministic and anonymous.
"""

from __future__ import annotations

from fractions import Fraction

from .core import Committee, Election


def _phragmen_rounds(
    election: Election, selected: list[int], loads: list[Fraction], seats: int
) -> None:
    """Run sequential-Phragmen rounds in place until ``seats`` more seats fill.

    Each round elects the candidate minimizing the equalized load
    (1 + sum of approver loads) / #approvers and sets its approvers to that
    load. Candidates nobody approves carry no load and are seated last, by
    id.
    """
    chosen = set(selected)
    for _ in range(seats):
        best: tuple[Fraction, int] | None = None
        for c in range(election.m):
            if c in chosen:
                continue
            approvers = election.approver_lists[c]
            if not approvers:
                continue
            new_load = (1 + sum(loads[i] for i in approvers)) / len(approvers)
            if best is None or new_load < best[0]:
                best = (new_load, c)
        if best is None:
            # only unsupported candidates remain
            c = min(set(range(election.m)) - chosen)
            chosen.add(c)
            selected.append(c)
            continue
        new_load, c = best
        for i in election.approver_lists[c]:
            loads[i] = new_load
        chosen.add(c)
        selected.append(c)


def seq_phragmen(election: Election) -> Committee:
    """Sequential Phragmen: minimize the maximal voter load each round."""
    selected: list[int] = []
    loads = [Fraction(0)] * election.n
    _phragmen_rounds(election, selected, loads, election.k)
    return tuple(sorted(selected))


def _mes_price(budgets: list[Fraction], approvers) -> Fraction | None:
    """Smallest equal-share price rho with sum_i min(budget_i, rho) = 1,
    or None if the approvers cannot jointly afford the unit cost."""
    pool = sorted(budgets[i] for i in approvers)
    if sum(pool) < 1:
        return None
    paid = Fraction(0)
    for idx, b in enumerate(pool):
        rho = (1 - paid) / (len(pool) - idx)
        if b >= rho:
            return rho
        paid += b
    raise AssertionError("affordable candidate must admit a price")


def mes_with_phragmen_completion(election: Election) -> Committee:
    """Method of equal shares, completed with sequential Phragmen.

    Voters start with budget k/n and every candidate costs 1; each round
    the candidate with the smallest equal-share price is bought. When no
    candidate is affordable, the remaining seats are filled by
    seq-Phragmen restarted from zero loads with the bought candidates
    pre-seated. The result always satisfies EJR+; this is asserted on
    every invocation.
    """
    n, k = election.n, election.k
    budgets = [Fraction(k, n)] * n
    selected: list[int] = []
    while len(selected) < k:
        best: tuple[Fraction, int] | None = None
        for c in range(election.m):
            if c in selected:
                continue
            approvers = election.approver_lists[c]
            if not approvers:
                continue
            rho = _mes_price(budgets, approvers)
            if rho is None:
                continue
            if best is None or rho < best[0]:
                best = (rho, c)
        if best is None:
            break
        rho, c = best
        for i in election.approver_lists[c]:
            budgets[i] -= min(budgets[i], rho)
        selected.append(c)
    if len(selected) < k:
        loads = [Fraction(0)] * n
        _phragmen_rounds(election, selected, loads, k - len(selected))
    committee = tuple(sorted(selected))

    from .axioms import check_ejrp

    if not check_ejrp(election, committee).satisfied:
        raise RuntimeError(f"equal-shares committee {committee} failed its EJR+ guarantee")
    return committee


def seq_pav(election: Election) -> Committee:
    """Greedy proportional approval voting: maximize the marginal harmonic
    score sum_i 1/(|A_i intersect W| + 1) each round."""
    selected: set[int] = set()
    rep = [0] * election.n
    out: list[int] = []
    for _ in range(election.k):
        best_c = -1
        best_gain = Fraction(-1)
        for c in range(election.m):
            if c in selected:
                continue
            gain = sum((Fraction(1, rep[i] + 1) for i in election.approver_lists[c]), Fraction(0))
            if gain > best_gain:
                best_gain = gain
                best_c = c
        selected.add(best_c)
        out.append(best_c)
        for i in election.approver_lists[best_c]:
            rep[i] += 1
    return tuple(sorted(out))


def top_k_by_score(election: Election, scores) -> Committee:
    """The k highest-scoring candidates, ties by smallest id."""
    scores = list(scores)
    if len(scores) != election.m:
        raise ValueError(f"need {election.m} scores, got {len(scores)}")
    order = sorted(range(election.m), key=lambda c: (-Fraction(scores[c]), c))
    return tuple(sorted(order[: election.k]))


def approval_scores(election: Election) -> list[int]:
    return [election.approval_score(c) for c in range(election.m)]


def relative_overlap(first, second) -> Fraction:
    """|W1 intersect W2| / k for two size-k committees."""
    a = frozenset(first)
    b = frozenset(second)
    if len(a) != len(b):
        raise ValueError(f"committee sizes differ: {len(a)} vs {len(b)}")
    if not a:
        raise ValueError("overlap of empty committees is undefined")
    return Fraction(len(a & b), len(a))
