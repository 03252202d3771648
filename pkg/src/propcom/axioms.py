"""Verification of justified-representation axioms with violation witnesses.

The family is parameterized by a threshold level t in [1, k]: a candidate
set W violates level t if some unselected candidate c has, for some group
size ell <= t, at least ell*n/k approvers who each approve fewer than ell
members of W. Level 1 is justified representation (JR); level k is EJR+.

All threshold comparisons are exact integer arithmetic (count*k vs ell*n);
no rationals or rounding are involved. Checks deliberately accept candidate
sets of any size (the power index probes sets of size k-1) — thresholds
always use the election's k.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _kernel
from .core import Committee, Election, candidate_set


@dataclass(frozen=True)
class Axiom:
    """A representation axiom: level ``t``, or the election's k if None."""

    label: str
    t: int | None

    def threshold(self, k: int) -> int:
        return k if self.t is None else self.t

    def __str__(self) -> str:
        return self.label


JR = Axiom("jr", 1)
EJRP = Axiom("ejrp", None)


def t_ejrp_axiom(t: int) -> Axiom:
    if t < 1:
        raise ValueError(f"axiom level must be >= 1, got {t}")
    return Axiom(f"t{t}-ejrp", t)


def parse_axiom(text: str) -> Axiom:
    """Parse an axiom spelled ``jr``, ``ejrp`` or ``t:<level>``."""
    text = text.strip().lower()
    if text == "jr":
        return JR
    if text == "ejrp":
        return EJRP
    if text.startswith("t:"):
        return t_ejrp_axiom(int(text[2:]))
    raise ValueError(f"unknown axiom {text!r} (expected jr, ejrp or t:<level>)")


@dataclass(frozen=True)
class Witness:
    """Certificate of a violation: candidate, group size and deficient voters.

    The voter set is maximal: every approver of ``candidate`` whose
    representation is below ``group_size``.
    """

    candidate: int
    group_size: int
    voters: tuple[int, ...]


@dataclass(frozen=True)
class AxiomReport:
    satisfied: bool
    witness: Witness | None = None


def _validate(election: Election, committee, t: int) -> Committee:
    w = candidate_set(committee)
    if w and (w[0] < 0 or w[-1] >= election.m):
        raise ValueError(f"committee {w} not a subset of 0..{election.m - 1}")
    if not 1 <= t <= election.k:
        raise ValueError(f"axiom level t={t} outside [1, {election.k}]")
    return w


def _find_witness(election: Election, committee_bits: int, t: int) -> Witness | None:
    # Deterministic report order: smallest group size first, then smallest
    # candidate id; independent of the kernel backend.
    n, k = election.n, election.k
    rep = [(b & committee_bits).bit_count() for b in election.ballot_bits]
    for ell in range(1, t + 1):
        for c in range(election.m):
            if committee_bits >> c & 1:
                continue
            deficient = [i for i in election.approver_lists[c] if rep[i] < ell]
            if len(deficient) * k >= ell * n:
                return Witness(c, ell, tuple(deficient))
    return None


def check_t_ejrp(election: Election, committee, t: int) -> AxiomReport:
    """Check representation at level t, witnessing any violation.

    Runs in O(m*k*n) bitset time via the kernel backend; on failure the
    witness is recomputed in pure Python so reports never depend on the
    backend in use.
    """
    w = _validate(election, committee, t)
    handle = _kernel.handle_for(election)
    if _kernel.impl.check(handle, w, t):
        return AxiomReport(True)
    witness = _find_witness(election, election.committee_bits(w), t)
    if witness is None:
        raise RuntimeError("kernel reported a violation but none was found")
    return AxiomReport(False, witness)


def check_jr(election: Election, committee) -> AxiomReport:
    """Justified representation: level-1 check."""
    return check_t_ejrp(election, committee, 1)


def check_ejrp(election: Election, committee) -> AxiomReport:
    """EJR+: the level-k check."""
    return check_t_ejrp(election, committee, election.k)


def check_axiom(election: Election, committee, axiom: Axiom) -> AxiomReport:
    return check_t_ejrp(election, committee, axiom.threshold(election.k))


def satisfies(election: Election, committee, axiom: Axiom) -> bool:
    """Boolean fast path (no witness materialization)."""
    t = axiom.threshold(election.k)
    w = _validate(election, committee, t)
    return _kernel.impl.check(_kernel.handle_for(election), w, t)


def construct_ejrp_committee(election: Election) -> Committee:
    """A size-k committee guaranteed to satisfy EJR+.

    Computed by the method of equal shares with sequential-Phragmen
    completion; the EJR+ property is post-verified on every call and a
    failure is an internal error.
    """
    from .rules import mes_with_phragmen_completion

    return mes_with_phragmen_completion(election)
