"""Solver backends behind one contract.

Three backends:

``fallback``
    Built-in exact search. Models built by this package are solved by
    enumerating the committee space directly (pairs of committees for the
    distance problems) and encoding the best solution into model variables;
    arbitrary small models are solved by enumerating the integer box.

``scipy``
    Branch-and-bound through :func:`scipy.optimize.milp` (HiGHS), when
    scipy is installed.

``subprocess``
    External solver protocol: the model is written to an LP file, the
    command named by the ``SOLVER_CMD`` environment variable is invoked as
    ``$SOLVER_CMD <model.lp> <solution.txt>`` and the solution file is
    parsed back (first line a status keyword, then ``name value`` rows;
    unlisted variables default to 0). Non-zero exit codes raise.

Whatever the backend, a returned assignment is re-validated against every
constraint in exact integer arithmetic and the objective value is
recomputed exactly; a backend whose answer fails validation raises
:class:`BackendError` instead of returning garbage.
"""

from __future__ import annotations

import itertools
import math
import os
import shlex
import subprocess
import tempfile
import time
from pathlib import Path

from .. import axioms
from ..core import EnumerationCapExceeded, enumerate_committees
from . import builders
from .model import MilpModel, SolveOutcome, write_lp

DEFAULT_FALLBACK_CAP = 10**7
GENERIC_BOX_CAP = 10**6


class BackendError(Exception):
    """A backend misbehaved (bad exit, unparseable or invalid solution)."""


class _Timeout(Exception):
    pass


class _Deadline:
    def __init__(self, limit: float | None):
        self.expires = None if limit is None else time.monotonic() + limit

    def check(self):
        if self.expires is not None and time.monotonic() >= self.expires:
            raise _Timeout


def solve(
    model: MilpModel,
    backend: str | None = None,
    time_limit: float | None = None,
    cap: int = DEFAULT_FALLBACK_CAP,
) -> SolveOutcome:
    """Solve a model, returning a validated :class:`SolveOutcome`."""
    name = backend or "fallback"
    started = time.monotonic()
    if name == "fallback":
        status, assignment = _solve_fallback(model, time_limit, cap)
    elif name == "scipy":
        status, assignment = _solve_scipy(model, time_limit)
    elif name == "subprocess":
        status, assignment = _solve_subprocess(model, time_limit)
    else:
        raise ValueError(f"unknown backend {name!r} (fallback, scipy, subprocess)")
    wall = time.monotonic() - started

    if assignment is None:
        return SolveOutcome(status=status, backend=name, wall_time=wall)
    problems = model.violations(assignment)
    if problems:
        raise BackendError(
            f"backend {name} returned an invalid assignment: {problems[:3]}"
        )
    value = model.objective_value(assignment) if model.sense == "maximize" else None
    return SolveOutcome(
        status=status,
        backend=name,
        wall_time=wall,
        assignment=assignment,
        objective_value=value,
    )


# ---------------------------------------------------------------------------
# built-in exact search


def _bounds_empty(model: MilpModel) -> bool:
    return any(v.lower > v.upper for v in model.variables.values())


def _solve_fallback(model, time_limit, cap):
    deadline = _Deadline(time_limit)
    try:
        deadline.check()
        if _bounds_empty(model):
            return "infeasible", None
        problem = model.metadata.get("problem")
        if problem == "jr_not_ejrp":
            return _fallback_jr_not_ejrp(model, deadline, cap)
        if problem == "diff_committees":
            return _fallback_diff(model, deadline, cap)
        if problem == "p_candidates":
            return _fallback_p_candidates(model, deadline, cap)
        return _fallback_generic(model, deadline)
    except _Timeout:
        return "timeout", None


def _fallback_jr_not_ejrp(model, deadline, cap):
    election = model.metadata["election"]
    quotient = model.metadata.get("quotient")
    for step, committee in enumerate(enumerate_committees(election, cap)):
        if step % 256 == 0:
            deadline.check()
        if not axioms.satisfies(election, committee, axioms.JR):
            continue
        report = axioms.check_ejrp(election, committee)
        if report.satisfied:
            continue
        if quotient is None:
            assignment = builders.encode_jr_not_ejrp(election, committee, report.witness)
        else:
            assignment = builders.encode_jr_not_ejrp_quotient(
                election, quotient, committee, report.witness
            )
        return "feasible", assignment
    return "infeasible", None


def _fallback_diff(model, deadline, cap):
    election = model.metadata["election"]
    axiom = model.metadata["axiom"]
    quotient = model.metadata.get("quotient")
    satisfying = []
    for step, committee in enumerate(enumerate_committees(election, cap)):
        if step % 256 == 0:
            deadline.check()
        if axioms.satisfies(election, committee, axiom):
            satisfying.append(committee)
    if not satisfying:
        return "infeasible", None
    words = [election.committee_bits(w) for w in satisfying]
    best = (satisfying[0], satisfying[0])
    best_d = 0
    k = election.k
    for i in range(len(words)):
        if best_d == k:
            break
        deadline.check()
        wi = words[i]
        for j in range(i + 1, len(words)):
            d = (wi & ~words[j]).bit_count()
            if d > best_d:
                best_d = d
                best = (satisfying[i], satisfying[j])
    first, second = best
    if quotient is None:
        assignment = builders.encode_diff_committees(election, axiom, first, second)
    else:
        assignment = builders.encode_diff_committees_ejrp_quotient(
            election, quotient, first, second
        )
    return "optimal", assignment


def _fallback_p_candidates(model, deadline, cap):
    election = model.metadata["election"]
    axiom = model.metadata["axiom"]
    required = model.metadata["required"]
    quotient = model.metadata.get("quotient")
    req_bits = election.committee_bits(required)
    for step, committee in enumerate(enumerate_committees(election, cap)):
        if step % 256 == 0:
            deadline.check()
        bits = election.committee_bits(committee)
        if bits & req_bits != req_bits:
            continue
        if not axioms.satisfies(election, committee, axiom):
            continue
        if quotient is None:
            assignment = builders.encode_p_candidates(election, axiom, committee)
        else:
            assignment = builders.encode_p_candidates_ejrp_quotient(
                election, quotient, committee
            )
        return "feasible", assignment
    return "infeasible", None


def _fallback_generic(model, deadline):
    """Enumerate the integer box of a small metadata-free model."""
    names = list(model.variables)
    domains = [range(v.lower, v.upper + 1) for v in model.variables.values()]
    total = math.prod(len(d) for d in domains)
    if total > GENERIC_BOX_CAP:
        raise EnumerationCapExceeded(
            f"generic fallback cannot enumerate {total} assignments"
        )
    best = None
    best_value = None
    for step, values in enumerate(itertools.product(*domains)):
        if step % 512 == 0:
            deadline.check()
        assignment = dict(zip(names, values))
        if model.violations(assignment):
            continue
        if model.sense == "feasibility":
            return "feasible", assignment
        value = model.objective_value(assignment)
        if best_value is None or value > best_value:
            best, best_value = assignment, value
    if best is None:
        return "infeasible", None
    return "optimal", best


# ---------------------------------------------------------------------------
# scipy (HiGHS branch-and-bound)


def _solve_scipy(model, time_limit):
    try:
        import numpy as np
        from scipy import optimize
    except ImportError as exc:  # pragma: no cover - environment dependent
        raise BackendError("scipy backend requested but scipy is not installed") from exc

    if _bounds_empty(model):
        return "infeasible", None
    names = list(model.variables)
    index = {name: i for i, name in enumerate(names)}
    nvar = len(names)
    lower = np.array([model.variables[v].lower for v in names], dtype=float)
    upper = np.array([model.variables[v].upper for v in names], dtype=float)

    rows = []
    lo = []
    hi = []
    for con in model.constraints:
        row = np.zeros(nvar)
        for coef, var in con.terms:
            row[index[var]] += coef
        rows.append(row)
        if con.comparator == "<=":
            lo.append(-np.inf)
            hi.append(con.rhs)
        elif con.comparator == ">=":
            lo.append(con.rhs)
            hi.append(np.inf)
        else:
            lo.append(con.rhs)
            hi.append(con.rhs)
    c = np.zeros(nvar)
    for coef, var in model.objective:
        c[index[var]] -= coef  # maximize -> minimize
    constraints = (
        optimize.LinearConstraint(np.array(rows), np.array(lo), np.array(hi))
        if rows
        else ()
    )
    # HiGHS presolve (scipy 1.15) misclassifies some of these big-M models
    # as infeasible; keep it off, the models are small
    options = {"presolve": False}
    if time_limit is not None:
        options["time_limit"] = time_limit
    result = optimize.milp(
        c=c,
        constraints=constraints,
        integrality=np.ones(nvar),
        bounds=optimize.Bounds(lower, upper),
        options=options,
    )
    if result.status == 2:
        return "infeasible", None
    if result.status == 1:
        return "timeout", None
    if result.status != 0 or result.x is None:
        raise BackendError(f"scipy/HiGHS failed: status {result.status} {result.message}")
    assignment = {name: round(x) for name, x in zip(names, result.x)}
    status = "optimal" if model.sense == "maximize" else "feasible"
    return status, assignment


# ---------------------------------------------------------------------------
# external solver subprocess protocol

_STATUS_KEYWORDS = {"optimal", "feasible", "infeasible", "timeout"}


def _solve_subprocess(model, time_limit, command: str | None = None):
    command = command or os.environ.get("SOLVER_CMD")
    if not command:
        raise BackendError("subprocess backend needs SOLVER_CMD in the environment")
    with tempfile.TemporaryDirectory(prefix="propcom-milp-") as tmp:
        lp_path = Path(tmp) / "model.lp"
        sol_path = Path(tmp) / "solution.txt"
        lp_path.write_text(write_lp(model))
        argv = shlex.split(command) + [str(lp_path), str(sol_path)]
        try:
            proc = subprocess.run(
                argv,
                capture_output=True,
                text=True,
                timeout=time_limit,
            )
        except subprocess.TimeoutExpired:
            return "timeout", None
        if proc.returncode != 0:
            raise BackendError(
                f"solver command failed with code {proc.returncode}: {proc.stderr[:500]}"
            )
        if not sol_path.exists():
            raise BackendError("solver command produced no solution file")
        return _parse_solution(model, sol_path.read_text())


def _parse_solution(model, text):
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise BackendError("empty solution file")
    status = lines[0].lower()
    if status not in _STATUS_KEYWORDS:
        raise BackendError(f"unknown solution status {status!r}")
    if status in ("infeasible", "timeout"):
        return status, None
    assignment = {name: 0 for name in model.variables}
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise BackendError(f"malformed solution line {line!r}")
        name, value = parts
        if name not in assignment:
            raise BackendError(f"solution references unknown variable {name!r}")
        assignment[name] = round(float(value))
    return status, assignment


def available_backends() -> list[str]:
    names = ["fallback"]
    try:
        import scipy.optimize  # noqa: F401

        names.append("scipy")
    except ImportError:
        pass
    if os.environ.get("SOLVER_CMD"):
        names.append("subprocess")
    return names
