"""Solver-agnostic integer programs and the LP interchange writer.

Models carry only binary/bounded-integer variables and linear rows with
integer coefficients; every strict inequality of the underlying problem has
already been converted to a non-strict integer-safe row by the builders.
Assignments coming back from any backend are re-checked here in exact
integer arithmetic — solver tolerances are never trusted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

BINARY = "binary"
INTEGER = "integer"

LESS_EQUAL = "<="
GREATER_EQUAL = ">="
EQUAL = "=="


@dataclass(frozen=True)
class Variable:
    name: str
    kind: str
    lower: int
    upper: int


@dataclass(frozen=True)
class LinearConstraint:
    name: str
    terms: tuple[tuple[int, str], ...]
    comparator: str
    rhs: int


@dataclass
class MilpModel:
    name: str
    sense: str = "feasibility"  # or "maximize"
    objective: tuple[tuple[int, str], ...] = ()
    variables: dict[str, Variable] = field(default_factory=dict)
    constraints: list[LinearConstraint] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def add_variable(self, name: str, kind: str = BINARY, lower: int = 0, upper: int = 1) -> str:
        if name in self.variables:
            raise ValueError(f"duplicate variable {name}")
        if kind == BINARY:
            lower, upper = 0, 1
        self.variables[name] = Variable(name, kind, lower, upper)
        return name

    def add_constraint(self, name: str, terms, comparator: str, rhs: int) -> None:
        terms = tuple((int(c), v) for c, v in terms if c != 0)
        for _, v in terms:
            if v not in self.variables:
                raise ValueError(f"constraint {name} references unknown variable {v}")
        if not terms:
            # constant row: must be trivially true, otherwise the builder
            # produced an inconsistent model
            if not _compare(0, comparator, rhs):
                raise ValueError(f"constraint {name} is constant-false: 0 {comparator} {rhs}")
            return
        self.constraints.append(LinearConstraint(name, terms, comparator, int(rhs)))

    def set_objective(self, terms) -> None:
        self.sense = "maximize"
        self.objective = tuple((int(c), v) for c, v in terms if c != 0)

    def objective_value(self, assignment: dict[str, int]) -> int:
        return sum(c * assignment[v] for c, v in self.objective)

    def violations(self, assignment: dict[str, int]) -> list[str]:
        """Exact-arithmetic check of an assignment; empty list means valid."""
        out = []
        for var in self.variables.values():
            value = assignment.get(var.name)
            if value is None:
                out.append(f"missing value for {var.name}")
            elif not isinstance(value, int):
                out.append(f"non-integer value {value!r} for {var.name}")
            elif not var.lower <= value <= var.upper:
                out.append(f"{var.name}={value} outside [{var.lower}, {var.upper}]")
        if out:
            return out
        for con in self.constraints:
            lhs = sum(c * assignment[v] for c, v in con.terms)
            if not _compare(lhs, con.comparator, con.rhs):
                out.append(f"{con.name}: {lhs} {con.comparator} {con.rhs} violated")
        return out


def _compare(lhs, comparator: str, rhs) -> bool:
    if comparator == LESS_EQUAL:
        return lhs <= rhs
    if comparator == GREATER_EQUAL:
        return lhs >= rhs
    if comparator == EQUAL:
        return lhs == rhs
    raise ValueError(f"unknown comparator {comparator!r}")


@dataclass(frozen=True)
class SolveOutcome:
    """Outcome of a solve: status in {feasible, optimal, infeasible, timeout}.

    ``objective_value`` is recomputed exactly from the assignment, never
    taken from the backend. Assignments always pass
    :meth:`MilpModel.violations` (enforced by :func:`propcom.milp.solvers.solve`).
    """

    status: str
    backend: str
    wall_time: float
    assignment: dict[str, int] | None = None
    objective_value: int | None = None

    @property
    def feasible(self) -> bool:
        return self.status in ("feasible", "optimal")

    def to_json_dict(self) -> dict:
        return {
            "status": self.status,
            "backend": self.backend,
            "wall_time": self.wall_time,
            "objective_value": self.objective_value,
            "assignment": self.assignment,
        }


def _format_terms(terms) -> str:
    parts = []
    for coef, var in terms:
        if not parts:
            parts.append(f"{coef} {var}" if coef >= 0 else f"- {-coef} {var}")
        elif coef >= 0:
            parts.append(f"+ {coef} {var}")
        else:
            parts.append(f"- {-coef} {var}")
    return " ".join(parts)


def write_lp(model: MilpModel) -> str:
    """Serialize to the textual LP interchange format (see README grammar).

    The emitted subset is plain CPLEX-style LP: an objective section,
    ``Subject To`` rows with integer coefficients, a ``Bounds`` section for
    general integers, ``Binaries``/``Generals`` declarations and ``End``.
    """
    lines = [f"\\ {model.name}"]
    if model.sense == "maximize":
        lines.append("Maximize")
        lines.append(f" obj: {_format_terms(model.objective)}")
    else:
        lines.append("Minimize")
        lines.append(" obj:")
    lines.append("Subject To")
    for con in model.constraints:
        op = "=" if con.comparator == EQUAL else con.comparator
        lines.append(f" {con.name}: {_format_terms(con.terms)} {op} {con.rhs}")
    generals = [v for v in model.variables.values() if v.kind == INTEGER]
    binaries = [v for v in model.variables.values() if v.kind == BINARY]
    if generals:
        lines.append("Bounds")
        for v in generals:
            lines.append(f" {v.lower} <= {v.name} <= {v.upper}")
    if binaries:
        lines.append("Binaries")
        lines.append(" " + " ".join(v.name for v in binaries))
    if generals:
        lines.append("Generals")
        lines.append(" " + " ".join(v.name for v in generals))
    lines.append("End")
    return "\n".join(lines) + "\n"


def scale_fraction(value: Fraction | int) -> int:
    value = Fraction(value)
    if value.denominator != 1:
        raise ValueError(f"non-integer coefficient {value} survived scaling")
    return int(value)
