"""Participatory-budgeting file ingestion (.pb text format).

A file is three semicolon-delimited sections in order: ``META`` with a
``key;value`` header and key/value rows, ``PROJECTS`` with a column header
(must include ``project_id``) and one row per project, and ``VOTES`` with a
column header (must include ``voter_id`` and ``vote``) whose ``vote``
column is a comma-separated project-id list. Unknown columns and meta keys
are preserved verbatim, so parse/emit round-trips byte-identically modulo
a trailing newline. Costs are parsed and retained but play no role in any
analysis here; elections are approval profiles plus a committee size.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .core import Election, build_election


class PabulibError(Exception):
    """Malformed .pb content."""


@dataclass(frozen=True)
class PabulibFile:
    meta: dict[str, str]
    project_columns: tuple[str, ...]
    projects: tuple[dict[str, str], ...]
    vote_columns: tuple[str, ...]
    votes: tuple[dict[str, str], ...]

    @property
    def num_projects(self) -> int:
        return len(self.projects)

    @property
    def num_voters(self) -> int:
        return len(self.votes)

    def project_ids(self) -> list[str]:
        return [row["project_id"] for row in self.projects]

    def approvals(self) -> list[list[str]]:
        out = []
        for row in self.votes:
            vote = row.get("vote", "")
            out.append([p for p in vote.split(",") if p] if vote else [])
        return out

    def mean_ballot_size(self) -> Fraction:
        if not self.votes:
            return Fraction(0)
        return Fraction(sum(len(b) for b in self.approvals()), len(self.votes))


def parse_pabulib(text: str) -> PabulibFile:
    lines = [line.rstrip("\n\r") for line in text.splitlines()]
    lines = [line for line in lines if line.strip() != ""]
    sections: dict[str, list[str]] = {}
    current: list[str] | None = None
    order = []
    for line in lines:
        if line in ("META", "PROJECTS", "VOTES"):
            if line in sections:
                raise PabulibError(f"duplicate section {line}")
            current = sections[line] = []
            order.append(line)
            continue
        if current is None:
            raise PabulibError(f"content before any section header: {line!r}")
        current.append(line)
    for required in ("META", "PROJECTS", "VOTES"):
        if required not in sections:
            raise PabulibError(f"missing section {required}")
    if order != ["META", "PROJECTS", "VOTES"]:
        raise PabulibError(f"sections out of order: {order}")

    meta_rows = sections["META"]
    if not meta_rows or meta_rows[0] != "key;value":
        raise PabulibError("META must start with its 'key;value' header row")
    meta: dict[str, str] = {}
    for row in meta_rows[1:]:
        parts = row.split(";")
        if len(parts) != 2:
            raise PabulibError(f"malformed META row {row!r}")
        key, value = parts
        if key in meta:
            raise PabulibError(f"duplicate META key {key!r}")
        meta[key] = value

    def parse_table(rows: list[str], section: str) -> tuple[tuple[str, ...], list[dict]]:
        if not rows:
            raise PabulibError(f"{section} section has no header row")
        columns = tuple(rows[0].split(";"))
        records = []
        for row in rows[1:]:
            parts = row.split(";")
            if len(parts) != len(columns):
                raise PabulibError(
                    f"{section} row has {len(parts)} fields, header has {len(columns)}: {row!r}"
                )
            records.append(dict(zip(columns, parts)))
        return columns, records

    project_columns, projects = parse_table(sections["PROJECTS"], "PROJECTS")
    if "project_id" not in project_columns:
        raise PabulibError("PROJECTS header lacks a project_id column")
    vote_columns, votes = parse_table(sections["VOTES"], "VOTES")
    if "voter_id" not in vote_columns:
        raise PabulibError("VOTES header lacks a voter_id column")
    if "vote" not in vote_columns:
        raise PabulibError("VOTES header lacks a vote column")

    seen: set[str] = set()
    for row in projects:
        pid = row["project_id"]
        if pid in seen:
            raise PabulibError(f"duplicate project id {pid!r}")
        seen.add(pid)
    for row in votes:
        vote = row["vote"]
        for pid in ([p for p in vote.split(",") if p] if vote else []):
            if pid not in seen:
                raise PabulibError(
                    f"voter {row['voter_id']!r} references unknown project {pid!r}"
                )
    return PabulibFile(meta, project_columns, tuple(projects), vote_columns, tuple(votes))


def emit_pabulib(pb: PabulibFile) -> str:
    lines = ["META", "key;value"]
    lines += [f"{k};{v}" for k, v in pb.meta.items()]
    lines.append("PROJECTS")
    lines.append(";".join(pb.project_columns))
    lines += [";".join(row[c] for c in pb.project_columns) for row in pb.projects]
    lines.append("VOTES")
    lines.append(";".join(pb.vote_columns))
    lines += [";".join(row[c] for c in pb.vote_columns) for row in pb.votes]
    return "\n".join(lines) + "\n"


def load_pabulib(path: str | Path) -> PabulibFile:
    return parse_pabulib(Path(path).read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# committee-size policies


@dataclass(frozen=True)
class KPolicy:
    """How to pick k for a file that only specifies a budget.

    ``half_m``: floor(m/2). ``m_over(c)``: floor(m/c). ``explicit(k)``:
    fixed k. ``budget_avg_cost``: instance budget divided by the average
    project cost (an estimate of how many projects fit), clamped to [1, m].
    """

    kind: str
    value: int | None = None

    @staticmethod
    def half_m() -> "KPolicy":
        return KPolicy("m_over", 2)

    @staticmethod
    def m_over(c: int) -> "KPolicy":
        if c < 1:
            raise ValueError(f"divisor must be >= 1, got {c}")
        return KPolicy("m_over", c)

    @staticmethod
    def explicit(k: int) -> "KPolicy":
        return KPolicy("explicit", k)

    @staticmethod
    def budget_avg_cost() -> "KPolicy":
        return KPolicy("budget_avg_cost")

    @staticmethod
    def parse(text: str) -> "KPolicy":
        text = text.strip().lower()
        if text == "half":
            return KPolicy.half_m()
        if text.startswith("over:"):
            return KPolicy.m_over(int(text[5:]))
        if text.startswith("explicit:"):
            return KPolicy.explicit(int(text[9:]))
        if text == "budget-avg-cost":
            return KPolicy.budget_avg_cost()
        raise ValueError(
            f"unknown k policy {text!r} (half, over:C, explicit:K, budget-avg-cost)"
        )

    def committee_size(self, pb: PabulibFile) -> int:
        m = pb.num_projects
        if self.kind == "m_over":
            return m // self.value
        if self.kind == "explicit":
            return self.value
        if self.kind == "budget_avg_cost":
            budget = Fraction(pb.meta.get("budget", "0").replace(",", "."))
            costs = [Fraction(row.get("cost", "0").replace(",", ".")) for row in pb.projects]
            total_cost = sum(costs, Fraction(0))
            if budget <= 0 or total_cost <= 0:
                raise PabulibError("budget-avg-cost policy needs a budget and project costs")
            avg = total_cost / len(costs)
            return max(1, min(m, int(budget / avg)))
        raise AssertionError(self.kind)


def to_election(pb: PabulibFile, k_policy: KPolicy, name: str = "") -> Election:
    """Dense re-indexing of an approval .pb file into an election.

    Project order defines candidate ids, voter order defines voter ids;
    ballots are approval sets, costs stay untouched in the file.
    """
    vote_type = pb.meta.get("vote_type", "")
    if vote_type != "approval":
        raise PabulibError(f"vote_type {vote_type!r} is not approval")
    ids = pb.project_ids()
    index = {pid: i for i, pid in enumerate(ids)}
    ballots = [{index[p] for p in ballot} for ballot in pb.approvals()]
    k = k_policy.committee_size(pb)
    m = len(ids)
    if not 1 <= k <= m:
        raise PabulibError(f"k policy yields k={k} outside [1, {m}]")
    meta = {"project_ids": ids, "voter_ids": [row["voter_id"] for row in pb.votes]}
    label = name or pb.meta.get("description", "") or pb.meta.get("unit", "")
    return build_election(ballots, m, k, name=label, meta=meta)


@dataclass(frozen=True)
class FilterReport:
    included: tuple[str, ...]
    excluded: tuple[tuple[str, str], ...] = field(default=())


def filter_dataset(
    files: Iterable[tuple[str, PabulibFile]], min_avg_ballot: Fraction | int = 4
) -> FilterReport:
    """Keep approval instances whose mean ballot size reaches the floor."""
    included = []
    excluded = []
    for name, pb in files:
        vote_type = pb.meta.get("vote_type", "")
        if vote_type != "approval":
            excluded.append((name, f"vote_type {vote_type!r} is not approval"))
            continue
        mean = pb.mean_ballot_size()
        if mean < min_avg_ballot:
            excluded.append((name, f"mean ballot size {float(mean):.2f} < {min_avg_ballot}"))
            continue
        included.append(name)
    return FilterReport(tuple(included), tuple(excluded))


def election_to_pabulib(election: Election, description: str = "") -> PabulibFile:
    """Serialize a generated election as a .pb file (unit costs)."""
    meta = {
        "description": description or election.name or "synthetic election",
        "country": "synthetic",
        "unit": election.name or "synthetic",
        "instance": election.name or "synthetic",
        "num_projects": str(election.m),
        "num_votes": str(election.n),
        "budget": str(election.k),
        "vote_type": "approval",
        "rule": "none",
        "committee_size": str(election.k),
    }
    project_columns = ("project_id", "cost")
    projects = tuple({"project_id": str(c), "cost": "1"} for c in range(election.m))
    vote_columns = ("voter_id", "vote")
    votes = tuple(
        {"voter_id": str(i), "vote": ",".join(str(c) for c in sorted(election.ballots[i]))}
        for i in range(election.n)
    )
    return PabulibFile(meta, project_columns, projects, vote_columns, votes)
