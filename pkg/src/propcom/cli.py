"""Experiment drivers: machine-readable analyses over election files.

Every command is deterministic given (inputs, flags, seed): work for the
i-th task (instance, k, axiom) runs on the child stream
``spawn_seed(master_seed, i)``, so results do not depend on scheduling.
Output schemas are versioned (``schema`` field in JSON, fixed header row in
CSV) and documented in the README. Plotting is out of scope; outputs are
plot-ready tables.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import _kernel, milp
from .axioms import EJRP, JR, check_t_ejrp, parse_axiom
from .core import Election
from .generators import gen_euclidean, gen_resampling
from .pabulib import (
    KPolicy,
    election_to_pabulib,
    emit_pabulib,
    filter_dataset,
    load_pabulib,
    to_election,
)
from .rng import spawn_seed
from .rules import (
    approval_scores,
    mes_with_phragmen_completion,
    relative_overlap,
    seq_pav,
    seq_phragmen,
    top_k_by_score,
)
from .sampling import collect_satisfying_committees, required_samples

SCHEMA_PREFIX = "propcom"
SCHEMA_VERSION = 1


def _schema(command: str) -> str:
    return f"{SCHEMA_PREFIX}/{command}/v{SCHEMA_VERSION}"


# ---------------------------------------------------------------------------
# input handling


def _input_files(path: str) -> list[Path]:
    p = Path(path)
    if p.is_dir():
        files = sorted(p.glob("*.pb"))
        if not files:
            raise SystemExit(f"no .pb files in directory {p}")
        return files
    if p.is_file():
        return [p]
    raise SystemExit(f"input {p} does not exist")


def _load_elections(args, apply_filter: bool = True) -> list[tuple[str, Election]]:
    policy = KPolicy.parse(args.k_policy)
    files = _input_files(args.input)
    named = [(f.stem, load_pabulib(f)) for f in files]
    if apply_filter and len(named) > 1:
        report = filter_dataset(named, min_avg_ballot=Fraction(args.min_avg_ballot))
        for name, reason in report.excluded:
            print(f"excluded {name}: {reason}", file=sys.stderr)
        keep = set(report.included)
        named = [(name, pb) for name, pb in named if name in keep]
    return [(name, to_election(pb, policy, name=name)) for name, pb in named]


def _write_text(out: str | None, text: str) -> None:
    if out and out != "-":
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _write_json(out: str | None, payload) -> None:
    _write_text(out, json.dumps(payload, indent=2) + "\n")


def _write_csv(out: str | None, header: list[str], rows: list[list]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(header)
    writer.writerows(rows)
    _write_text(out, buf.getvalue())


def _parse_committee(text: str) -> tuple[int, ...]:
    return tuple(sorted(int(x) for x in text.split(",") if x.strip() != ""))


def _run_tasks(tasks, fn, jobs: int):
    if jobs <= 1:
        return [fn(task) for task in tasks]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks))


def _acceptance_budget(args) -> int:
    """Sample budget: --accept, or the Hoeffding count for (--epsilon, --delta)."""
    if args.epsilon is not None or args.delta is not None:
        if args.epsilon is None or args.delta is None:
            raise SystemExit("--epsilon and --delta must be given together")
        return required_samples(args.epsilon, args.delta)
    return args.accept


# ---------------------------------------------------------------------------
# resumable rejection sampling with a wall-clock budget

_CHUNK_DRAWS = 4096


def _timed_rejection(election, axiom, need, seed, timeout):
    """Sample until ``need`` acceptances or the per-task timeout expires.

    Returns (draws, accepted committees, timed_out).
    """
    handle = _kernel.handle_for(election)
    t = axiom.threshold(election.k)
    state = seed
    draws = 0
    accepted = []
    deadline = None if timeout is None else time.monotonic() + timeout
    while len(accepted) < need:
        if deadline is not None and time.monotonic() >= deadline:
            return draws, accepted, True
        state, used, got = _kernel.impl.collect_satisfying(
            handle, t, need - len(accepted), _CHUNK_DRAWS, state
        )
        draws += used
        accepted.extend(got)
    return draws, accepted, False


# ---------------------------------------------------------------------------
# commands


def cmd_check(args) -> int:
    policy = KPolicy.parse(args.k_policy)
    pb = load_pabulib(_input_files(args.input)[0])
    election = to_election(pb, policy)
    axiom = parse_axiom(args.axiom)
    committee = _parse_committee(args.committee)
    report = check_t_ejrp(election, committee, axiom.threshold(election.k))
    payload = {
        "schema": _schema("check"),
        "n": election.n,
        "m": election.m,
        "k": election.k,
        "committee": list(committee),
        "axiom": str(axiom),
        "satisfied": report.satisfied,
    }
    if report.witness:
        payload["witness"] = {
            "candidate": report.witness.candidate,
            "group_size": report.witness.group_size,
            "voters": list(report.witness.voters),
        }
    _write_json(args.out, payload)
    return 0 if report.satisfied else 1


def cmd_ksweep(args) -> int:
    axioms = [parse_axiom(a) for a in args.axiom] or [JR, EJRP]
    name, election = _load_elections(args, apply_filter=False)[0]
    accept = _acceptance_budget(args)
    rows = []

    def run(task):
        idx, k, axiom = task
        sized = election.with_committee_size(k)
        seed = spawn_seed(args.seed, idx)
        draws, accepted, timed_out = _timed_rejection(
            sized, axiom, accept, seed, args.timeout
        )
        fraction = len(accepted) / draws if draws else ""
        return [k, str(axiom), fraction, draws, len(accepted), int(timed_out)]

    tasks = [
        (idx, k, axiom)
        for idx, (k, axiom) in enumerate(
            (k, axiom) for k in range(1, election.m + 1) for axiom in axioms
        )
    ]
    rows = _run_tasks(tasks, run, args.jobs)
    _write_csv(
        args.out,
        ["k", "axiom", "fraction", "draws", "accepted", "timed_out"],
        rows,
    )
    return 0


def cmd_fractions(args) -> int:
    elections = _load_elections(args)
    accept = _acceptance_budget(args)
    results = []

    def run(task):
        idx, name, election = task
        record = {"instance": name, "n": election.n, "m": election.m, "k": election.k}
        for offset, axiom in enumerate((JR, EJRP)):
            seed = spawn_seed(args.seed, 2 * idx + offset)
            draws, accepted, timed_out = _timed_rejection(
                election, axiom, accept, seed, args.timeout
            )
            label = str(axiom)
            record[f"{label}_fraction"] = len(accepted) / draws if draws else None
            record[f"{label}_draws"] = draws
            record[f"{label}_accepted"] = len(accepted)
            record[f"{label}_timed_out"] = timed_out
        return record

    tasks = [(idx, name, e) for idx, (name, e) in enumerate(elections)]
    results = _run_tasks(tasks, run, args.jobs)
    _write_json(args.out, {"schema": _schema("fractions"), "instances": results})
    return 0


def cmd_distance(args) -> int:
    axiom = parse_axiom(args.axiom)
    elections = _load_elections(args)
    accept = _acceptance_budget(args)
    results = []
    for idx, (name, election) in enumerate(elections):
        record = {"instance": name, "n": election.n, "m": election.m, "k": election.k,
                  "axiom": str(axiom), "mode": args.mode}
        if args.mode == "avg_sampled":
            from .sampling import DrawCapExceeded, estimate_avg_distance

            try:
                est = estimate_avg_distance(
                    election, axiom, num_accepted=accept,
                    seed=spawn_seed(args.seed, idx),
                )
                record["normalized_avg_distance"] = float(est.estimate)
                record["degenerate"] = est.degenerate
                record["draws"] = est.samples_drawn
            except DrawCapExceeded as exc:
                record["error"] = str(exc)
        else:
            model = milp.build_diff_committees(election, axiom)
            outcome = milp.solve(model, backend=args.backend, time_limit=args.timeout)
            record["status"] = outcome.status
            record["max_distance"] = outcome.objective_value
            if outcome.assignment is not None:
                first, second = milp.decode_solution(model, outcome.assignment)
                record["witness_pair"] = [list(first), list(second)]
        results.append(record)
    _write_json(args.out, {"schema": _schema("distance"), "instances": results})
    return 0


def _importance_rows(election: Election, name, axiom, accept, seed):
    """Per-candidate approval score, prevalence and pivot fraction from one
    shared rejection sample."""
    _, accepted = collect_satisfying_committees(election, axiom, accept, seed)
    t = axiom.threshold(election.k)
    handle = _kernel.handle_for(election)
    check = _kernel.impl.check
    contains = [0] * election.m
    pivotal = [0] * election.m
    for committee in accepted:
        for c in committee:
            contains[c] += 1
            reduced = tuple(x for x in committee if x != c)
            if not check(handle, reduced, t):
                pivotal[c] += 1
    rows = []
    for c in range(election.m):
        rows.append(
            [
                name,
                c,
                election.approval_score(c),
                contains[c] / accept,
                pivotal[c] / accept,
            ]
        )
    return rows


def cmd_importance(args) -> int:
    axiom = parse_axiom(args.axiom)
    elections = _load_elections(args)
    accept = _acceptance_budget(args)
    rows = []
    for idx, (name, election) in enumerate(elections):
        seed = spawn_seed(args.seed, idx)
        if args.max_ejrp_fraction is not None:
            draws, accepted, _ = _timed_rejection(
                election, EJRP, accept, seed, args.timeout
            )
            fraction = len(accepted) / draws if draws else 1.0
            if fraction > args.max_ejrp_fraction:
                print(
                    f"skipped {name}: ejrp fraction {fraction:.3f} > {args.max_ejrp_fraction}",
                    file=sys.stderr,
                )
                continue
        rows.extend(_importance_rows(election, name, axiom, accept, seed))
    _write_csv(
        args.out,
        ["instance", "candidate", "approval_score", "prevalence", "power_fraction"],
        rows,
    )
    return 0


def pearson(xs, ys) -> float:
    """Pearson correlation coefficient of two equal-length sequences."""
    if len(xs) != len(ys) or len(xs) < 2:
        raise ValueError("need two sequences of equal length >= 2")
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    cov = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    vx = sum((x - mx) ** 2 for x in xs)
    vy = sum((y - my) ** 2 for y in ys)
    if vx == 0 or vy == 0:
        raise ValueError("a constant sequence has no correlation coefficient")
    return cov / math.sqrt(vx * vy)


def cmd_correlate(args) -> int:
    with open(args.input, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        rows = list(reader)
    measures = ["approval_score", "prevalence", "power_fraction"]
    by_instance: dict[str, dict[str, list[float]]] = {}
    for row in rows:
        inst = by_instance.setdefault(row["instance"], {m: [] for m in measures})
        for m in measures:
            inst[m].append(float(row[m]))
    results = []
    for name, columns in sorted(by_instance.items()):
        record = {"instance": name}
        for i, a in enumerate(measures):
            for b in measures[i + 1 :]:
                try:
                    record[f"pcc_{a}_vs_{b}"] = pearson(columns[a], columns[b])
                except ValueError:
                    record[f"pcc_{a}_vs_{b}"] = None
        results.append(record)
    _write_json(args.out, {"schema": _schema("correlate"), "instances": results})
    return 0


def cmd_rules_overlap(args) -> int:
    elections = _load_elections(args)
    accept = _acceptance_budget(args)
    rows = []
    rules = {
        "mes_phragmen": mes_with_phragmen_completion,
        "seq_phragmen": seq_phragmen,
        "seq_pav": seq_pav,
    }
    for idx, (name, election) in enumerate(elections):
        seed = spawn_seed(args.seed, idx)
        if args.max_ejrp_fraction is not None:
            draws, accepted, _ = _timed_rejection(
                election, EJRP, accept, seed, args.timeout
            )
            fraction = len(accepted) / draws if draws else 1.0
            if fraction > args.max_ejrp_fraction:
                print(
                    f"skipped {name}: ejrp fraction {fraction:.3f} > {args.max_ejrp_fraction}",
                    file=sys.stderr,
                )
                continue
        targets = {"approval_score": top_k_by_score(election, approval_scores(election))}
        for offset, axiom in enumerate((JR, EJRP)):
            _, accepted = collect_satisfying_committees(
                election, axiom, accept, spawn_seed(seed, offset)
            )
            contains = [0] * election.m
            for committee in accepted:
                for c in committee:
                    contains[c] += 1
            targets[f"{axiom}_prevalence"] = top_k_by_score(election, contains)
        for rule_name, rule in rules.items():
            committee = rule(election)
            for measure, target in targets.items():
                rows.append(
                    [name, rule_name, measure, float(relative_overlap(committee, target))]
                )
    _write_csv(args.out, ["instance", "rule", "measure", "overlap"], rows)
    return 0


def cmd_gen(args) -> int:
    outdir = Path(args.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    if args.seeds:
        start, _, end = args.seeds.partition(":")
        seeds = range(int(start), int(end))
    else:
        seeds = [args.seed]
    written = []
    for seed in seeds:
        if args.model == "resampling":
            if args.p is None or args.phi is None:
                raise SystemExit("resampling model needs --p and --phi")
            election = gen_resampling(args.n, args.m, args.k, Fraction(args.p), Fraction(args.phi), seed)
        elif args.model == "euclidean":
            if args.radius is None:
                raise SystemExit("euclidean model needs --radius")
            election = gen_euclidean(args.n, args.m, args.k, args.radius, args.dim, seed)
        else:
            raise SystemExit(f"unknown model {args.model!r}")
        pb = election_to_pabulib(election)
        path = outdir / f"{election.name}.pb"
        path.write_text(emit_pabulib(pb), encoding="utf-8")
        written.append(str(path))
    _write_json(args.out, {"schema": _schema("gen"), "files": written})
    return 0


_ILP_PROBLEMS = (
    "jr_not_ejrp",
    "diff_jr",
    "diff_ejrp",
    "p_candidates_jr",
    "p_candidates_ejrp",
    "quotient_jr_not_ejrp",
    "quotient_diff_ejrp",
    "quotient_p_candidates_ejrp",
    "fpt_diff_jr",
)


def cmd_ilp(args) -> int:
    policy = KPolicy.parse(args.k_policy)
    pb = load_pabulib(_input_files(args.input)[0])
    election = to_election(pb, policy)
    required = _parse_committee(args.required) if args.required else ()
    problem = args.problem

    if problem == "fpt_diff_jr":
        answer, pair = milp.diff_committees_fpt_jr(election, args.min_distance)
        payload = {
            "schema": _schema("ilp"),
            "problem": problem,
            "answer": answer,
            "max_distance": pair.distance,
            "witness_pair": [list(pair.first), list(pair.second)],
        }
        _write_json(args.out, payload)
        return 0

    if problem == "jr_not_ejrp":
        model = milp.build_jr_not_ejrp(election)
    elif problem == "diff_jr":
        model = milp.build_diff_committees(election, JR)
    elif problem == "diff_ejrp":
        model = milp.build_diff_committees(election, EJRP)
    elif problem == "p_candidates_jr":
        model = milp.build_p_candidates(election, required, JR)
    elif problem == "p_candidates_ejrp":
        model = milp.build_p_candidates(election, required, EJRP)
    elif problem == "quotient_jr_not_ejrp":
        model = milp.build_quotient_variant(election, "jr_not_ejrp")
    elif problem == "quotient_diff_ejrp":
        model = milp.build_quotient_variant(election, "diff_committees_ejrp")
    elif problem == "quotient_p_candidates_ejrp":
        model = milp.build_quotient_variant(election, "p_candidates_ejrp", required)
    else:
        raise SystemExit(f"unknown problem {problem!r}; choose from {_ILP_PROBLEMS}")

    if args.emit_lp:
        Path(args.emit_lp).write_text(milp.write_lp(model), encoding="utf-8")
    outcome = milp.solve(model, backend=args.backend, time_limit=args.timeout)
    payload = {"schema": _schema("ilp"), "problem": problem}
    payload.update(outcome.to_json_dict())
    if outcome.assignment is not None:
        decoded = milp.decode_solution(model, outcome.assignment)
        if problem.endswith("jr_not_ejrp"):
            committee, witness = decoded
            payload["committee"] = list(committee)
            payload["witness"] = {
                "candidate": witness.candidate,
                "group_size": witness.group_size,
                "voters": list(witness.voters),
            }
        elif "diff" in problem:
            first, second = decoded
            payload["witness_pair"] = [list(first), list(second)]
        else:
            payload["committee"] = list(decoded)
        del payload["assignment"]
    _write_json(args.out, payload)
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_common(sub, k_policy=True, sampling=True):
    sub.add_argument("--input", required=True, help="a .pb file or a directory of them")
    sub.add_argument("--out", default="-", help="output path (default stdout)")
    if k_policy:
        sub.add_argument(
            "--k-policy",
            default="half",
            help="half | over:C | explicit:K | budget-avg-cost",
        )
    if sampling:
        sub.add_argument("--accept", type=int, default=1000, help="acceptances per estimate")
        sub.add_argument("--epsilon", type=float, default=None,
                         help="with --delta: derive the sample budget from a guarantee")
        sub.add_argument("--delta", type=float, default=None)
        sub.add_argument("--seed", type=int, default=0, help="master seed (64-bit)")
        sub.add_argument("--timeout", type=float, default=None, help="seconds per task")
        sub.add_argument("--jobs", type=int, default=1, help="parallel instances")
        sub.add_argument("--min-avg-ballot", type=float, default=4.0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="propcom",
        description="Proportionality-axiom analyses for approval committee elections",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("check", help="check one committee against an axiom")
    _add_common(p, sampling=False)
    p.add_argument("--committee", required=True, help="comma-separated candidate ids")
    p.add_argument("--axiom", default="jr")
    p.set_defaults(fn=cmd_check)

    p = subs.add_parser("ksweep", help="axiom fractions for every committee size")
    _add_common(p)
    p.add_argument("--axiom", action="append", default=[], help="repeatable; default jr+ejrp")
    p.set_defaults(fn=cmd_ksweep)

    p = subs.add_parser("fractions", help="JR/EJR+ fraction estimates per instance")
    _add_common(p)
    p.set_defaults(fn=cmd_fractions)

    p = subs.add_parser("distance", help="distances between axiom-satisfying committees")
    _add_common(p)
    p.add_argument("--axiom", default="jr")
    p.add_argument("--mode", choices=("avg_sampled", "max_ilp"), default="avg_sampled")
    p.add_argument("--backend", default=None, help="fallback | scipy | subprocess")
    p.set_defaults(fn=cmd_distance)

    p = subs.add_parser("importance", help="per-candidate importance measures")
    _add_common(p)
    p.add_argument("--axiom", default="jr")
    p.add_argument("--max-ejrp-fraction", type=float, default=None,
                   help="skip instances whose EJR+ fraction exceeds this")
    p.set_defaults(fn=cmd_importance)

    p = subs.add_parser("correlate", help="Pearson correlations between importance measures")
    p.add_argument("--input", required=True, help="CSV produced by the importance command")
    p.add_argument("--out", default="-")
    p.set_defaults(fn=cmd_correlate)

    p = subs.add_parser("rules-overlap", help="overlap of rule outputs with top-k measures")
    _add_common(p)
    p.add_argument("--max-ejrp-fraction", type=float, default=None)
    p.set_defaults(fn=cmd_rules_overlap)

    p = subs.add_parser("gen", help="generate synthetic elections as .pb files")
    p.add_argument("--model", required=True, choices=("resampling", "euclidean"))
    p.add_argument("--n", type=int, default=150)
    p.add_argument("--m", type=int, default=50)
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--p", default=None, help="resampling approval probability")
    p.add_argument("--phi", default=None, help="resampling noise probability")
    p.add_argument("--radius", type=float, default=None)
    p.add_argument("--dim", type=int, default=2, choices=(1, 2))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--seeds", default=None, help="range START:END, one file per seed")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(fn=cmd_gen)

    p = subs.add_parser("ilp", help="decision/optimization problems over the committee space")
    _add_common(p, sampling=False)
    p.add_argument("--problem", required=True, help="|".join(_ILP_PROBLEMS))
    p.add_argument("--required", default="", help="comma-separated required candidates")
    p.add_argument("--backend", default=None)
    p.add_argument("--timeout", type=float, default=None)
    p.add_argument("--min-distance", type=int, default=None)
    p.add_argument("--emit-lp", default=None, help="also write the LP file here")
    p.set_defaults(fn=cmd_ilp)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    raise SystemExit(main())
