"""Benchmark harness: run planner tasks over instance files and report.

A task pins down everything one planner run needs (instance, mode, k,
diversity features, novelty and resource limits). Runs produce a JSON plan
document and a result row; suites fan out over a directory x modes x k values
and aggregate behaviour counts over the instances all modes solved.
"""

from __future__ import annotations

import csv
import json
import statistics
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from .behaviour import BehaviourSpace, CostBound, GoalOrder, behaviour_to_json
from .core import plan_cost
from .domains import load_problem
from .domains.puzznic import EMPTY, PuzznicProblem, puzznic_step
from .errors import BudgetExceeded, DivsimError, InapplicableAction
from .search import (
    NoveltyConfig,
    PlanSetResult,
    SearchLimits,
    fbi,
    fbi_naive,
)

MODES = ("fbi", "naive")
FEATURES = ("go", "cb")
OUTCOMES = ("done", "exhausted", "timeout", "nodecap", "error")

CSV_COLUMNS = (
    "instance",
    "mode",
    "k",
    "solved",
    "plans_found",
    "behaviour_count",
    "wall_time_s",
    "outcome",
)


@dataclass(frozen=True)
class TaskSpec:
    instance: str
    mode: str = "fbi"
    k: int = 1
    domain: Optional[str] = None
    features: tuple = FEATURES
    cost_bound: int = 1000
    novelty: NoveltyConfig = field(default_factory=NoveltyConfig)
    time_budget_s: float = 1800.0
    node_budget: int = 10_000_000
    interior_pruning: bool = True

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if not self.features:
            raise ValueError("at least one diversity feature is required")
        for f in self.features:
            if f not in FEATURES:
                raise ValueError(f"unknown feature {f!r}; expected a subset of {FEATURES}")

    @property
    def limits(self) -> SearchLimits:
        return SearchLimits(self.cost_bound, self.time_budget_s, self.node_budget)


@dataclass(frozen=True)
class SuiteResultRow:
    instance: str
    mode: str
    k: int
    solved: bool
    plans_found: int
    behaviour_count: int
    wall_time_s: float
    outcome: str


def build_space(problem, features: Sequence[str], cost_bound: int) -> BehaviourSpace:
    parts = []
    for f in features:
        if f == "go":
            parts.append(GoalOrder(tuple(problem.goal_predicates)))
        elif f == "cb":
            parts.append(CostBound(cost_bound))
        else:
            raise ValueError(f"unknown feature {f!r}")
    return BehaviourSpace(tuple(parts))


def plan_set_document(spec: TaskSpec, problem, result: PlanSetResult, outcome: str) -> dict:
    plans = []
    for i, plan in enumerate(result.plans):
        entry = {"actions": list(plan), "cost": plan_cost(problem, plan)}
        if i < len(result.behaviours):
            entry["behaviour"] = behaviour_to_json(result.behaviours[i])
        plans.append(entry)
    return {
        "instance": str(spec.instance),
        "mode": spec.mode,
        "k": spec.k,
        "plans": plans,
        "behaviour_count": result.behaviour_count,
        "stats": {**result.stats.as_dict(), "outcome": outcome},
    }


def run_task(spec: TaskSpec, plans_path=None):
    """Run one planning task; returns ``(PlanSetResult, SuiteResultRow, document)``.

    The document is the JSON-ready plan set; it is also written to
    ``plans_path`` when one is given. A tripped resource budget is folded
    into the row (outcome timeout or nodecap) with whatever plans were
    collected before the trip.
    """
    problem = load_problem(spec.instance, spec.domain)
    space = build_space(problem, spec.features, spec.cost_bound)
    try:
        if spec.mode == "fbi":
            result = fbi(
                problem,
                space,
                spec.k,
                spec.novelty,
                spec.limits,
                interior_pruning=spec.interior_pruning,
            )
        else:
            result = fbi_naive(problem, spec.k, spec.novelty, spec.limits, space=space)
        outcome = "exhausted" if result.exhausted else "done"
    except BudgetExceeded as err:
        result = err.partial
        outcome = "timeout" if err.kind == "time" else "nodecap"
    row = SuiteResultRow(
        instance=Path(spec.instance).name,
        mode=spec.mode,
        k=spec.k,
        solved=bool(result.plans) and outcome in ("done", "exhausted"),
        plans_found=len(result.plans),
        behaviour_count=result.behaviour_count,
        wall_time_s=round(result.stats.wall_time_s, 6),
        outcome=outcome,
    )
    doc = plan_set_document(spec, problem, result, outcome)
    if plans_path is not None:
        Path(plans_path).write_text(json.dumps(doc, indent=2) + "\n")
    return result, row, doc


INSTANCE_SUFFIXES = (".grid", ".puz", ".json")


def run_suite(
    suite_dir,
    modes: Sequence[str] = MODES,
    k_list: Sequence[int] = (2, 5, 10),
    *,
    features: tuple = FEATURES,
    cost_bound: int = 1000,
    novelty: NoveltyConfig = NoveltyConfig(),
    time_budget_s: float = 1800.0,
    node_budget: int = 10_000_000,
    plans_dir=None,
):
    """Run every instance in a directory for every mode and k.

    Returns ``(rows, aggregates)``. A task that errors out becomes a row with
    outcome "error" instead of aborting the rest of the suite.
    """
    paths = sorted(
        p
        for p in Path(suite_dir).iterdir()
        if p.is_file() and p.suffix.lower() in INSTANCE_SUFFIXES
    )
    if plans_dir is not None:
        Path(plans_dir).mkdir(parents=True, exist_ok=True)
    rows = []
    for path in paths:
        for k in k_list:
            for mode in modes:
                spec = TaskSpec(
                    instance=str(path),
                    mode=mode,
                    k=k,
                    features=features,
                    cost_bound=cost_bound,
                    novelty=novelty,
                    time_budget_s=time_budget_s,
                    node_budget=node_budget,
                )
                plans_path = (
                    Path(plans_dir) / f"{path.stem}-{mode}-k{k}.json"
                    if plans_dir is not None
                    else None
                )
                try:
                    _, row, _ = run_task(spec, plans_path)
                except (DivsimError, ValueError, OSError) as err:
                    row = SuiteResultRow(path.name, mode, k, False, 0, 0, 0.0, "error")
                    print(
                        f"warning: {path.name} ({mode}, k={k}): {err}",
                        file=sys.stderr,
                    )
                rows.append(row)
    return rows, aggregate_rows(rows)


def aggregate_rows(rows: Sequence[SuiteResultRow]) -> list:
    """Per-k summary over the instances every mode solved.

    Average times come in two flavours because unsolved runs drag the mean:
    ``avg_time_solved_s`` is over solved rows only, ``avg_time_all_s`` over
    every row of the mode.
    """
    modes = sorted({r.mode for r in rows})
    out = []
    for k in sorted({r.k for r in rows}):
        batch = [r for r in rows if r.k == k]
        by_mode = {m: {r.instance: r for r in batch if r.mode == m} for m in modes}
        solved = {m: {i for i, r in by_mode[m].items() if r.solved} for m in modes}
        common = set.intersection(*solved.values()) if solved else set()

        def _avg(values):
            values = list(values)
            return round(statistics.fmean(values), 6) if values else None

        out.append(
            {
                "k": k,
                "coverage": {m: len(solved[m]) for m in modes},
                "commonly_solved": len(common),
                "behaviour_count": {
                    m: sum(by_mode[m][i].behaviour_count for i in sorted(common))
                    for m in modes
                },
                "avg_time_solved_s": {
                    m: _avg(r.wall_time_s for r in by_mode[m].values() if r.solved)
                    for m in modes
                },
                "avg_time_all_s": {
                    m: _avg(r.wall_time_s for r in by_mode[m].values()) for m in modes
                },
            }
        )
    return out


def format_aggregates(aggregates: Sequence[dict]) -> str:
    lines = []
    for entry in aggregates:
        modes = sorted(entry["coverage"])
        lines.append(f"k={entry['k']}  commonly solved: {entry['commonly_solved']}")
        for m in modes:
            solved_avg = entry["avg_time_solved_s"][m]
            solved_avg = "-" if solved_avg is None else f"{solved_avg:.3f}s"
            lines.append(
                f"  {m:<6} coverage {entry['coverage'][m]:>3}"
                f"  BC {entry['behaviour_count'][m]:>4}"
                f"  avg time (solved) {solved_avg}"
            )
    return "\n".join(lines)


def write_rows_csv(path, rows: Sequence[SuiteResultRow]):
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_COLUMNS)
        for r in rows:
            writer.writerow(
                [
                    r.instance,
                    r.mode,
                    r.k,
                    str(r.solved).lower(),
                    r.plans_found,
                    r.behaviour_count,
                    r.wall_time_s,
                    r.outcome,
                ]
            )


def _compose_frame(caption: str, grid, cursor, score: int, extra: str = "") -> str:
    rows = []
    for r, row in enumerate(grid):
        cells = []
        for c, cell in enumerate(row):
            if (r, c) == cursor:
                cells.append("@" if cell == EMPTY else cell.upper())
            else:
                cells.append(cell)
        rows.append("".join(cells))
    lines = [caption] + rows + [f"score {score}"]
    if extra:
        lines.append(extra)
    return "\n".join(lines)


def render_puzznic(problem: PuzznicProblem, plan: Sequence[str]) -> list:
    """ASCII playback: one frame per action plus fall/clear frames.

    The last frame carries the final score and the order in which patterns
    cleared. Replay failures surface as InapplicableAction tagged with the
    failing plan step.
    """
    level = problem.level0
    frames = [_compose_frame("initial", level.grid, level.cursor, level.score)]
    clear_order = []
    for index, name in enumerate(plan):
        record = []
        try:
            after = puzznic_step(level, name, record)
        except InapplicableAction as err:
            raise InapplicableAction(
                f"{err.reason} (frame {len(frames)})", index=index
            ) from None
        if not record:
            frames.append(
                _compose_frame(name, after.grid, after.cursor, after.score)
            )
        else:
            score = level.score
            for kind, grid, info in record:
                if kind == "push":
                    caption = name
                elif kind == "fall":
                    caption = "fall"
                else:
                    wave, cleared, gain = info
                    score += gain
                    patterns = sorted({p for _, _, p in cleared})
                    for p in patterns:
                        if p not in clear_order:
                            clear_order.append(p)
                    caption = f"clear wave {wave}: {len(cleared)} block(s) +{gain}"
                frames.append(_compose_frame(caption, grid, after.cursor, score))
        level = after
    if clear_order:
        frames[-1] += "\ncleared order: " + ", ".join(clear_order)
    return frames
