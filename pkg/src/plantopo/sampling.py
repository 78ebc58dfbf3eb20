"""Random-walk state sampling, valley detection, and sampled exit distances.

A sample is the endpoint of a random applicable-action walk from the initial
state, with walk length drawn uniformly between zero and a factor times a
reference plan length.  A state lies on a valley when no goal state can be
reached along a path whose heuristic value never increases.  Sampled exit
distances replicate the exhaustive definition, breadth-first from the state,
without enumerating the whole space.
"""

from __future__ import annotations

import csv
import io
import random
from collections import deque
from dataclasses import dataclass, field

from .errors import NoReferencePlan, PlantopoError, PreconditionViolated, \
    ResourceExhausted
from .generators import generate
from .heuristics import HEURISTICS, INF
from .search import OUTCOME_SOLVED, enforced_hill_climbing
from .state_space import DEFAULT_MAX_STATES
from .task_model import Task, is_goal


@dataclass
class SampleConfig:
    samples_per_instance: int = 100
    walk_length_factor: float = 2.0
    seed: int = 0
    heuristic: str = "hff"


@dataclass
class InstanceResult:
    domain: str
    params: tuple
    instance_seed: int
    samples: int = 0
    valley_count: int = 0
    valley_percentage: float = 0.0
    sampled_max_exit_distance: object = 0
    error: str | None = None


@dataclass
class SampleReport:
    rows: list = field(default_factory=list)
    group_means: dict = field(default_factory=dict)   # (domain, params) -> means

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["domain", "params", "instance_seed", "valley_pct",
                         "max_exit_distance", "samples", "flagged_errors"])
        for row in self.rows:
            params = ";".join(f"{k}={v}" for k, v in row.params)
            writer.writerow([
                row.domain, params, row.instance_seed,
                f"{row.valley_percentage:.1f}",
                "inf" if row.sampled_max_exit_distance is INF
                else row.sampled_max_exit_distance,
                row.samples, row.error or "",
            ])
        return buf.getvalue()


def reference_plan_length(task: Task) -> int:
    """Plan length used to scale walks: hill-climbing under the relaxed-plan
    heuristic, falling back to the exact relaxed-length heuristic."""
    result = enforced_hill_climbing(task, HEURISTICS["hff"])
    if result.outcome != OUTCOME_SOLVED:
        result = enforced_hill_climbing(task, HEURISTICS["hplus"])
    if result.outcome != OUTCOME_SOLVED:
        raise NoReferencePlan(f"no reference plan found for {task.name}")
    return len(result.plan)


def sample_states(task: Task, cfg: SampleConfig) -> list:
    """Endpoints of seeded random walks; a walk stuck in a state without
    applicable actions ends there early."""
    length = reference_plan_length(task)
    horizon = int(cfg.walk_length_factor * length)
    rng = random.Random(f"{cfg.seed}|{task.name}|walks")
    samples = []
    init = frozenset(task.init)
    for _ in range(cfg.samples_per_instance):
        steps = rng.randint(0, horizon) if horizon > 0 else 0
        s = init
        for _ in range(steps):
            applicable = [a for a in task.actions if a.pre <= s]
            if not applicable:
                break
            a = rng.choice(applicable)
            s = frozenset((s | a.add) - a.delete)
        samples.append(s)
    return samples


def on_valley(task: Task, s, heuristic, max_states: int = DEFAULT_MAX_STATES) -> bool:
    """True iff no goal state is reachable from s along a path on which the
    heuristic value is monotonically non-increasing."""
    h_cache = {}

    def h(state):
        v = h_cache.get(state)
        if v is None:
            v = heuristic(task, state)
            h_cache[state] = v
        return v

    start = frozenset(s)
    if is_goal(task, start):
        return False
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        hu = h(u)
        for a in task.actions:
            if not a.pre <= u:
                continue
            v = frozenset((u | a.add) - a.delete)
            if v in seen or h(v) > hu:
                continue
            if is_goal(task, v):
                return False
            seen.add(v)
            if len(seen) > max_states:
                raise ResourceExhausted(
                    f"valley search exceeded {max_states} states")
            queue.append(v)
    return True


def sampled_exit_distance(task: Task, s, heuristic,
                          max_states: int = DEFAULT_MAX_STATES):
    """Distance to the nearest exit at s's heuristic level, breadth-first
    over all transitions from s, without full enumeration."""
    h_cache = {}

    def h(state):
        v = h_cache.get(state)
        if v is None:
            v = heuristic(task, state)
            h_cache[state] = v
        return v

    start = frozenset(s)
    level = h(start)
    if level is INF or level == 0:
        raise PreconditionViolated(
            "exit distance requires a finite, nonzero heuristic value")

    def successors(u):
        return [frozenset((u | a.add) - a.delete)
                for a in task.actions if a.pre <= u]

    def is_exit(u):
        return h(u) == level and any(h(v) < level for v in successors(u))

    if is_exit(start):
        return 0
    seen = {start}
    queue = deque([(start, 0)])
    while queue:
        u, d = queue.popleft()
        for v in successors(u):
            if v in seen:
                continue
            if is_exit(v):
                return d + 1
            seen.add(v)
            if len(seen) > max_states:
                raise ResourceExhausted(
                    f"exit-distance search exceeded {max_states} states")
            queue.append((v, d + 1))
    return INF


def run_experiment(specs: list, cfg: SampleConfig,
                   max_states: int = DEFAULT_MAX_STATES) -> SampleReport:
    """Sample every instance, flag per-instance failures instead of aborting,
    and aggregate means per (domain, parameters) group."""
    heuristic = HEURISTICS[cfg.heuristic]
    report = SampleReport()
    groups = {}
    for spec in specs:
        row = InstanceResult(spec.domain_name, spec.params, spec.seed)
        try:
            task = generate(spec)
            states = sample_states(task, cfg)
            row.samples = len(states)
            max_ed = 0
            for s in states:
                if on_valley(task, s, heuristic, max_states):
                    row.valley_count += 1
                hv = heuristic(task, s)
                if hv is not INF and hv != 0:
                    ed = sampled_exit_distance(task, s, heuristic, max_states)
                    if ed is INF or ed > max_ed:
                        max_ed = ed if ed is INF else max(max_ed, ed)
            row.valley_percentage = 100.0 * row.valley_count / len(states)
            row.sampled_max_exit_distance = max_ed
        except (PlantopoError, ValueError) as exc:
            row.error = f"{type(exc).__name__}: {exc}"
        report.rows.append(row)
        if row.error is None:
            groups.setdefault((spec.domain_name, spec.params), []).append(row)
    for key, rows in groups.items():
        eds = [r.sampled_max_exit_distance for r in rows]
        report.group_means[key] = {
            "valley_pct": sum(r.valley_percentage for r in rows) / len(rows),
            "max_exit_distance":
                INF if any(e is INF for e in eds) else sum(eds) / len(rows),
        }
    return report
