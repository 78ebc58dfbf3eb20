"""Heuristic evaluators over grounded tasks.

Provides the exact optimal relaxed-plan length (``h_plus``), a brute-force
iterative-deepening oracle for it (``h_plus_oracle``), the layered
relaxed-planning-graph heuristic with backward plan extraction (``h_ff``),
and the goal-count heuristic (``h_goalcount``).

Values are naturals, with ``INF`` (float infinity) for unsolvable states.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .errors import ResourceExhausted
from .task_model import Task

INF = float("inf")

DEFAULT_ORACLE_BUDGET = 10_000_000


@dataclass
class RelaxedPlanningGraph:
    fact_layers: list        # list of frozenset, monotonically growing
    action_layers: list      # action_layers[i] = sorted action ids applicable at layer i
    first_level: dict        # fact id -> first layer index of appearance
    goal_layer: int | None   # first layer containing the goal, None if never


@dataclass
class RelaxedPlan:
    actions: list            # ordered list of distinct action ids

    @property
    def length(self):
        return len(self.actions)


def build_rpg(task: Task, s) -> RelaxedPlanningGraph:
    """Layered delete-free fixpoint from s; stops at goal or fixpoint."""
    facts = frozenset(s)
    fact_layers = [facts]
    action_layers = []
    first_level = {f: 0 for f in facts}
    goal_layer = 0 if task.goal <= facts else None
    applied = set()
    while goal_layer is None:
        layer_actions = []
        new_facts = set()
        for a in task.actions:
            if a.id not in applied and a.pre <= facts:
                applied.add(a.id)
            if a.id in applied:
                layer_actions.append(a.id)
                new_facts |= a.add - facts
        action_layers.append(layer_actions)
        if not new_facts:
            break
        facts = facts | new_facts
        for f in facts:
            first_level.setdefault(f, len(fact_layers))
        fact_layers.append(facts)
        if task.goal <= facts:
            goal_layer = len(fact_layers) - 1
    return RelaxedPlanningGraph(fact_layers, action_layers, first_level, goal_layer)


def h_goalcount(task: Task, s):
    """Number of goal facts false in s; never infinite."""
    return len(task.goal - s)


def _h_max(task: Task, s):
    """Max over goal facts of the first relaxed layer of appearance (admissible
    lower bound for the optimal relaxed-plan length)."""
    facts = set(s)
    remaining = set(task.goal) - facts
    level = 0
    while remaining:
        new = set()
        for a in task.actions:
            if a.pre <= facts:
                new |= a.add
        new -= facts
        if not new:
            return INF
        facts |= new
        level += 1
        remaining -= new
    return level


class _LandmarkCutter:
    """Disjunctive-action-landmark machinery over the delete relaxation.

    Repeatedly: compute cost-sensitive layer values under the current action
    costs, pick for every action its costliest precondition as supporter,
    collect the zone of facts connected to the costliest goal fact through
    zero-cost supporter steps, and cut the positive-cost actions whose effect
    enters that zone from a supporter outside it.  Every relaxed plan must
    use an action of each cut, so charging and removing the cut's minimum
    cost yields an admissible lower bound that dominates the layer bound.
    """

    def __init__(self, task: Task, s):
        self.task = task
        self.init = frozenset(s)
        self.n = len(task.actions)
        self.pre_count = [len(a.pre) for a in task.actions]
        self.adds = [sorted(a.add) for a in task.actions]
        self.pre_index = {}
        self.achievers = {}
        for a in task.actions:
            for p in a.pre:
                self.pre_index.setdefault(p, []).append(a.id)
            for f in a.add:
                self.achievers.setdefault(f, []).append(a.id)

    def _layers(self, cost):
        """Cost-sensitive layer values; cost[aid] is None for excluded
        actions.  Returns (fact value map, supporter map, reached flags)."""
        val = {f: 0 for f in self.init}
        heap = [(0, f) for f in self.init]
        heapq.heapify(heap)
        remaining = self.pre_count[:]
        supporter = {}
        reached = [False] * self.n
        for aid in range(self.n):
            if cost[aid] is None:
                remaining[aid] = -1
            elif remaining[aid] == 0:
                # precondition-free: supported by the always-true pseudo-fact
                reached[aid] = True
                supporter[aid] = None
                v = cost[aid]
                for f in self.adds[aid]:
                    if val.get(f, INF) > v:
                        val[f] = v
                        heapq.heappush(heap, (v, f))
        done = set()
        while heap:
            d, f = heapq.heappop(heap)
            if f in done:
                continue
            done.add(f)
            for aid in self.pre_index.get(f, ()):
                if remaining[aid] <= 0:
                    continue
                remaining[aid] -= 1
                # facts pop in (value, id) order: the last one is the
                # costliest precondition, ties broken by highest fact id
                supporter[aid] = f
                if remaining[aid] == 0:
                    reached[aid] = True
                    v = cost[aid] + d
                    for g in self.adds[aid]:
                        if val.get(g, INF) > v:
                            val[g] = v
                            heapq.heappush(heap, (v, g))
        return val, supporter, reached

    def rounds(self, cost):
        """Run cut rounds on (and consume) ``cost``.

        Returns (total charged cost, first cut found).  Total is INF when
        the goal is unreachable with the non-excluded actions.
        """
        goal = self.task.goal
        if goal <= self.init:
            return 0, None
        total = 0
        first_cut = None
        while True:
            val, supporter, reached = self._layers(cost)
            gf = max(goal, key=lambda g: (val.get(g, INF), g))
            gc = val.get(gf, INF)
            if gc is INF:
                return INF, None
            if gc == 0:
                return total, first_cut
            zone = {gf}
            stack = [gf]
            while stack:
                f = stack.pop()
                for aid in self.achievers.get(f, ()):
                    if reached[aid] and cost[aid] == 0:
                        p = supporter[aid]
                        if p is not None and p not in zone:
                            zone.add(p)
                            stack.append(p)
            cut = sorted(
                aid for aid in range(self.n)
                if reached[aid] and cost[aid] > 0
                and supporter[aid] not in zone
                and any(f in zone for f in self.adds[aid]))
            if not cut:
                return total, first_cut
            if first_cut is None:
                first_cut = cut
            m = min(cost[aid] for aid in cut)
            total += m
            for aid in cut:
                cost[aid] -= m


def _h_landmark_cut(task: Task, s):
    """Landmark lower bound for the optimal relaxed-plan length."""
    return _LandmarkCutter(task, s).rounds([1] * len(task.actions))[0]


def h_plus_oracle(task: Task, s, budget: int = DEFAULT_ORACLE_BUDGET):
    """Iterative-deepening DFS over relaxed action sequences.

    Every applied action must add at least one fact not yet in the relaxed
    state (a minimal relaxed plan has no redundant step).  Exponential; meant
    as ground truth on small inputs only.
    """
    rpg = build_rpg(task, s)
    if rpg.goal_layer is None:
        return INF
    expanded = [0]

    def dfs(state, depth_left):
        if task.goal <= state:
            return True
        if depth_left == 0:
            return False
        expanded[0] += 1
        if expanded[0] > budget:
            raise ResourceExhausted(f"oracle budget of {budget} nodes exceeded")
        for a in task.actions:
            if a.pre <= state and not a.add <= state:
                if dfs(state | a.add, depth_left - 1):
                    return True
        return False

    start = frozenset(s)
    depth = 0
    while True:
        if dfs(start, depth):
            return depth
        depth += 1


def h_ff(task: Task, s, tie_break=None):
    """Relaxed-Graphplan heuristic: (value, RelaxedPlan or None).

    Backward extraction from the first goal layer.  An open goal at layer i
    is satisfied by a no-op whenever it already appears at layer i-1;
    otherwise by an achiever from action layer i-1 minimizing the summed
    first-appearance layers of its preconditions, ties broken by lowest
    action id (``tie_break`` may override the choice among equal-weight
    achievers, for determinism experiments).  Goals are processed highest
    layer first, FIFO within a layer; facts added by an action already
    selected at the same layer need no achiever of their own.
    """
    rpg = build_rpg(task, s)
    if rpg.goal_layer is None:
        return INF, None
    m = rpg.goal_layer
    first = rpg.first_level
    open_goals = {i: [] for i in range(m + 1)}
    for g in sorted(task.goal):
        open_goals[m].append(g)
    selected_at = {i: [] for i in range(m + 1)}   # layer -> action ids, selection order
    added_at = {i: set() for i in range(m + 1)}   # facts added by selections at layer
    selected_layer = {}                           # action id -> layer of its selection

    def weight(aid):
        return sum(first[p] for p in task.actions[aid].pre)

    for i in range(m, 0, -1):
        queue = open_goals[i]
        k = 0
        while k < len(queue):
            g = queue[k]
            k += 1
            if g in added_at[i]:
                continue
            if g in rpg.fact_layers[i - 1]:
                open_goals[i - 1].append(g)     # no-op preferred
                continue
            candidates = [aid for aid in rpg.action_layers[i - 1]
                          if g in task.actions[aid].add]
            best_w = min(weight(aid) for aid in candidates)
            best = [aid for aid in candidates if weight(aid) == best_w]
            if tie_break is not None and len(best) > 1:
                choice = tie_break(task, g, best)
            else:
                choice = min(best)
            prev = selected_layer.get(choice)
            if prev is None:
                selected_layer[choice] = i
                selected_at[i].append(choice)
                added_at[i] |= task.actions[choice].add
                for p in sorted(task.actions[choice].pre):
                    open_goals[i - 1].append(p)
            elif prev > i:
                # Already selected for a later layer; pull it forward so that
                # its single occurrence precedes this goal's consumer, and
                # re-open its preconditions at the earlier position.
                selected_at[prev].remove(choice)
                selected_layer[choice] = i
                selected_at[i].append(choice)
                added_at[i] |= task.actions[choice].add
                for p in sorted(task.actions[choice].pre):
                    open_goals[i - 1].append(p)
    plan = []
    for i in range(1, m + 1):
        plan.extend(selected_at[i])
    return len(plan), RelaxedPlan(plan)


def h_plus(task: Task, s, budget: int | None = None):
    """Exact optimal relaxed-plan length via landmark branch-and-bound.

    A minimal relaxed plan is a set of actions; every disjunctive action
    landmark (cut) must contribute at least one member.  The search
    branches over the members of the first cut: branch i commits member i
    into the plan (its cost drops to zero) and bans members 0..i-1, which
    partitions the candidate plans.  A branch closes when the goal becomes
    reachable through committed actions alone, and is pruned when the paid
    cost plus the landmark bound reaches the incumbent (seeded by h_ff).
    Agrees with h_plus_oracle everywhere.
    """
    ub, _ = h_ff(task, s)
    if ub is INF:
        return INF
    if _h_max(task, s) == ub:
        return ub
    cutter = _LandmarkCutter(task, s)
    n = len(task.actions)
    lb0, _ = cutter.rounds([1] * n)
    if lb0 == ub:
        return ub
    best = [ub]
    expanded = [0]

    def bb(included, excluded, paid):
        if budget is not None:
            expanded[0] += 1
            if expanded[0] > budget:
                raise ResourceExhausted(f"h_plus budget of {budget} nodes exceeded")
        cost = [0 if aid in included else (None if aid in excluded else 1)
                for aid in range(n)]
        total, cut = cutter.rounds(cost)
        if total is INF or paid + total >= best[0]:
            return
        if total == 0:
            # goal reachable through committed actions only
            best[0] = paid
            return
        banned = set(excluded)
        for aid in cut:
            bb(included | {aid}, frozenset(banned), paid + 1)
            banned.add(aid)

    bb(frozenset(), frozenset(), 0)
    return best[0]


HEURISTICS = {
    "hplus": lambda task, s: h_plus(task, s),
    "hff": lambda task, s: h_ff(task, s)[0],
    "goalcount": h_goalcount,
    "oracle": lambda task, s: h_plus_oracle(task, s),
}
