"""Exhaustive reachable state-space enumeration and topology classification.

A state space carries, per state, the chosen heuristic value and the true
goal distance.  Plateaus are strongly connected components of the subgraph
induced on states sharing a heuristic value; each plateau is classified as
recognized dead end, local minimum, bench, contour, or global minimum.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import ResourceExhausted
from .heuristics import INF
from .task_model import Task, is_goal

PLATEAU_RECOGNIZED_DEAD_END = "RecognizedDeadEnd"
PLATEAU_LOCAL_MINIMUM = "LocalMinimum"
PLATEAU_BENCH = "Bench"
PLATEAU_CONTOUR = "Contour"
PLATEAU_GLOBAL_MINIMUM = "GlobalMinimum"

DEAD_END_UNDIRECTED = "Undirected"
DEAD_END_HARMLESS = "Harmless"
DEAD_END_RECOGNIZED = "Recognized"
DEAD_END_UNRECOGNIZED = "Unrecognized"

DEFAULT_MAX_STATES = 200_000


@dataclass
class StateSpace:
    task: Task
    states: list                 # State (frozenset of fact ids), id 0 = init
    transitions: list            # per state id: list of (action id, succ id)
    h: list                      # per state id: heuristic value
    gd: list                     # per state id: goal distance or INF
    index: dict = field(repr=False, default_factory=dict)  # State -> id

    @property
    def size(self):
        return len(self.states)

    def successors(self, sid):
        return self.transitions[sid]


@dataclass
class Plateau:
    id: int
    level: object                # heuristic value shared by all members
    member_state_ids: frozenset
    plateau_class: str


@dataclass
class TopologyReport:
    dead_end_class: str
    plateaus: list
    ed: dict                     # state id -> exit distance (local-min/bench states)
    mlmed: object
    mbed: object
    unrecognized_dead_end_depths: dict
    plateau_of: dict             # state id -> plateau id


def enumerate_space(task: Task, heuristic, max_states: int = DEFAULT_MAX_STATES) -> StateSpace:
    """Breadth-first expansion from init in action-id order.

    ``heuristic`` is a callable (task, state) -> value.  Goal distances come
    from a backward breadth-first search over reversed transitions from all
    goal states.
    """
    init = frozenset(task.init)
    states = [init]
    index = {init: 0}
    transitions = []
    frontier = deque([0])
    while frontier:
        sid = frontier.popleft()
        s = states[sid]
        succs = []
        for a in task.actions:
            if a.pre <= s:
                ns = frozenset((s | a.add) - a.delete)
                nid = index.get(ns)
                if nid is None:
                    if len(states) >= max_states:
                        raise ResourceExhausted(
                            f"state cap of {max_states} exceeded during enumeration")
                    nid = len(states)
                    index[ns] = nid
                    states.append(ns)
                    frontier.append(nid)
                succs.append((a.id, nid))
        transitions.append(succs)

    h = [heuristic(task, s) for s in states]

    # goal distance by backward BFS over reversed edges
    preds = [[] for _ in states]
    for sid, succs in enumerate(transitions):
        for _, nid in succs:
            preds[nid].append(sid)
    gd = [INF] * len(states)
    queue = deque()
    for sid, s in enumerate(states):
        if is_goal(task, s):
            gd[sid] = 0
            queue.append(sid)
    while queue:
        sid = queue.popleft()
        for pid in preds[sid]:
            if gd[pid] is INF:
                gd[pid] = gd[sid] + 1
                queue.append(pid)

    return StateSpace(task, states, transitions, h, gd, index)


def dead_end_class(space: StateSpace) -> str:
    undirected = True
    for sid, succs in enumerate(space.transitions):
        for _, nid in succs:
            if nid != sid and not any(back == sid for _, back in space.transitions[nid]):
                undirected = False
                break
        if not undirected:
            break
    if undirected:
        return DEAD_END_UNDIRECTED
    if all(d is not INF for d in space.gd):
        return DEAD_END_HARMLESS
    if all(space.h[sid] is INF for sid in range(space.size) if space.gd[sid] is INF):
        return DEAD_END_RECOGNIZED
    return DEAD_END_UNRECOGNIZED


def _sccs(nodes, succ):
    """Iterative Tarjan strongly-connected components over the given nodes."""
    indexed = {}
    lowlink = {}
    on_stack = set()
    stack = []
    counter = [0]
    comps = []
    for root in nodes:
        if root in indexed:
            continue
        work = [(root, iter(succ(root)))]
        indexed[root] = lowlink[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in indexed:
                    indexed[w] = lowlink[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ(w))))
                    advanced = True
                    break
                elif w in on_stack:
                    if indexed[w] < lowlink[v]:
                        lowlink[v] = indexed[w]
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if lowlink[v] < lowlink[parent]:
                    lowlink[parent] = lowlink[v]
            if lowlink[v] == indexed[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def _exit_states(space: StateSpace, level):
    """States at the given heuristic level with a strictly improving successor."""
    exits = set()
    for sid in range(space.size):
        if space.h[sid] == level:
            for _, nid in space.transitions[sid]:
                if space.h[nid] < level:
                    exits.add(sid)
                    break
    return exits


def classify_plateau(space: StateSpace, level, members, exits=None) -> str:
    if level is INF:
        return PLATEAU_RECOGNIZED_DEAD_END
    if level == 0:
        return PLATEAU_GLOBAL_MINIMUM
    if exits is None:
        exits = _exit_states(space, level)
    # flat reachability from the plateau: paths staying at h == level
    seen = set(members)
    queue = deque(members)
    reached_exit = False
    while queue:
        sid = queue.popleft()
        if sid in exits:
            reached_exit = True
            break
        for _, nid in space.transitions[sid]:
            if nid not in seen and space.h[nid] == level:
                seen.add(nid)
                queue.append(nid)
    if not reached_exit:
        return PLATEAU_LOCAL_MINIMUM
    if all(sid in exits for sid in members):
        return PLATEAU_CONTOUR
    return PLATEAU_BENCH


def plateaus(space: StateSpace) -> list:
    """Plateau partition: SCCs of each heuristic level's induced subgraph."""
    by_level = {}
    for sid in range(space.size):
        by_level.setdefault(space.h[sid], []).append(sid)
    result = []
    pid = 0
    for level in sorted(by_level, key=lambda v: (v is INF, v)):
        members_at_level = set(by_level[level])

        def succ(sid):
            return [nid for _, nid in space.transitions[sid] if nid in members_at_level]

        exits = _exit_states(space, level) if level not in (0, INF) else None
        for comp in _sccs(sorted(members_at_level), succ):
            cls = classify_plateau(space, level, comp, exits)
            result.append(Plateau(pid, level, frozenset(comp), cls))
            pid += 1
    return result


def exit_distance(space: StateSpace, sid: int):
    """Breadth-first distance (over all transitions) from sid to the nearest
    exit at sid's heuristic level; INF when unreachable."""
    level = space.h[sid]
    exits = _exit_states(space, level)
    if sid in exits:
        return 0
    seen = {sid}
    queue = deque([(sid, 0)])
    while queue:
        cur, d = queue.popleft()
        for _, nid in space.transitions[cur]:
            if nid in seen:
                continue
            if space.h[nid] == level and nid in exits:
                return d + 1
            seen.add(nid)
            queue.append((nid, d + 1))
    return INF


def _unrecognized_depths(space: StateSpace):
    """For every unrecognized dead end, the number of unrecognized dead ends
    reachable through paths that stay within unrecognized dead ends (each
    state reaches itself)."""
    members = {sid for sid in range(space.size)
               if space.gd[sid] is INF and space.h[sid] is not INF}
    depths = {}
    for sid in members:
        seen = {sid}
        queue = deque([sid])
        while queue:
            cur = queue.popleft()
            for _, nid in space.transitions[cur]:
                if nid in members and nid not in seen:
                    seen.add(nid)
                    queue.append(nid)
        depths[sid] = len(seen)
    return depths


def topology_report(space: StateSpace) -> TopologyReport:
    plist = plateaus(space)
    plateau_of = {}
    for p in plist:
        for sid in p.member_state_ids:
            plateau_of[sid] = p.id
    ed = {}
    mlmed = 0
    mbed = 0
    for p in plist:
        if p.plateau_class not in (PLATEAU_LOCAL_MINIMUM, PLATEAU_BENCH):
            continue
        for sid in p.member_state_ids:
            d = exit_distance(space, sid)
            ed[sid] = d
            if p.plateau_class == PLATEAU_LOCAL_MINIMUM:
                mlmed = max(mlmed, d)
            else:
                mbed = max(mbed, d)
    return TopologyReport(
        dead_end_class=dead_end_class(space),
        plateaus=plist,
        ed=ed,
        mlmed=mlmed,
        mbed=mbed,
        unrecognized_dead_end_depths=_unrecognized_depths(space),
        plateau_of=plateau_of,
    )


def export_dot(space: StateSpace) -> str:
    """Deterministic DOT rendering; states sharing an h value share a rank."""
    lines = ["digraph statespace {", "  rankdir=TB;"]
    by_level = {}
    for sid in range(space.size):
        by_level.setdefault(space.h[sid], []).append(sid)

    def level_key(v):
        return (v is INF, v)

    for level in sorted(by_level, key=level_key):
        ids = sorted(by_level[level])
        label = "inf" if level is INF else str(level)
        for sid in ids:
            shape = ' shape=doublecircle' if is_goal(space.task, space.states[sid]) else ""
            lines.append(f'  s{sid} [label="s{sid} h={label}"{shape}];')
        lines.append("  { rank=same; " + " ".join(f"s{sid};" for sid in ids) + " }")
    for sid, succs in enumerate(space.transitions):
        for aid, nid in succs:
            lines.append(f'  s{sid} -> s{nid} [label="{space.task.actions[aid].name}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
