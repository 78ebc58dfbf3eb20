"""Static task analysis.

Covers fact mutexes, the four per-action properties (invertible, at least
invertible, static add effects, relevant delete effects), syntactic lemma
checks, goal regression trees with conflict detection and repair search, the
interaction-freeness and no-local-minima verdicts, and two state-space-backed
semantic validators.

All verdicts are sound: a positive answer is a theorem about the task, and
``Unknown`` is always a permissible result.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionViolated, Truncated
from .heuristics import INF, h_plus
from .state_space import StateSpace
from .task_model import GroundAction, Task

UNKNOWN = "Unknown"

CONFLICT_ALLIED = "Allied"
CONFLICT_ANCESTOR_DELETE = "AncestorDelete"
CONFLICT_GOAL_DELETE = "GoalDelete"

VERDICT_HPLUS_EQUALS_GD = "HplusEqualsGd"
VERDICT_HPLUS_EQUALS_GD_VIA_REPAIRS = "HplusEqualsGdViaRepairs"
VERDICT_NO_LOCAL_MINIMA = "NoLocalMinima"

DEFAULT_NODE_CAP = 1_000_000


# ---------------------------------------------------------------------------
# Mutexes


@dataclass
class MutexTable:
    """Sound but incomplete fact-inconsistency relation.

    A pair is inconsistent when the pairwise-reachability fixpoint never
    marked it reachable; the approximation errs only toward "possibly
    consistent".
    """
    n_facts: int
    reachable_pairs: frozenset      # frozensets {p, q}, p != q
    reachable_facts: frozenset      # fact ids reachable at all

    def inconsistent(self, p: int, q: int) -> bool:
        if p == q:
            return p not in self.reachable_facts
        return frozenset((p, q)) not in self.reachable_pairs


def compute_mutexes(task: Task) -> MutexTable:
    """Pairwise reachability fixpoint seeded with the initial state.

    A pair {p, q} becomes reachable through an action a whose precondition
    facts are pairwise reachable, either because a adds both facts, or
    because a adds p while q (not deleted by a) is reachable together with
    every precondition fact of a.  Singleton reachability is tracked
    alongside.
    """
    init = task.init
    facts_r = set(init)
    pairs_r = {frozenset((p, q)) for p in init for q in init if p != q}

    def pre_ok(a):
        if not all(f in facts_r for f in a.pre):
            return False
        pre = sorted(a.pre)
        for i, p in enumerate(pre):
            for q in pre[i + 1:]:
                if frozenset((p, q)) not in pairs_r:
                    return False
        return True

    changed = True
    while changed:
        changed = False
        for a in task.actions:
            if not pre_ok(a):
                continue
            add = sorted(a.add)
            for i, p in enumerate(add):
                if p not in facts_r:
                    facts_r.add(p)
                    changed = True
                for q in add[i + 1:]:
                    pair = frozenset((p, q))
                    if pair not in pairs_r:
                        pairs_r.add(pair)
                        changed = True
                # p together with any persisting reachable fact q
                for q in list(facts_r):
                    if q == p or q in a.delete or q in a.add:
                        continue
                    pair = frozenset((p, q))
                    if pair in pairs_r:
                        continue
                    if all(frozenset((q, r)) in pairs_r for r in a.pre if r != q):
                        pairs_r.add(pair)
                        changed = True
    return MutexTable(len(task.facts), frozenset(pairs_r), frozenset(facts_r))


# ---------------------------------------------------------------------------
# Per-action properties


@dataclass
class ActionFlags:
    action_id: int
    invertible: int | None            # witness inverse action id
    at_least_invertible: int | None   # witness action id
    static_add_effects: bool
    relevant_delete_effects: bool


def _inconsistent_with_some(mx: MutexTable, f: int, others) -> bool:
    return any(mx.inconsistent(f, g) for g in others)


def action_flags(task: Task, mx: MutexTable) -> list:
    """Evaluate the four action properties for every ground action.

    Invertible: every add fact is inconsistent with some precondition fact,
    deletes are a subset of the precondition, and some action undoes a
    exactly (adds del(a), deletes add(a)) and is applicable right after a.
    At least invertible weakens this to add(inverse) covering del(a) with
    del(inverse) inconsistent with pre(a).  Static add effects: no action
    deletes any add fact of a.  Relevant delete effects: a delete fact
    appears in the goal or in another action's precondition.
    """
    all_deletes = frozenset().union(*(a.delete for a in task.actions)) \
        if task.actions else frozenset()
    flags = []
    for a in task.actions:
        after = (a.pre | a.add) - a.delete
        inv = None
        ali = None
        cond1 = all(_inconsistent_with_some(mx, f, a.pre) for f in a.add)
        for b in task.actions:
            if not b.pre <= after:
                continue
            if (inv is None and cond1 and a.delete <= a.pre
                    and b.add == a.delete and b.delete == a.add):
                inv = b.id
            if (ali is None and b.add >= a.delete
                    and all(_inconsistent_with_some(mx, f, a.pre) for f in b.delete)):
                ali = b.id
            if inv is not None and ali is not None:
                break
        if inv is not None:
            ali = inv if ali is None else ali
        static_add = not (a.add & all_deletes)
        relevant = bool(a.delete & task.goal)
        if not relevant:
            relevant = any(a.delete & b.pre for b in task.actions if b.id != a.id)
        flags.append(ActionFlags(a.id, inv, ali, static_add, relevant))
    return flags


# ---------------------------------------------------------------------------
# Lemma-style syntactic checks


@dataclass
class AnalysisReport:
    mutexes: MutexTable
    flags: list
    lemma1: bool                      # all actions invertible
    lemma2: bool                      # inverses or harmless effects everywhere
    prop2: bool                       # every fact has at most one achiever
    prop3: bool                       # single goal fact, single preconditions
    prop4: bool                       # prop3 plus deletes within preconditions
    conflicts: list | None = None     # None when the tree was too large
    interaction_free_verdict: str | None = None
    no_local_minima_verdict: str | None = None


def check_lemmas(task: Task) -> AnalysisReport:
    mx = compute_mutexes(task)
    flags = action_flags(task, mx)
    lemma1 = all(f.invertible is not None for f in flags)
    lemma2 = all(f.at_least_invertible is not None
                 or (f.static_add_effects and not f.relevant_delete_effects)
                 for f in flags)
    achiever_counts = {}
    for a in task.actions:
        for p in a.add:
            achiever_counts[p] = achiever_counts.get(p, 0) + 1
    prop2 = all(c <= 1 for c in achiever_counts.values())
    prop3 = len(task.goal) <= 1 and all(len(a.pre) <= 1 for a in task.actions)
    prop4 = prop3 and all(a.delete <= a.pre for a in task.actions)
    return AnalysisReport(mx, flags, lemma1, lemma2, prop2, prop3, prop4)


# ---------------------------------------------------------------------------
# Goal regression tree


@dataclass
class Fgt:
    """Alternating AND/OR regression tree over achievers.

    Node 0 is the artificial goal-achievement action (label None) whose
    precondition is the task goal.  Action nodes are AND nodes (children:
    precondition facts); fact nodes are OR nodes (children: achievers).
    Two pruning rules keep the tree finite: an achiever is dropped when one
    of its preconditions already labels a fact node on the root path, and a
    precondition fact is dropped when an action strictly above already
    requires it.
    """
    kinds: list                       # 'A' or 'F' per node
    labels: list                      # action id / fact id; None for the root
    parents: list
    children: list
    truncated: bool

    @property
    def size(self):
        return len(self.kinds)


def build_fgt(task: Task, node_cap: int = DEFAULT_NODE_CAP) -> Fgt:
    achievers = {}
    for a in task.actions:
        for p in a.add:
            achievers.setdefault(p, []).append(a.id)

    kinds, labels, parents, children = [], [], [], []

    def new_node(kind, label, parent):
        nid = len(kinds)
        kinds.append(kind)
        labels.append(label)
        parents.append(parent)
        children.append([])
        if parent is not None:
            children[parent].append(nid)
        return nid

    truncated = [False]
    facts_on_path = set()
    pre_counts = {}

    def expand_action(nid, pre):
        # rule 2 is evaluated before this node's preconditions join the path
        kept = [p for p in sorted(pre) if not pre_counts.get(p)]
        for p in pre:
            pre_counts[p] = pre_counts.get(p, 0) + 1
        for p in kept:
            if truncated[0]:
                break
            if len(kinds) >= node_cap:
                truncated[0] = True
                break
            expand_fact(new_node('F', p, nid), p)
        for p in pre:
            pre_counts[p] -= 1

    def expand_fact(nid, p):
        facts_on_path.add(p)
        for aid in achievers.get(p, ()):
            if truncated[0]:
                break
            a = task.actions[aid]
            if any(q in facts_on_path for q in a.pre):   # rule 1
                continue
            if len(kinds) >= node_cap:
                truncated[0] = True
                break
            expand_action(new_node('A', aid, nid), a.pre)
        facts_on_path.discard(p)

    root = new_node('A', None, None)
    expand_action(root, task.goal)
    return Fgt(kinds, labels, parents, children, truncated[0])


def _node_depths(fgt: Fgt):
    depth = [0] * fgt.size
    for nid in range(1, fgt.size):
        depth[nid] = depth[fgt.parents[nid]] + 1
    return depth


def _make_lca(fgt: Fgt, depth):
    parents = fgt.parents

    def lca(u, v):
        while depth[u] > depth[v]:
            u = parents[u]
        while depth[v] > depth[u]:
            v = parents[v]
        while u != v:
            u = parents[u]
            v = parents[v]
        return u

    return lca


def _node_sets(fgt: Fgt, task: Task, nid):
    label = fgt.labels[nid]
    if label is None:
        return task.goal, frozenset(), frozenset()
    a = task.actions[label]
    return a.pre, a.add, a.delete


def _ancestor_conflicts(fgt: Fgt, task: Task, excluded=None):
    """Descendant action nodes deleting a still-needed ancestor precondition.

    An ancestor action node leaves each precondition fact vulnerable along
    its subtree until some intermediate action re-adds the fact.  The root
    counts as an ancestor with the goal as precondition; hitting it means a
    goal fact is deleted without being re-achieved on the way up.
    """
    vulnerable = {}
    out = []

    def visit(nid):
        if excluded is not None and excluded[nid]:
            return
        if fgt.kinds[nid] == 'F':
            for c in fgt.children[nid]:
                visit(c)
            return
        pre, add, dele = _node_sets(fgt, task, nid)
        label = fgt.labels[nid]
        for f in dele:
            for anc in vulnerable.get(f, ()):
                if fgt.labels[anc] != label:
                    out.append((nid, anc, f))
        saved = {}
        for f in add:
            if vulnerable.get(f):
                saved[f] = vulnerable[f]
                vulnerable[f] = []
        for f in pre:
            vulnerable.setdefault(f, []).append(nid)
        for c in fgt.children[nid]:
            visit(c)
        for f in pre:
            vulnerable[f].pop()
        for f, lst in saved.items():
            vulnerable[f] = lst

    visit(0)
    return out


def _deletion_pairs(task: Task):
    """Unordered action pairs with a delete/precondition interaction."""
    pairs = []
    for a in task.actions:
        for b in task.actions:
            if b.id <= a.id:
                continue
            if (a.delete & b.pre) or (b.delete & a.pre):
                pairs.append((a.id, b.id))
    return pairs


def _allied_label_masks(fgt: Fgt):
    """For each action id, the bitmask of action ids reachable in a sibling
    branch (root paths diverging at an AND node)."""
    order = []
    stack = [0]
    while stack:
        nid = stack.pop()
        order.append(nid)
        stack.extend(fgt.children[nid])
    mask = [0] * fgt.size
    allied = {}
    for nid in reversed(order):
        m = 0
        kids = fgt.children[nid]
        for c in kids:
            m |= mask[c]
        if fgt.kinds[nid] == 'A':
            if len(kids) > 1:
                prefix = 0
                for c in kids:
                    cm = mask[c]
                    mm = cm
                    while mm:
                        bit = mm & -mm
                        allied[bit.bit_length() - 1] = \
                            allied.get(bit.bit_length() - 1, 0) | prefix
                        mm ^= bit
                    prefix |= cm
                suffix = 0
                for c in reversed(kids):
                    cm = mask[c]
                    mm = cm
                    while mm:
                        bit = mm & -mm
                        allied[bit.bit_length() - 1] = \
                            allied.get(bit.bit_length() - 1, 0) | suffix
                        mm ^= bit
                    suffix |= cm
            if fgt.labels[nid] is not None:
                m |= 1 << fgt.labels[nid]
        mask[nid] = m
    return allied


# ---------------------------------------------------------------------------
# Conflicts


@dataclass
class Conflict:
    kind: str
    node_ids: tuple                   # (deleter node, victim node) or (node,)
    action_ids: tuple                 # matching action labels (None = root)
    fact: int
    repairable: object = UNKNOWN      # bool or "Unknown"


def _repair_exists(task: Task, deleter: GroundAction, victim: GroundAction) -> bool:
    available = (deleter.pre | deleter.add) - deleter.delete
    return any(c.pre <= available and c.add >= victim.add for c in task.actions)


def repairable(c: Conflict, task: Task):
    """Single-action repair test.

    For a pair conflict where one action deletes a precondition of the
    other, each deleting direction needs a substitute that is applicable
    right after the deleter and achieves everything the victim would have.
    Only defined for Allied conflicts; the other kinds stay Unknown.
    """
    if c.kind != CONFLICT_ALLIED:
        return UNKNOWN
    a, b = (task.actions[i] for i in c.action_ids)
    ok = True
    if c.fact in a.delete and c.fact in b.pre:
        ok = ok and _repair_exists(task, a, b)
    if c.fact in b.delete and c.fact in a.pre:
        ok = ok and _repair_exists(task, b, a)
    return ok


def find_conflicts(fgt: Fgt, task: Task) -> list:
    """Node-level conflict enumeration, deduplicated by action pair and fact.

    Three situations qualify: two action nodes that can appear in the same
    non-redundant sub-tree (root paths meeting at an AND node, which covers
    both sibling branches and ancestor chains) where one deletes a
    precondition of the other that is not re-added in between; and an
    action node deleting a goal fact that no action on its root path
    re-adds.
    """
    if fgt.truncated:
        raise Truncated("regression tree exceeded its node cap")
    depth = _node_depths(fgt)
    lca = _make_lca(fgt, depth)
    conflicts = {}

    def record(kind, nodes, aids, fact):
        key = (kind, frozenset(aids), fact)
        if key not in conflicts:
            c = Conflict(kind, nodes, aids, fact)
            c.repairable = repairable(c, task)
            conflicts[key] = c

    for desc, anc, fact in _ancestor_conflicts(fgt, task):
        if fgt.labels[anc] is None:
            record(CONFLICT_GOAL_DELETE, (desc,), (fgt.labels[desc],), fact)
        else:
            record(CONFLICT_ALLIED, (desc, anc),
                   (fgt.labels[desc], fgt.labels[anc]), fact)

    by_label = {}
    for nid in range(1, fgt.size):
        if fgt.kinds[nid] == 'A':
            by_label.setdefault(fgt.labels[nid], []).append(nid)

    def sibling_pair(aid, bid):
        for n1 in by_label.get(aid, ()):
            for n2 in by_label.get(bid, ()):
                w = lca(n1, n2)
                if w not in (n1, n2) and fgt.kinds[w] == 'A':
                    return n1, n2
        return None

    for aid, bid in _deletion_pairs(task):
        found = sibling_pair(aid, bid)
        if found is None:
            continue
        a, b = task.actions[aid], task.actions[bid]
        for fact in sorted((a.delete & b.pre) | (b.delete & a.pre)):
            record(CONFLICT_ALLIED, found, (aid, bid), fact)
    return list(conflicts.values())


# ---------------------------------------------------------------------------
# Verdicts


def interaction_free_verdict(task: Task, cap: int = DEFAULT_NODE_CAP) -> str:
    """Can every minimal relaxed plan be reordered/repaired into a real one?

    Empty conflict set: relaxed plans execute as-is, so the optimal relaxed
    plan length equals the goal distance everywhere.  If the only conflicts
    are sibling-branch pairs that all admit single-action repairs, the
    equality still holds.  Anything else - a cap overrun, or a conflict
    involving an ancestor chain or a goal fact - yields Unknown.

    The regression tree is traversed virtually: a fact expands identically
    under identical path context (facts seen, preconditions required,
    vulnerable facts), so expansions are memoized on that context and
    ``cap`` bounds the number of distinct expansions rather than explicit
    tree nodes.
    """
    achievers = {}
    for a in task.actions:
        for p in a.add:
            achievers.setdefault(p, []).append(a.id)
    pre_mask = [sum(1 << f for f in a.pre) for a in task.actions]
    add_mask = [sum(1 << f for f in a.add) for a in task.actions]
    del_mask = [sum(1 << f for f in a.delete) for a in task.actions]
    goal_mask = sum(1 << f for f in task.goal)

    allied = {}
    memo = {}
    state = {"expansions": 0, "stop": False}

    def register_pairs(child_masks):
        prefix = 0
        for cm in child_masks:
            mm = cm
            while mm:
                bit = mm & -mm
                allied[bit.bit_length() - 1] = \
                    allied.get(bit.bit_length() - 1, 0) | prefix
                mm ^= bit
            prefix |= cm
        suffix = 0
        for cm in reversed(child_masks):
            mm = cm
            while mm:
                bit = mm & -mm
                allied[bit.bit_length() - 1] = \
                    allied.get(bit.bit_length() - 1, 0) | suffix
                mm ^= bit
            suffix |= cm

    def expand_action(aid, on_path, pre_path, vulnerable):
        # ancestor/goal conflict: a still-needed fact of some node above
        # gets deleted with no re-achievement in between
        if del_mask[aid] & vulnerable:
            state["stop"] = True
            return 0
        pm, am = pre_mask[aid], add_mask[aid]
        kids = [p for p in sorted(task.actions[aid].pre)
                if not (pre_path >> p) & 1]                 # rule 2
        child_pre_path = pre_path | pm
        child_vuln = (vulnerable & ~am) | pm
        total = 1 << aid
        child_masks = []
        for p in kids:
            if state["stop"]:
                return 0
            m = expand_fact(p, on_path, child_pre_path, child_vuln)
            child_masks.append(m)
            total |= m
        if len(child_masks) > 1:
            register_pairs(child_masks)
        return total

    def expand_fact(p, on_path, pre_path, vulnerable):
        key = (p, on_path, pre_path, vulnerable)
        hit = memo.get(key)
        if hit is not None:
            return hit
        state["expansions"] += 1
        if state["expansions"] > cap:
            state["stop"] = True
            return 0
        total = 0
        below = on_path | (1 << p)
        for aid in achievers.get(p, ()):
            if state["stop"]:
                return 0
            if pre_mask[aid] & below:                       # rule 1
                continue
            total |= expand_action(aid, below, pre_path, vulnerable)
        memo[key] = total
        return total

    # the artificial goal-achievement action as root
    kids = sorted(task.goal)
    child_masks = []
    for p in kids:
        if state["stop"]:
            break
        child_masks.append(expand_fact(p, 0, goal_mask, goal_mask))
    if state["stop"]:
        return UNKNOWN
    register_pairs(child_masks)

    any_conflict = False
    for aid, m in allied.items():
        a = task.actions[aid]
        mm = m
        while mm:
            bit = mm & -mm
            bid = bit.bit_length() - 1
            mm ^= bit
            if bid <= aid:
                continue
            b = task.actions[bid]
            for deleter, victim in ((a, b), (b, a)):
                if deleter.delete & victim.pre:
                    any_conflict = True
                    if not _repair_exists(task, deleter, victim):
                        return UNKNOWN
    return VERDICT_HPLUS_EQUALS_GD_VIA_REPAIRS if any_conflict \
        else VERDICT_HPLUS_EQUALS_GD


def _conflict_instances(fgt, task, excluded, by_label, lca, deletion_pairs):
    """All conflict node tuples within the sub-tree that excludes the marked
    nodes; ancestor conflicts yield (deleter, ancestor), sibling conflicts
    every allied pair, goal deleters (node, root)."""
    out = [(desc, anc) for desc, anc, _ in
           _ancestor_conflicts(fgt, task, excluded)]
    for aid, bid in deletion_pairs:
        for n1 in by_label.get(aid, ()):
            if excluded[n1]:
                continue
            for n2 in by_label.get(bid, ()):
                if excluded[n2]:
                    continue
                w = lca(n1, n2)
                if w not in (n1, n2) and fgt.kinds[w] == 'A':
                    out.append((n1, n2))
    return out


def no_local_minima_criterion(task: Task, cap: int = DEFAULT_NODE_CAP) -> str:
    """Sufficient test for the absence of local minima under the optimal
    relaxed-plan-length heuristic.

    Requires every action to be at least invertible.  Then, per action a:
    consider the regression tree without the branches rooted at nodes
    labeled a.  The action is harmless if no conflict of that sub-tree can
    appear in a non-redundant embedding together with a deleted fact of a
    as an unexpanded leaf.  Concretely, a fails only when some conflict
    node pair and some fact node labeled with a deleted fact of a are
    pairwise compatible (root paths meeting in AND nodes or along one
    branch) with the fact node below or beside - never above - the
    conflict.
    """
    mx = compute_mutexes(task)
    flags = action_flags(task, mx)
    if any(f.at_least_invertible is None for f in flags):
        return UNKNOWN
    fgt = build_fgt(task, cap)
    if fgt.truncated:
        return UNKNOWN
    depth = _node_depths(fgt)
    lca = _make_lca(fgt, depth)
    deletion_pairs = _deletion_pairs(task)
    by_label = {}
    fact_nodes = {}
    for nid in range(1, fgt.size):
        if fgt.kinds[nid] == 'A':
            by_label.setdefault(fgt.labels[nid], []).append(nid)
        else:
            fact_nodes.setdefault(fgt.labels[nid], []).append(nid)

    def compatible_leaf(nf, conflict_nodes):
        for n in conflict_nodes:
            w = lca(nf, n)
            if w == nf:
                return False            # above the conflict: never a leaf
            if w != n and fgt.kinds[w] != 'A':
                return False            # competing choices of one OR node
        return True

    for a in task.actions:
        if not a.delete:
            continue
        excluded = [False] * fgt.size
        for nid in by_label.get(a.id, ()):
            stack = [nid]
            while stack:
                v = stack.pop()
                if not excluded[v]:
                    excluded[v] = True
                    stack.extend(fgt.children[v])
        candidates = [nid for f in sorted(a.delete)
                      for nid in fact_nodes.get(f, ()) if not excluded[nid]]
        if not candidates:
            continue
        for nodes in _conflict_instances(fgt, task, excluded, by_label, lca,
                                         deletion_pairs):
            if any(compatible_leaf(nf, nodes) for nf in candidates):
                return UNKNOWN
    return VERDICT_NO_LOCAL_MINIMA


def analyze_task(task: Task, cap: int = DEFAULT_NODE_CAP,
                 conflict_detail_cap: int = 50_000) -> AnalysisReport:
    """Full static report; the node-level conflict list is skipped (None)
    when the regression tree is truncated or too large to pair-scan."""
    report = check_lemmas(task)
    fgt = build_fgt(task, cap)
    if not fgt.truncated and fgt.size <= conflict_detail_cap:
        report.conflicts = find_conflicts(fgt, task)
    report.interaction_free_verdict = interaction_free_verdict(task, cap)
    report.no_local_minima_verdict = no_local_minima_criterion(task, cap)
    return report


# ---------------------------------------------------------------------------
# State-space-backed validators


def validate_respected(task: Task, space: StateSpace) -> dict:
    """Check, per action, that whenever the action starts an optimal plan
    from a reachable state, some optimal relaxed plan contains it.

    ``space`` must carry exact optimal-relaxed-length heuristic values and
    goal distances.  Membership of a in an optimal relaxed plan for s holds
    exactly when one step plus the optimal relaxed length of s with a's add
    effects equals the optimal relaxed length of s.  Returns per action id a
    dict with ``respected`` and the counterexample state ids.
    """
    relaxed_cache = {}

    def h_relaxed_succ(s, a):
        key = frozenset(s | a.add)
        v = relaxed_cache.get(key)
        if v is None:
            v = h_plus(task, key)
            relaxed_cache[key] = v
        return v

    out = {}
    for a in task.actions:
        counterexamples = []
        for sid, s in enumerate(space.states):
            if space.gd[sid] is INF or not a.pre <= s:
                continue
            ns = frozenset((s | a.add) - a.delete)
            nid = space.index[ns]
            if space.gd[nid] != space.gd[sid] - 1:
                continue                       # a does not start an optimal plan
            if 1 + h_relaxed_succ(s, a) != space.h[sid]:
                counterexamples.append(sid)
        out[a.id] = {"respected": not counterexamples,
                     "counterexamples": counterexamples}
    return out


def validate_rp_irrelevant_deletes(task: Task, s, a: GroundAction) -> bool:
    """True when a's deletes cannot matter to any optimal relaxed plan
    starting with a from s.

    Requires a applicable in s and s relaxed-solvable.  The deletes must
    avoid the goal, and the task restricted to actions whose preconditions
    avoid del(a) must still reach the goal, relaxed, from the successor of
    s in one step less than the optimal relaxed length at s.
    """
    s = frozenset(s)
    if not a.pre <= s:
        raise PreconditionViolated(
            f"action {a.name} is not applicable in the given state")
    base = h_plus(task, s)
    if base is INF:
        raise PreconditionViolated("state has no relaxed solution")
    if a.delete & task.goal:
        return False
    kept = [b for b in task.actions if not b.pre & a.delete]
    renumbered = [GroundAction(i, b.name, b.pre, b.add, b.delete)
                  for i, b in enumerate(kept)]
    restricted = Task(
        facts=task.facts,
        actions=renumbered,
        init=task.init,
        goal=task.goal,
        name=task.name + "#restricted",
        fact_by_name=task.fact_by_name,
        action_by_name={b.name: b.id for b in renumbered},
    )
    start = (s | a.add) - a.delete
    return h_plus(restricted, start) <= base - 1
