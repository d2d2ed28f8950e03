"""Persistent first-order search trees: identity-stable incremental views.

The tree mirrors the depth-first search of a goal. Conjunction prefixes
are consumed into nodes; every conde becomes a Branch whose children
continue the search, one per alternative; exhausted conjunctions become
success leaves and refuted ones failure leaves. Failure leaves keep their
unconsumed continuation so they can expand in place when a later state
satisfies their prefix, preserving their sibling position.

Re-expansion pushes a successor substitution down the tree, re-applying
every node's stored goals. Fresh closures were spliced at first
expansion, so re-running never mints new variables and nodes keep their
identity; only status and local substitutions change. Children of a
branch whose prefix currently fails are retained but not visited, so a
later thaw restores the same attachments in the same positions.
"""

import sys

from .goals import (Conde, Conj, Eq, Fail, Fresh, Goal, PairCheck, Set,
                    Succeed, eval_paircheck, invoke_fresh)
from .substitution import FAILURE
from .terms import LVar

# Deep lists under membero nest condes one level per element; tree walks
# recurse per level, so the default host limit is too close for comfort.
sys.setrecursionlimit(max(sys.getrecursionlimit(), 20_000))

BRANCH = "branch"
SUCCESS = "success"
FAILURE_LEAF = "failure"


class Node:
    __slots__ = ("kind", "program", "consumed", "conde_index", "children",
                 "local_s", "path", "failed", "live", "attachment")

    def __init__(self, program, path):
        self.kind = None
        self.program = program        # spliced goal tuple, grows in place
        self.consumed = 0             # goals consumed (incl. a failing goal)
        self.conde_index = None       # Branch: position of the conde
        self.children = ()
        self.local_s = None           # substitution after the consumed region
        self.path = path
        self.failed = False           # Branch whose prefix currently fails
        self.live = False             # success leaf visible to the renderer
        self.attachment = None

    def prefix_goals(self):
        """The goals this node consumed (up to its conde, for branches)."""
        end = self.conde_index if self.kind == BRANCH else self.consumed
        return self.program[:end]

    def __repr__(self):
        return "<%s %r>" % (self.kind, list(self.path))


class ViewTree:
    def __init__(self, goals, order_var=None):
        if isinstance(goals, Goal):
            goals = (goals,)
        self.program = tuple(_splice_static(goals))
        self.order_var = order_var
        self.root = None

    def expand(self, s):
        self.root = _build(s, list(self.program), ())
        return self.root

    def reexpand(self, s):
        """Re-run against a successor substitution.

        Returns (unmounts, mounts, refreshes): lists of leaves, each in
        document order. Refreshes are live leaves that re-ran and kept
        succeeding; their bindings may or may not have changed, which the
        caller decides by re-reading values.
        """
        out = _Transitions()
        _reexpand(self.root, s, out)
        return out.finish()

    def success_leaves(self):
        return [n for n in self.walk() if n.kind == SUCCESS]

    def live_leaves(self):
        return [n for n in self.walk() if n.kind == SUCCESS and n.live]

    def walk(self):
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def census(self):
        counts = {BRANCH: 0, SUCCESS: 0, FAILURE_LEAF: 0}
        for node in self.walk():
            counts[node.kind] += 1
        return counts

    def ordered_answers(self):
        """Live leaves with stable position keys, in render order."""
        entries = [(leaf, position_key(leaf, self.order_var))
                   for leaf in self.live_leaves()]
        entries.sort(key=lambda e: _sortable(e[1]))
        return entries

    def path_conjunction(self, leaf):
        """All consumed goals from the root to (and including) leaf."""
        goals = []
        node = self.root
        for step in leaf.path:
            goals.extend(node.prefix_goals())
            node = node.children[step]
        goals.extend(node.prefix_goals())
        return goals

    def dump(self):
        def render(node):
            d = {"kind": node.kind,
                 "path": list(node.path),
                 "conjunction": [repr(g) for g in node.prefix_goals()]}
            if node.kind == BRANCH:
                d["failed"] = node.failed
                d["children"] = [render(c) for c in node.children]
            if node.kind == SUCCESS:
                d["live"] = node.live
            return d
        return render(self.root)


def position_key(leaf, order_var):
    """Stable sibling-insertion key for a leaf.

    Answers with a bound order variable sort after unbound ones, by the
    default comparator: ascending, numbers before strings, DFS position
    (the tree path) breaking ties.
    """
    if order_var is not None:
        value = leaf.local_s.walk(order_var)
        if not isinstance(value, LVar):
            numeric = isinstance(value, (int, float)) and not isinstance(value, bool)
            return (1, 0 if numeric else 1, value) + leaf.path
    return (0,) + leaf.path


def _sortable(key):
    # Mixed int/str tuples: tag every element with a type rank so tuple
    # comparison never crosses types.
    return tuple((0, v, "") if isinstance(v, (int, float)) else (1, 0, v)
                 for v in key)


class _Transitions:
    def __init__(self):
        self.unmounts = []
        self.mounts = []
        self.refreshes = []

    def finish(self):
        self.unmounts.sort(key=lambda n: n.path)
        self.mounts.sort(key=lambda n: n.path)
        self.refreshes.sort(key=lambda n: n.path)
        return self.unmounts, self.mounts, self.refreshes


def _splice_static(goals):
    for g in goals:
        if isinstance(g, Conj):
            yield from _splice_static(g.goals)
        elif isinstance(g, (list, tuple)):
            yield from _splice_static(g)
        else:
            yield g


def _consume(s, program, start=0):
    """Run the conjunction from start, splicing Fresh/Conj in place.

    program is a mutable list. Returns ("conde", i, s) with i at the
    conde, ("fail", i, s) with i just past the failing goal, or
    ("end", len, s).
    """
    i = start
    while i < len(program):
        g = program[i]
        if isinstance(g, (Fresh, Conj)):
            spliced = invoke_fresh(g) if isinstance(g, Fresh) else \
                tuple(_splice_static(g.goals))
            program[i:i + 1] = spliced
            continue
        if isinstance(g, Eq):
            s2 = s.unify(g.a, g.b)
            if s2 is FAILURE:
                return "fail", i + 1, s
            s = s2
        elif isinstance(g, Conde):
            return "conde", i, s
        elif isinstance(g, PairCheck):
            if not eval_paircheck(s, g):
                return "fail", i + 1, s
        elif isinstance(g, Set) or g is Succeed:
            pass
        elif g is Fail:
            return "fail", i + 1, s
        else:
            raise TypeError("not a goal: %r" % (g,))
        i += 1
    return "end", i, s


def _build(s, program, path):
    node = Node((), path)
    outcome, i, s_after = _consume(s, program)
    node.program = tuple(program)
    node.consumed = i
    node.local_s = s_after
    if outcome == "end":
        node.kind = SUCCESS
        node.live = True
    elif outcome == "fail":
        node.kind = FAILURE_LEAF
    else:
        node.kind = BRANCH
        node.conde_index = i
        rest = program[i + 1:]
        node.children = tuple(
            _build(s_after, [branch] + rest, path + (bi,))
            for bi, branch in enumerate(program[i].branches))
    return node


def _reexpand(node, s, out):
    program = list(node.program)
    outcome, i, s_after = _consume(s, program)
    node.program = tuple(program)
    node.consumed = i
    node.local_s = s_after

    if node.kind == BRANCH:
        if outcome == "conde":
            node.failed = False
            for child in node.children:
                _reexpand(child, s_after, out)
        else:
            # Prefix no longer reaches the conde: hide the subtree's
            # attachments but retain it for a later thaw.
            if not node.failed:
                node.failed = True
                _hide_subtree(node, out)
        return

    if outcome == "end":
        if node.kind == SUCCESS and node.live:
            out.refreshes.append(node)
        else:
            node.kind = SUCCESS
            node.live = True
            out.mounts.append(node)
    elif outcome == "fail":
        if node.kind == SUCCESS:
            node.kind = FAILURE_LEAF
            if node.live:
                node.live = False
                out.unmounts.append(node)
    else:
        # A failure leaf's continuation reached a conde: expand in place.
        node.kind = BRANCH
        node.conde_index = i
        rest = program[i + 1:]
        node.children = tuple(
            _build(s_after, [branch] + rest, node.path + (bi,))
            for bi, branch in enumerate(program[i].branches))
        out.mounts.extend(_subtree_success(node))


def _hide_subtree(node, out):
    stack = [node]
    while stack:
        n = stack.pop()
        if n.kind == SUCCESS and n.live:
            n.live = False
            out.unmounts.append(n)
        stack.extend(n.children)


def _subtree_success(node):
    stack = [node]
    while stack:
        n = stack.pop()
        if n.kind == SUCCESS:
            yield n
        stack.extend(reversed(n.children))
