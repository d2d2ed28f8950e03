"""Reactive updates: patch generation, stratification, patch application.

A step runs an update goal against the current substitution, collects the
Set goals from every answer, turns them into a patch of (variable bound in
the pre-state, ground value) entries, and applies that patch atomically.
Any conflict aborts the whole step with the state untouched.

Patch generation implements recursive stratification: while reifying one
Set's right-hand side, reaching a variable that is itself the target of
another Set nested strictly inside this Set's target splices in that
update's reified result; nested updates are then discarded, having been
absorbed by their ancestors.
"""

from .goals import run_states
from . import kernel
from .substitution import Substitution, normalize
from .terms import LVar, ground_eq, strict_eq

_MISSING = object()


class UpdateError(Exception):
    """kind is one of: conflict, no-answers, target-unbound, free-value."""

    def __init__(self, kind, message):
        super().__init__("%s: %s" % (kind, message))
        self.kind = kind


class ReactiveSystem:
    """Holds the substitution and serializes state transitions."""

    def __init__(self, model):
        self.substitution, self.model_root = normalize(model)
        self.last_delta = frozenset()

    def model_value(self):
        return self.substitution.reify(self.model_root)

    def step(self, update_goal, context_goals=(), start=None):
        """Run one transition. Returns the applied patch.

        start, when given, is a substitution extending the current state
        (a view-tree leaf's answer substitution); context_goals are
        conjoined before the update goal. Raises UpdateError and leaves
        the state untouched on conflict, unresolved targets, or an update
        goal with no answers.
        """
        base = self.substitution if start is None else start
        goals = tuple(context_goals) + (update_goal,)
        answers = list(run_states(base, goals))
        if not answers:
            raise UpdateError("no-answers", "update goal produced no answers")
        patch = build_patch(self.substitution, answers)
        self.substitution, self.last_delta = apply_patch(self.substitution, patch)
        return patch


def _chain(bindings, t):
    """Walk t, returning (chain of variables traversed, final value)."""
    chain = []
    while isinstance(t, LVar):
        chain.append(t)
        nxt = bindings.get(t, _MISSING)
        if nxt is _MISSING:
            return chain, t
        t = nxt
    return chain, t


def _parent_index(pre):
    """Map each variable to (owner variable, key) per the pre-state tree."""
    parents = {}
    for var, value in pre.bindings.items():
        if isinstance(value, dict):
            for k, member in value.items():
                if isinstance(member, LVar):
                    parents[member] = (var, k)
    return parents


def _inside(parents, ancestor, var):
    """True iff var sits strictly inside ancestor's pre-state subtree."""
    while var in parents:
        var = parents[var][0]
        if var is ancestor:
            return True
    return False


def _class_targets(pre, ans_bindings, rebound, lhs):
    """All pre-state variables in lhs's answer-state equivalence class.

    Assignment to a variable is assignment to every variable it has been
    unified with, so the patch fans out to each pre-state variable whose
    walk chain reaches the lhs's ultimate descendant. rebound lists the
    pre-state variables the answer relinked to other variables (the only
    way classes grow).
    """
    chain, _value = _chain(ans_bindings, lhs)
    if not chain:
        return []
    w = chain[-1]
    targets = [v for v in rebound
               if v is not w and kernel.descendant(ans_bindings, v, w)]
    if pre.is_bound(w):
        targets.append(w)
    return targets


def _resolve_target(pre, ans_bindings, parents, lhs):
    """Trace a compound-valued lhs to its unique pre-state owner, or None.

    The deepest pre-state-bound variable in lhs's walk chain wins; failing
    that, a compound value is traced through its members: each member that
    resolves to a pre-state variable must name the same parent at the same
    key, which the normal-form tree property guarantees for genuine
    destructurings.
    """
    chain, value = _chain(ans_bindings, lhs)
    target = None
    for var in chain:
        if pre.is_bound(var):
            target = var
    if target is not None:
        return target
    if isinstance(value, dict):
        owner = None
        for k, member in value.items():
            w = _resolve_target(pre, ans_bindings, parents, member)
            if w is None:
                continue
            parent = parents.get(w)
            if parent is None or parent[1] != k:
                return None
            if owner is None:
                owner = parent[0]
            elif owner is not parent[0]:
                return None
        return owner
    return None


class _Update:
    __slots__ = ("target", "rhs", "ans", "value", "done")

    def __init__(self, target, rhs, ans):
        self.target = target
        self.rhs = rhs
        self.ans = ans
        self.value = None
        self.done = False


def build_patch(pre, answers):
    """Turn collected Sets into patch entries, stratifying and merging.

    answers is a list of (substitution, sets) pairs from run_states. The
    result is a list of (target, ground value) entries, canonicalized by
    target id. Raises UpdateError on conflicts or unresolvable targets.
    """
    parents = _parent_index(pre)
    updates = []
    for ans, sets in answers:
        if not sets:
            continue
        rebound = [v for v, val in ans.bindings.items()
                   if isinstance(val, LVar) and pre.is_bound(v)]
        for g in sets:
            targets = _class_targets(pre, ans.bindings, rebound, g.lhs)
            if not targets:
                target = _resolve_target(pre, ans.bindings, parents, g.lhs)
                if target is None:
                    raise UpdateError(
                        "target-unbound",
                        "set lhs %r never reaches a variable bound in the "
                        "pre-state" % (g.lhs,))
                targets = [target]
            for target in targets:
                updates.append(_Update(target, g.rhs, ans))

    by_target = {}
    for i, u in enumerate(updates):
        by_target.setdefault(u.target, i)

    def stratified_value(i):
        u = updates[i]
        if u.done:
            return u.value
        u.done = True  # set before recursing; absorption strictly descends
        u.value = _sreify(u.rhs, i)
        return u.value

    def _sreify(term, i):
        u = updates[i]
        chain, value = _chain(u.ans.bindings, term)
        for var in chain:
            j = by_target.get(var)
            if j is not None and updates[j].target is not u.target \
                    and _inside(parents, u.target, updates[j].target):
                return stratified_value(j)
        if isinstance(value, LVar):
            raise UpdateError(
                "free-value", "set rhs reifies to the free variable %r" % value)
        if isinstance(value, dict):
            return {k: _sreify(v, i) for k, v in value.items()}
        return value

    for i in range(len(updates)):
        stratified_value(i)

    # Nested updates have been incorporated into their ancestors; drop them.
    targets = {u.target for u in updates}
    survivors = [u for u in updates
                 if not any(t is not u.target and _inside(parents, t, u.target)
                            for t in targets)]

    merged = {}
    for u in survivors:
        if u.target in merged:
            if not ground_eq(merged[u.target], u.value):
                raise UpdateError(
                    "conflict",
                    "%r assigned unequal values %r and %r"
                    % (u.target, merged[u.target], u.value))
        else:
            merged[u.target] = u.value
    return sorted(merged.items(), key=lambda entry: entry[0].id)


def apply_patch(s, patch):
    """Apply patch entries, reusing variables wherever structure overlaps.

    Returns (new substitution with generation + 1, delta), where delta is
    the set of variables rebound or pruned. Old and new compounds are
    walked in tandem: keys present in both descend and reuse the existing
    variable, keys only in the new value mint normalized substructure,
    keys only in the old value are left in place (assignment is
    unification-like, so unmentioned properties survive). Old substructure
    is pruned only when a compound is replaced outright by an atom or by
    a differently-shaped value.
    """
    bindings = dict(s.bindings)
    delta = set()
    for target, value in patch:
        _tandem(bindings, delta, target, value)
    return Substitution(bindings, s.generation + 1), delta


def _tandem(bindings, delta, var, new):
    old = bindings[var]
    if isinstance(old, dict) and isinstance(new, dict):
        added = None
        for k, nv in new.items():
            if k in old:
                _tandem(bindings, delta, old[k], nv)
            else:
                if added is None:
                    added = dict(old)
                added[k] = _mint(bindings, nv)
        if added is not None:
            bindings[var] = added
            delta.add(var)
        return
    if strict_eq(old, new):
        return
    if isinstance(old, dict):
        _prune(bindings, delta, old)
    if isinstance(new, dict):
        bindings[var] = {k: _mint(bindings, nv) for k, nv in new.items()}
    else:
        bindings[var] = new
    delta.add(var)


def _mint(bindings, value):
    v = LVar()
    if isinstance(value, dict):
        bindings[v] = {k: _mint(bindings, nv) for k, nv in value.items()}
    else:
        bindings[v] = value
    return v


def _prune(bindings, delta, compound):
    stack = [compound]
    while stack:
        c = stack.pop()
        for member in c.values():
            if isinstance(member, LVar) and member in bindings:
                delta.add(member)
                dropped = bindings.pop(member)
                if isinstance(dropped, dict):
                    stack.append(dropped)
