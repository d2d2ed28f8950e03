"""The persistent substitution: the sole store of application state.

Substitution values are immutable from the caller's point of view;
extension and unification return new values. The generation field is the
timestep: it only advances when the reactive engine applies a patch.
"""

from . import kernel
from .terms import LVar, is_compound, is_pair, is_var, list_, nil


class Failure:
    """Distinguished unification-failure value (not an exception)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "#failure"

    def __bool__(self):
        return False


FAILURE = Failure()


class Substitution:
    __slots__ = ("bindings", "generation")

    def __init__(self, bindings=None, generation=0):
        self.bindings = {} if bindings is None else bindings
        self.generation = generation

    def walk(self, t):
        return kernel.walk(self.bindings, t)

    def walk_binding(self, t):
        return kernel.walk_binding(self.bindings, t)

    def descendant(self, x, y):
        return kernel.descendant(self.bindings, x, y)

    def extend(self, v, t):
        assert isinstance(v, LVar), "extend target must be a variable"
        assert v not in self.bindings, "rebinding %r is a contract violation" % v
        out = dict(self.bindings)
        out[v] = t
        return Substitution(out, self.generation)

    def unify(self, a, b):
        out = kernel.unify(self.bindings, a, b)
        if out is None:
            return FAILURE
        return Substitution(out, self.generation)

    def reify(self, t):
        return kernel.reify(self.bindings, t)

    def is_bound(self, v):
        return v in self.bindings

    def __repr__(self):
        return "<Substitution gen=%d size=%d>" % (self.generation, len(self.bindings))


def empty():
    return Substitution()


def check_normal_form(s, root):
    """Report violations of the three normal-form conditions.

    1. Every variable appearing anywhere in the bindings is itself bound,
       and bound to a non-variable.
    2. Compounds contain only variables.
    3. Variables form a tree from the root: no sharing, no cycles.

    Returns a list of human-readable violation strings (empty when normal).
    """
    violations = []
    bindings = s.bindings

    def note(msg, *args):
        violations.append(msg % args)

    for var, value in bindings.items():
        if is_var(value):
            note("condition 1: %r is bound to variable %r", var, value)
        elif is_compound(value):
            for k, member in value.items():
                if not is_var(member):
                    note("condition 2: %r[%r] holds non-variable %r", var, k, member)
                elif member not in bindings:
                    note("condition 1: %r reachable from %r[%r] but unbound",
                         member, var, k)

    # Tree property: walk from the root; every bound variable must be
    # reached exactly once, and no variable may have two parents.
    parent = {}
    seen = set()
    stack = [root]
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        value = bindings.get(v)
        if not is_compound(value):
            continue
        for k, member in value.items():
            if not is_var(member):
                continue
            if member in parent:
                note("condition 3: %r shared by %r and %r", member, parent[member], v)
            else:
                parent[member] = v
                stack.append(member)
    for var in bindings:
        if var not in seen:
            note("condition 3: %r is bound but unreachable from the root", var)

    if root not in bindings:
        note("condition 1: root %r is unbound", root)
    return violations


def normalize(value):
    """Insert a ground value into an empty substitution in normal form.

    Returns (substitution, root variable). Every atom gets its own unique
    variable; compounds are rebuilt to contain only variables.
    """
    bindings = {}
    root = _normalize_into(bindings, value, "m")
    return Substitution(bindings), root


def _normalize_into(bindings, value, label=None):
    v = LVar(label)
    if isinstance(value, (list, tuple)):
        value = list_(value)
    if is_compound(value):
        bindings[v] = {k: _normalize_into(bindings, member)
                       for k, member in value.items()}
    else:
        bindings[v] = value
    return v


def normalize_fragment(bindings, value):
    """normalize() against an existing (mutable) binding dict.

    Used by patch application to mint substructure for freshly introduced
    ground fragments; returns the new root variable.
    """
    return _normalize_into(bindings, value)


def prune_subtree(bindings, value):
    """Delete the bindings of every variable reachable from a dropped value."""
    if not is_compound(value):
        return
    stack = [value]
    while stack:
        compound = stack.pop()
        for member in compound.values():
            if is_var(member):
                dropped = bindings.pop(member, nil)
                if is_compound(dropped):
                    stack.append(dropped)


def export_model(s, root):
    """The model under root as plain JSON data.

    Proper cons lists become arrays and nil becomes the empty array, so
    the output round-trips through normalize(). Host callables have no
    serialization and are rejected.
    """
    return _export(s.reify(root))


def _export(value):
    if is_pair(value):
        tail = value
        while is_pair(tail):
            tail = tail["cdr"]
        if tail is nil:
            out = []
            while is_pair(value):
                out.append(_export(value["car"]))
                value = value["cdr"]
            return out
        return {"car": _export(value["car"]), "cdr": _export(value["cdr"])}
    if value is nil:
        return []
    if isinstance(value, dict):
        return {k: _export(v) for k, v in value.items()}
    if callable(value):
        raise ValueError("model holds a host callable, which cannot be "
                         "exported: %r" % (value,))
    return value
