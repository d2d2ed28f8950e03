"""Terms and logic variables.

The term universe is deliberately small: atoms (strings, numbers, booleans,
nil, and opaque host objects such as handler closures or template literals),
compounds (plain dicts), and logic variables. A cons pair is the compound
with exactly the keys "car" and "cdr"; nil is a distinguished atom.
"""

import itertools

_var_ids = itertools.count(1)


class LVar:
    """A logic variable. Identity is the id; the label is for debugging."""

    __slots__ = ("id", "label")

    def __init__(self, label=None):
        self.id = next(_var_ids)
        self.label = label

    def __repr__(self):
        if self.label:
            return "_%s.%d" % (self.label, self.id)
        return "_%d" % self.id

    # Goal-building sugar, mirroring the method-chaining style the engine's
    # programs are written in. Imports are local to avoid a cycle with goals.
    def eq(self, other):
        from .goals import Eq

        return Eq(self, other)

    def set(self, other):
        from .goals import Set

        return Set(self, other)

    def pairo(self):
        from .goals import PairCheck

        return PairCheck(self, False)

    def membero(self, x):
        from .goals import membero

        return membero(self, x)

    def imembero(self, x):
        from .goals import imembero

        return imembero(self, x)

    def tailo(self, t):
        from .goals import tailo

        return tailo(self, t)


def fresh_var(label=None):
    return LVar(label)


class _Nil:
    """The empty list. A singleton so identity and equality coincide."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "nil"


nil = _Nil()


def cons(car, cdr):
    return {"car": car, "cdr": cdr}


def list_(items):
    """Build a proper cons list from an iterable."""
    out = nil
    for item in reversed(list(items)):
        out = cons(item, out)
    return out


def is_var(t):
    return isinstance(t, LVar)


def is_compound(t):
    return isinstance(t, dict)


def is_pair(t):
    return isinstance(t, dict) and len(t) == 2 and "car" in t and "cdr" in t


def strict_eq(a, b):
    """Host-language identity ('===') over terms.

    Variables, compounds, and opaque atoms compare by object identity;
    strings and numbers by value. Booleans only equal booleans, so True
    never unifies with 1 even though Python thinks they are equal.
    """
    if a is b:
        return True
    if isinstance(a, bool) or isinstance(b, bool):
        return False  # bool singletons: non-identical means unequal or mixed
    if isinstance(a, (int, float)) and isinstance(b, (int, float)):
        return a == b
    if isinstance(a, str) and isinstance(b, str):
        return a == b
    return False


def ground_eq(a, b):
    """Deep structural equality of reified terms.

    Compounds compare by key set and recursive value equality; everything
    else falls back to strict_eq (so free variables and opaque atoms only
    match themselves).
    """
    if isinstance(a, dict) and isinstance(b, dict):
        if a.keys() != b.keys():
            return False
        return all(ground_eq(a[k], b[k]) for k in a)
    return strict_eq(a, b)


def iter_cons(t):
    """Iterate the elements of a ground proper cons list."""
    while is_pair(t):
        yield t["car"]
        t = t["cdr"]
    if t is not nil:
        raise ValueError("improper list tail: %r" % (t,))
