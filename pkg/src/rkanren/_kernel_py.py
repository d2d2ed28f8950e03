"""Pure-Python substitution kernel: walk, unify, descendant, reify.

These run in the inner loop of every search step and every view-tree
re-expansion, so they work on raw binding dicts rather than the
Substitution wrapper. A compiled twin lives in _kernel_cy.pyx; kernel.py
picks whichever is available.

The unification here preserves provenance: when two bound variables carry
identical values, one is rebound to the other so both walk to a common
variable. Compounds unify over common keys only; keys held by just one
side are not considered.
"""

from .terms import LVar, strict_eq

_MISSING = object()


def walk(bindings, t):
    while type(t) is LVar:
        nxt = bindings.get(t, _MISSING)
        if nxt is _MISSING:
            return t
        t = nxt
    return t


def walk_binding(bindings, t):
    """Follow bindings from t, returning the final (variable, value) pair.

    A free variable or ground term returns (t', t').
    """
    if type(t) is not LVar:
        return t, t
    var = t
    while True:
        nxt = bindings.get(var, _MISSING)
        if nxt is _MISSING:
            return var, var
        if type(nxt) is LVar:
            var = nxt
        else:
            return var, nxt


def descendant(bindings, x, y):
    """True iff x = y, or x is bound to some z with descendant(z, y)."""
    t = x
    while True:
        if strict_eq(t, y):
            return True
        if type(t) is not LVar:
            return False
        nxt = bindings.get(t, _MISSING)
        if nxt is _MISSING:
            return False
        t = nxt


def unify(bindings, a, b):
    """Provenance-preserving unification. Returns new bindings or None.

    The input dict is never mutated; on success a copied dict is returned
    (possibly with identical content when nothing needed recording).
    """
    out = dict(bindings)
    if _unify_into(out, a, b):
        return out
    return None


def _unify_into(out, a, b):
    a_var, a_val = walk_binding(out, a)
    b_var, b_val = walk_binding(out, b)
    if strict_eq(a_val, b_val):
        if type(a_val) is LVar or strict_eq(a_var, b_var):
            return True
        # Two distinct references to one value: record the unification by
        # rebinding the left bound variable so both walk to a common spot.
        if type(a_var) is LVar:
            out[a_var] = b_var
        elif type(b_var) is LVar:
            out[b_var] = a_var
        return True
    if type(a_val) is LVar:
        out[a_val] = b_var
        return True
    if type(b_val) is LVar:
        out[b_val] = a_var
        return True
    if not isinstance(a_val, dict) or not isinstance(b_val, dict):
        return False
    for k in a_val:
        if k in b_val:
            if not _unify_into(out, a_val[k], b_val[k]):
                return False
    return True


def reify(bindings, t):
    """Deep-resolve t; free variables are returned as-is."""
    t = walk(bindings, t)
    if isinstance(t, dict):
        return {k: reify(bindings, v) for k, v in t.items()}
    return t
