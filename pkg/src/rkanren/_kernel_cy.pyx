# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled substitution kernel, a line-for-line twin of _kernel_py.

Keep the two implementations in lockstep; tests/test_kernels.py replays
identical workloads through both and compares every result.
"""

from .terms import LVar

cdef object _MISSING = object()


cdef inline bint _strict_eq(object a, object b):
    if a is b:
        return True
    if isinstance(a, bool) or isinstance(b, bool):
        return False
    if isinstance(a, (int, float)) and isinstance(b, (int, float)):
        return a == b
    if isinstance(a, str) and isinstance(b, str):
        return a == b
    return False


def walk(dict bindings, object t):
    cdef object nxt
    while type(t) is LVar:
        nxt = bindings.get(t, _MISSING)
        if nxt is _MISSING:
            return t
        t = nxt
    return t


def walk_binding(dict bindings, object t):
    cdef object var, nxt
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


def descendant(dict bindings, object x, object y):
    cdef object t = x
    cdef object nxt
    while True:
        if _strict_eq(t, y):
            return True
        if type(t) is not LVar:
            return False
        nxt = bindings.get(t, _MISSING)
        if nxt is _MISSING:
            return False
        t = nxt


def unify(dict bindings, object a, object b):
    cdef dict out = dict(bindings)
    if _unify_into(out, a, b):
        return out
    return None


cdef bint _unify_into(dict out, object a, object b):
    cdef object a_var, a_val, b_var, b_val, k
    a_var, a_val = walk_binding(out, a)
    b_var, b_val = walk_binding(out, b)
    if _strict_eq(a_val, b_val):
        if type(a_val) is LVar or _strict_eq(a_var, b_var):
            return True
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
    for k in <dict>a_val:
        if k in <dict>b_val:
            if not _unify_into(out, (<dict>a_val)[k], (<dict>b_val)[k]):
                return False
    return True


def reify(dict bindings, object t):
    t = walk(bindings, t)
    if isinstance(t, dict):
        return {k: reify(bindings, v) for k, v in (<dict>t).items()}
    return t
