"""First-order goals and exhaustive depth-first search.

Goals are plain immutable descriptions; nothing here touches the display
or the reactive machinery. Set goals are inert during search: they are
collected into each answer rather than applied, and the reactive engine
turns them into a patch afterwards.

run* semantics with strict depth-first, left-to-right order; there is no
interleaving. The search is implemented iteratively so deep recursions
(long lists under membero) do not exhaust the host stack.
"""

from .substitution import FAILURE, Substitution
from .terms import LVar, cons, is_pair


class Goal:
    __slots__ = ()


class Eq(Goal):
    __slots__ = ("a", "b")

    def __init__(self, a, b):
        self.a = a
        self.b = b

    def __repr__(self):
        return "eq(%r, %r)" % (self.a, self.b)


class Set(Goal):
    __slots__ = ("lhs", "rhs")

    def __init__(self, lhs, rhs):
        self.lhs = lhs
        self.rhs = rhs

    def __repr__(self):
        return "set(%r, %r)" % (self.lhs, self.rhs)


class Conj(Goal):
    __slots__ = ("goals",)

    def __init__(self, goals):
        self.goals = tuple(_flatten(goals))

    def __repr__(self):
        return "conj(%s)" % ", ".join(repr(g) for g in self.goals)


class Conde(Goal):
    __slots__ = ("branches",)

    def __init__(self, branches):
        # Each branch is itself a goal; lists become conjunctions.
        self.branches = tuple(_as_goal(b) for b in branches)

    def __repr__(self):
        return "conde(%s)" % ", ".join(repr(b) for b in self.branches)


class Fresh(Goal):
    __slots__ = ("arity", "body")

    def __init__(self, arity, body):
        self.arity = arity
        self.body = body

    def __repr__(self):
        return "fresh/%d" % self.arity


class PairCheck(Goal):
    __slots__ = ("t", "negated")

    def __init__(self, t, negated):
        self.t = t
        self.negated = negated

    def noto(self):
        return PairCheck(self.t, not self.negated)

    def __repr__(self):
        return "%spairo(%r)" % ("not-" if self.negated else "", self.t)


class _Succeed(Goal):
    __slots__ = ()

    def __repr__(self):
        return "succeed"


class _Fail(Goal):
    __slots__ = ()

    def __repr__(self):
        return "fail"


Succeed = _Succeed()
Fail = _Fail()


def _as_goal(g):
    if isinstance(g, Goal):
        return g
    if isinstance(g, (list, tuple)):
        return Conj(g)
    raise TypeError("not a goal: %r" % (g,))


def eq(a, b):
    return Eq(a, b)


def set_(lhs, rhs):
    return Set(lhs, rhs)


def conj(*goals):
    return Conj(goals)


def conde(*branches):
    return Conde(branches)


def fresh(body):
    return Fresh(body.__code__.co_argcount, body)


def pairo(t):
    return PairCheck(t, False)


def membero(xs, x):
    return fresh(lambda a, d: [eq(xs, cons(a, d)),
                               conde(eq(x, a), membero(d, x))])


def tailo(xs, t):
    return conde([eq(t, xs)],
                 [fresh(lambda a, d: [eq(xs, cons(a, d)), tailo(d, t)])])


def imembero(xs, x):
    return conde([pairo(xs).noto(), eq(xs, x)],
                 [fresh(lambda a, b: [eq(xs, cons(a, b)),
                                      conde(imembero(a, x), imembero(b, x))])])


def leftmosto(xs, x):
    """x is the first element of insertion tree xs in traversal order."""
    return conde([pairo(xs).noto(), eq(xs, x)],
                 [fresh(lambda a, b: [eq(xs, cons(a, b)), leftmosto(a, x)])])


class DepthExceeded(Exception):
    pass


DEFAULT_MAX_DEPTH = 10_000


def invoke_fresh(g):
    """Mint g.arity fresh variables and run the body once.

    Returns the spliced goal tuple. View trees call this at most once per
    node so fresh variables keep their identity across re-expansions.
    """
    vs = [LVar() for _ in range(g.arity)]
    body = g.body(*vs)
    if isinstance(body, Goal):
        return (body,)
    return tuple(_flatten(body))


def _flatten(goals):
    for g in goals:
        if isinstance(g, (list, tuple)):
            yield from _flatten(g)
        else:
            yield g


def eval_paircheck(s, g):
    """A PairCheck passes iff the walked term is/is-not a cons pair.

    Free variables count as non-pairs; models are fully ground so this
    only matters for degenerate hand-written goals.
    """
    val = s.walk(g.t)
    return is_pair(val) != g.negated


def run_states(s, goals, max_depth=DEFAULT_MAX_DEPTH):
    """Depth-first enumeration of (substitution, collected Sets) pairs.

    goals is a single Goal or an iterable of goals (a conjunction).
    """
    if isinstance(goals, Goal):
        goals = (goals,)
    stack = [(s, tuple(_flatten(goals)), (), 0)]
    while stack:
        s, pending, sets, depth = stack.pop()
        while True:
            if not pending:
                yield s, sets
                break
            g, rest = pending[0], pending[1:]
            if isinstance(g, Eq):
                s2 = s.unify(g.a, g.b)
                if s2 is FAILURE:
                    break
                s, pending = s2, rest
            elif isinstance(g, Conj):
                pending = g.goals + rest
            elif isinstance(g, Fresh):
                if depth >= max_depth:
                    raise DepthExceeded("goal recursion exceeded %d" % max_depth)
                depth += 1
                pending = invoke_fresh(g) + rest
            elif isinstance(g, Set):
                sets = sets + (g,)
                pending = rest
            elif isinstance(g, Conde):
                for branch in reversed(g.branches):
                    stack.append((s, (branch,) + rest, sets, depth))
                break
            elif isinstance(g, PairCheck):
                if not eval_paircheck(s, g):
                    break
                pending = rest
            elif g is Succeed:
                pending = rest
            elif g is Fail:
                break
            else:
                raise TypeError("not a goal: %r" % (g,))


def run_all(s, goals, max_depth=DEFAULT_MAX_DEPTH):
    """All answer substitutions in depth-first order (Sets discarded)."""
    return [answer for answer, _ in run_states(s, goals, max_depth)]
