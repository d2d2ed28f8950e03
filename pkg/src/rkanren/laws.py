"""Randomized checks for the algebraic laws a step must satisfy.

Each case builds a fresh model from a seeded generator and drives one
update through a ReactiveSystem, then checks the law's postcondition
plus two blanket invariants: the substitution stays in normal form after
every successful step, and a rejected update leaves the bindings
bit-identical. Failures are reported as counterexamples (the list law
shrinks its input first); there is no hidden tolerance, a single
violation fails the run.
"""

import random

from .goals import conde, conj, eq, fresh, set_, tailo
from .insertion import flatten
from .reactive import ReactiveSystem, UpdateError
from .substitution import check_normal_form
from .terms import cons, ground_eq

WORDS = ["lorem", "ipsum", "dolor", "sit", "amet", "elit"]
ATOMS = WORDS + [0, 1, 7, 42, True, False, ""]
KEYS = ["a", "b", "c", "items", "title", "done"]


def check_laws(seed=0, cases=200):
    """Run every law `cases` times; returns a deterministic report."""
    rng = random.Random(seed)
    laws = [law_put_get, law_put_put, law_equivalence_class, law_swap,
            law_deterministic_assignment, law_remove_is_filter]
    checked = {law.__name__[4:]: 0 for law in laws}
    violations = []
    for case in range(cases):
        for law in laws:
            name = law.__name__[4:]
            checked[name] += 1
            detail = law(rng)
            if detail is not None:
                violations.append({"law": name, "case": case,
                                   "detail": detail})
    return {"seed": seed, "cases": cases, "checked": checked,
            "violations": violations, "ok": not violations}


def _random_model(rng, depth=0):
    roll = rng.random()
    if depth >= 2 or roll < 0.35:
        return rng.choice(ATOMS)
    if roll < 0.75:
        n = rng.randint(1, 3)
        return {k: _random_model(rng, depth + 1)
                for k in rng.sample(KEYS, n)}
    return [_random_model(rng, depth + 1) for _ in range(rng.randint(1, 3))]


def _atom_vars(sys):
    return [v for v, value in sys.substitution.bindings.items()
            if not isinstance(value, dict)]


def _fresh_system(rng):
    return ReactiveSystem(_random_model(rng))


def _post_step(sys):
    issues = check_normal_form(sys.substitution, sys.model_root)
    if issues:
        return "normal form violated: %s" % issues
    return None


def law_put_get(rng):
    """Setting a variable and reading it back observes the written value."""
    sys = _fresh_system(rng)
    x = rng.choice(_atom_vars(sys))
    value = rng.choice(ATOMS)
    sys.step(set_(x, value))
    got = sys.substitution.reify(x)
    if not ground_eq(got, value):
        return "set %r on %r read back %r" % (value, x, got)
    return _post_step(sys)


def law_put_put(rng):
    """Two writes in one step must agree; disagreement rejects the step."""
    sys = _fresh_system(rng)
    x = rng.choice(_atom_vars(sys))
    v1, v2 = rng.choice(ATOMS), rng.choice(ATOMS)
    before = dict(sys.substitution.bindings)
    goal = conj(set_(x, v1), set_(x, v2))
    if ground_eq(v1, v2):
        sys.step(goal)
        got = sys.substitution.reify(x)
        if not ground_eq(got, v1):
            return "agreeing writes %r/%r left %r" % (v1, v2, got)
        return _post_step(sys)
    try:
        sys.step(goal)
    except UpdateError as err:
        if err.kind != "conflict":
            return "expected a conflict, got %s" % err.kind
        if sys.substitution.bindings != before:
            return "rejected step changed the substitution"
        return None
    return "conflicting writes %r/%r were accepted" % (v1, v2)


def law_equivalence_class(rng):
    """A write through one alias lands on every variable unified with it."""
    word = rng.choice(WORDS)
    sys = ReactiveSystem({"a": word, "b": word,
                          "c": _random_model(rng, depth=2)})
    bindings = sys.substitution.bindings
    root_value = bindings[sys.model_root]
    x, y = root_value["a"], root_value["b"]
    value = rng.choice(ATOMS)
    sys.step(conj(eq(x, y), set_(x, value)))
    got_x = sys.substitution.reify(x)
    got_y = sys.substitution.reify(y)
    if not (ground_eq(got_x, value) and ground_eq(got_y, value)):
        return "set %r through alias: x=%r y=%r" % (value, got_x, got_y)
    return _post_step(sys)


def law_swap(rng):
    """Both writes in a step read the pre-state, so a swap is a swap."""
    sys = _fresh_system(rng)
    atoms = _atom_vars(sys)
    if len(atoms) < 2:
        return None
    x, y = rng.sample(atoms, 2)
    old_x, old_y = sys.substitution.reify(x), sys.substitution.reify(y)
    try:
        sys.step(conj(set_(x, y), set_(y, x)))
    except UpdateError as err:
        return "swap rejected: %s" % err
    got_x, got_y = sys.substitution.reify(x), sys.substitution.reify(y)
    if not (ground_eq(got_x, old_y) and ground_eq(got_y, old_x)):
        return "swap of %r/%r produced %r/%r" % (old_x, old_y, got_x, got_y)
    return _post_step(sys)


def law_deterministic_assignment(rng):
    """Every answer of the update goal must assign the same values."""
    sys = _fresh_system(rng)
    x = rng.choice(_atom_vars(sys))
    v1, v2 = rng.choice(ATOMS), rng.choice(ATOMS)
    before = dict(sys.substitution.bindings)
    goal = conde([set_(x, v1)], [set_(x, v2)])
    if ground_eq(v1, v2):
        sys.step(goal)
        got = sys.substitution.reify(x)
        if not ground_eq(got, v1):
            return "agreeing answers %r/%r left %r" % (v1, v2, got)
        return _post_step(sys)
    try:
        sys.step(goal)
    except UpdateError as err:
        if err.kind != "conflict":
            return "expected a conflict, got %s" % err.kind
        if sys.substitution.bindings != before:
            return "rejected step changed the substitution"
        return None
    return "disagreeing answers %r/%r were accepted" % (v1, v2)


def _remove_goal(m, word):
    return fresh(lambda items, tail, rest: [
        eq(m, {"items": items}),
        tailo(items, tail),
        eq(tail, cons(word, rest)),
        set_(tail, rest)])


def _run_remove(words):
    sys = ReactiveSystem({"items": list(words)})
    items = sys.substitution.bindings[sys.model_root]["items"]
    try:
        sys.step(_remove_goal(sys.model_root, "lorem"))
    except UpdateError as err:
        if err.kind != "no-answers":
            return "unexpected error: %s" % err
        if "lorem" in words:
            return "removal found no answers despite a match"
        return None
    issues = check_normal_form(sys.substitution, sys.model_root)
    if issues:
        return "normal form violated: %s" % issues
    got = flatten(sys.substitution, items)
    want = [w for w in words if w != "lorem"]
    if got != want:
        return "removal produced %r, filter says %r" % (got, want)
    return None


def law_remove_is_filter(rng):
    """Removing every matching tail behaves like a host-language filter."""
    n = rng.randint(0, 16)
    words = [rng.choice(WORDS) for _ in range(n)]
    detail = _run_remove(words)
    if detail is None:
        return None
    shrunk = _shrink_words(words)
    return "%s (shrunk input: %r)" % (_run_remove(shrunk) or detail, shrunk)


def _shrink_words(words):
    """Greedily drop elements while the failure persists."""
    current = list(words)
    changed = True
    while changed:
        changed = False
        for i in range(len(current)):
            candidate = current[:i] + current[i + 1:]
            if _run_remove(candidate) is not None:
                current = candidate
                changed = True
                break
    return current
