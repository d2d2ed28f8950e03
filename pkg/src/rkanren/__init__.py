"""Reactive relational programming: logic-variable state, goal-driven
transitions, and incrementally maintained views over the answer stream.
"""

from .goals import (DEFAULT_MAX_DEPTH, Conde, Conj, DepthExceeded, Eq, Fail,
                    Fresh, Goal, PairCheck, Set, Succeed, conde, conj, eq,
                    fresh, imembero, leftmosto, membero, pairo, run_all,
                    run_states, set_, tailo)
from .insertion import flatten, from_flat, insert_before
from .kernel import KERNEL_NAME
from .laws import check_laws
from .reactive import ReactiveSystem, UpdateError
from .substitution import (FAILURE, Substitution, check_normal_form, empty,
                           export_model, normalize)
from .template import (EventPayload, MountError, ViewInstance, dispatch_event,
                       mount, reads_state, snapshot, snapshot_json)
from .terms import (LVar, cons, fresh_var, ground_eq, is_compound, is_pair,
                    is_var, list_, nil, strict_eq)
from .viewtree import ViewTree, position_key

__all__ = [
    "Conde", "Conj", "DEFAULT_MAX_DEPTH", "DepthExceeded", "Eq",
    "EventPayload", "FAILURE", "Fail", "Fresh", "Goal", "KERNEL_NAME",
    "LVar", "MountError", "PairCheck", "ReactiveSystem", "Set",
    "Substitution", "Succeed", "UpdateError", "ViewInstance", "ViewTree",
    "check_laws", "check_normal_form", "conde", "conj", "cons",
    "dispatch_event", "empty", "eq", "export_model", "flatten", "fresh",
    "fresh_var", "from_flat", "ground_eq", "imembero", "insert_before",
    "is_compound", "is_pair", "is_var", "leftmosto", "list_", "membero",
    "mount", "nil", "normalize", "pairo", "position_key", "reads_state",
    "run_all", "run_states", "set_", "snapshot", "snapshot_json",
    "strict_eq", "tailo",
]
