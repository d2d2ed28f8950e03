"""Template runtime: instantiating view templates against the model,
wiring event handlers, and emitting render ops to an abstract node tree.

A template is plain host data: a string or number renders as a text
node; a list renders as an element whose head is either a tag string or
a property dict ({"tagName": "p", "id": "text"}) and whose remaining
items are child templates; a logic variable renders whatever template it
is bound to; a callable is a goal constructor receiving a fresh view
variable (and an order variable when it takes two arguments) whose
answers each mount one sibling element at the leaf's position.

Properties whose names start with "on" register event handlers. Other
properties are literals or logic variables that must hold atoms; bound
variables are watched and re-emitted when a step changes them.

The instance never touches a display. It emits RenderOp dicts (a
newline-delimited JSON wire format) and applies them to its own abstract
node tree, which snapshots serialize from; any real renderer is a sink
that consumes the same ops.
"""

import json
import logging
from dataclasses import dataclass
from itertools import count
from typing import Optional

from .goals import Goal, conj, eq
from .terms import LVar, fresh_var, strict_eq
from .viewtree import ViewTree, position_key, _sortable

log = logging.getLogger(__name__)


class MountError(Exception):
    pass


@dataclass
class EventPayload:
    event_type: str
    key: Optional[str] = None
    target_value: Optional[str] = None
    checked: Optional[bool] = None


class _EventTarget:
    """The e.target handlers read and poke: value, checked, blur()."""

    def __init__(self, payload, effects):
        object.__setattr__(self, "_payload", payload)
        object.__setattr__(self, "_effects", effects)

    @property
    def value(self):
        return self._payload.target_value

    @property
    def checked(self):
        return self._payload.checked

    def blur(self):
        self._effects.append({"effect": "blur"})

    def __setattr__(self, name, value):
        if name == "value" and value == "":
            self._effects.append({"effect": "clear_value"})
        else:
            raise AttributeError("event targets only accept value = ''")


class EventObject:
    """What a host handler function receives as e."""

    def __init__(self, payload):
        self.type = payload.event_type
        self.key = payload.key
        self.effects = []
        self.target = _EventTarget(payload, self.effects)


def reads_state(fn):
    """Mark a handler that needs the current substitution: fn(s, e)."""
    fn.wants_state = True
    return fn


class _Node:
    __slots__ = ("id", "kind", "tag", "text", "attrs", "children", "parent")

    def __init__(self, node_id, kind, parent):
        self.id = node_id
        self.kind = kind
        self.tag = None
        self.text = None
        self.attrs = {}
        self.children = []  # (sortable_key, raw_key, node_id)
        self.parent = parent


class _Watcher:
    __slots__ = ("kind", "node_id", "name", "var", "last")

    def __init__(self, kind, node_id, name, var, last):
        self.kind = kind
        self.node_id = node_id
        self.name = name
        self.var = var
        self.last = last


class _Fragment:
    """Everything mounted for one answer leaf (or for the static root)."""

    __slots__ = ("slot", "leaf", "top_ids", "watchers", "slots",
                 "handler_keys")

    def __init__(self, slot=None, leaf=None):
        self.slot = slot
        self.leaf = leaf
        self.top_ids = []
        self.watchers = []
        self.slots = []
        self.handler_keys = []


class _Slot:
    """A goal-constructor child: one view tree plus a fragment per answer."""

    __slots__ = ("constructor", "view_var", "order_var", "tree", "parent_id",
                 "base_key", "host", "fragments")

    def __init__(self, constructor, parent_id, base_key, host):
        self.constructor = constructor
        n_args = constructor.__code__.co_argcount
        if n_args not in (1, 2):
            raise MountError(
                "goal constructors take a view variable and an optional "
                "order variable, got one with %d parameters" % n_args)
        self.view_var = fresh_var("view")
        self.order_var = fresh_var("order") if n_args == 2 else None
        goal = (constructor(self.view_var) if n_args == 1
                else constructor(self.view_var, self.order_var))
        self.tree = ViewTree(goal, order_var=self.order_var)
        self.parent_id = parent_id
        self.base_key = base_key
        self.host = host          # fragment this slot lives in
        self.fragments = {}       # leaf -> _Fragment


class _Handler:
    __slots__ = ("spec", "fragment")

    def __init__(self, spec, fragment):
        self.spec = spec
        self.fragment = fragment


def _is_atom(v):
    return isinstance(v, (str, int, float, bool))


class ViewInstance:
    def __init__(self, sys):
        self.sys = sys
        self.nodes = {}
        self.top = []             # (sortable_key, raw_key, node_id)
        self.handlers = {}        # (node_id, event_type) -> _Handler
        self.root_fragment = _Fragment()
        self._ids = count(1)
        self._batch = None

    # ---- substitution context for a fragment

    def _state_of(self, frag):
        if frag.leaf is not None:
            return frag.leaf.local_s
        return self.sys.substitution

    def _context_goals(self, frag):
        goals = []
        chain = []
        while frag is not None and frag.slot is not None:
            chain.append(frag)
            frag = frag.slot.host
        for f in reversed(chain):
            goals.extend(f.slot.tree.path_conjunction(f.leaf))
        return goals

    # ---- op emission doubles as abstract-tree application

    def _emit(self, op):
        self._batch.append(op)
        name = op["op"]
        if name == "create_element" or name == "create_text":
            parent = op["parent_id"]
            node = _Node(op["node_id"],
                         "element" if name == "create_element" else "text",
                         parent)
            if name == "create_element":
                node.tag = op["tag"]
            else:
                node.text = op["text"]
            self.nodes[node.id] = node
            key = tuple(op["position_key"])
            entry = (_sortable(key), key, node.id)
            siblings = self.nodes[parent].children if parent is not None \
                else self.top
            siblings.append(entry)
            siblings.sort(key=lambda e: e[0])
        elif name == "set_attribute":
            self.nodes[op["node_id"]].attrs[op["name"]] = op["value"]
        elif name == "set_text":
            self.nodes[op["node_id"]].text = op["text"]
        elif name == "remove_node":
            self._drop_node(op["node_id"])

    def _drop_node(self, node_id):
        node = self.nodes.pop(node_id, None)
        if node is None:
            return
        siblings = self.nodes[node.parent].children \
            if node.parent is not None and node.parent in self.nodes \
            else self.top
        siblings[:] = [e for e in siblings if e[2] != node_id]
        for _sk, _k, child in list(node.children):
            self._drop_node(child)

    # ---- mounting

    def mount_root(self, template):
        self._batch = []
        node_id = self._mount_into(template, self.sys.substitution, None,
                                   (0,), self.root_fragment)
        if node_id is not None:
            self.root_fragment.top_ids.append(node_id)
        ops, self._batch = self._batch, None
        return ops

    def _mount_into(self, tpl, s, parent_id, key, frag):
        """Mount one template child; slots fan out to many nodes,
        everything else creates exactly one, whose id is returned."""
        if callable(tpl) and not isinstance(tpl, LVar):
            self._mount_slot(tpl, s, parent_id, key, frag)
            return None
        return self._mount_value(tpl, s, parent_id, key, frag)

    def _mount_value(self, tpl, s, parent_id, key, frag):
        if isinstance(tpl, LVar):
            value = s.walk(tpl)
            if isinstance(value, LVar):
                raise MountError("view variable %r is unbound" % tpl)
            if _is_atom(value):
                node_id = self._create_text(_text(value), parent_id, key)
                frag.watchers.append(
                    _Watcher("text", node_id, None, tpl, _text(value)))
                return node_id
            if isinstance(value, list):
                return self._mount_element(value, s, parent_id, key, frag)
            raise MountError(
                "view variable %r is bound to %r, which is not a template"
                % (tpl, value))
        if _is_atom(tpl):
            return self._create_text(_text(tpl), parent_id, key)
        if isinstance(tpl, list):
            return self._mount_element(tpl, s, parent_id, key, frag)
        raise MountError("%r is not a template" % (tpl,))

    def _create_text(self, text, parent_id, key):
        node_id = next(self._ids)
        self._emit({"op": "create_text", "node_id": node_id, "text": text,
                    "parent_id": parent_id, "position_key": list(key)})
        return node_id

    def _mount_element(self, tpl, s, parent_id, key, frag):
        if not tpl:
            raise MountError("an element template needs a head")
        head = tpl[0]
        if isinstance(head, str):
            tag, props = head, {}
        elif isinstance(head, dict):
            props = dict(head)
            tag = props.pop("tagName", None)
            if not isinstance(tag, str):
                raise MountError("element properties need a tagName string")
        else:
            raise MountError(
                "element head must be a tag string or property dict, "
                "got %r" % (head,))
        node_id = next(self._ids)
        self._emit({"op": "create_element", "node_id": node_id, "tag": tag,
                    "parent_id": parent_id, "position_key": list(key)})
        for name, pv in props.items():
            if name.startswith("on"):
                event_type = name[2:]
                self.handlers[(node_id, event_type)] = _Handler(pv, frag)
                frag.handler_keys.append((node_id, event_type))
                continue
            if name == "className":
                name = "class"
            if isinstance(pv, LVar):
                value = s.walk(pv)
                if not _is_atom(value):
                    raise MountError(
                        "attribute %r is bound to %r, not an atom"
                        % (name, value))
                self._emit({"op": "set_attribute", "node_id": node_id,
                            "name": name, "value": value})
                frag.watchers.append(
                    _Watcher("attr", node_id, name, pv, value))
            elif _is_atom(pv):
                self._emit({"op": "set_attribute", "node_id": node_id,
                            "name": name, "value": pv})
            else:
                raise MountError(
                    "attribute %r has unrenderable value %r" % (name, pv))
        for i, child in enumerate(tpl[1:]):
            self._mount_into(child, s, node_id, (i,), frag)
        return node_id

    def _mount_slot(self, constructor, s, parent_id, key, frag):
        slot = _Slot(constructor, parent_id, key, frag)
        slot.tree.expand(s)
        frag.slots.append(slot)
        for leaf, pkey in slot.tree.ordered_answers():
            self._mount_leaf(slot, leaf, pkey)

    def _mount_leaf(self, slot, leaf, pkey):
        frag = _Fragment(slot=slot, leaf=leaf)
        value = leaf.local_s.walk(slot.view_var)
        if isinstance(value, LVar):
            raise MountError(
                "goal constructor %r left its view variable unbound"
                % (slot.constructor,))
        node_id = self._mount_value(slot.view_var, leaf.local_s,
                                    slot.parent_id, slot.base_key + pkey,
                                    frag)
        frag.top_ids.append(node_id)
        slot.fragments[leaf] = frag
        leaf.attachment = frag

    # ---- teardown

    def _teardown(self, frag):
        for slot in frag.slots:
            for sub in list(slot.fragments.values()):
                self._teardown(sub)
            slot.fragments.clear()
        for hk in frag.handler_keys:
            self.handlers.pop(hk, None)
        frag.handler_keys = []
        frag.watchers = []
        frag.slots = []
        for node_id in frag.top_ids:
            self._purge_handlers_under(node_id)
            self._emit({"op": "remove_node", "node_id": node_id})
        frag.top_ids = []
        if frag.leaf is not None:
            frag.leaf.attachment = None
            frag.slot.fragments.pop(frag.leaf, None)

    def _purge_handlers_under(self, node_id):
        node = self.nodes.get(node_id)
        if node is None:
            return
        for key in [k for k in self.handlers if k[0] == node_id]:
            self.handlers.pop(key, None)
        for _sk, _k, child in node.children:
            self._purge_handlers_under(child)

    # ---- refresh after a step

    def rerender(self):
        self._batch = []
        self._refresh_fragment(self.root_fragment)
        ops, self._batch = self._batch, None
        return ops

    def _refresh_fragment(self, frag):
        s = self._state_of(frag)
        for w in frag.watchers:
            value = s.walk(w.var)
            if w.kind == "text":
                text = _text(value)
                if text != w.last:
                    self._emit({"op": "set_text", "node_id": w.node_id,
                                "text": text})
                    w.last = text
            else:
                if not _is_atom(value):
                    raise MountError(
                        "attribute %r is bound to %r, not an atom"
                        % (w.name, value))
                if not strict_eq(value, w.last):
                    self._emit({"op": "set_attribute", "node_id": w.node_id,
                                "name": w.name, "value": value})
                    w.last = value
        for slot in list(frag.slots):
            self._refresh_slot(slot, s)

    def _refresh_slot(self, slot, s):
        unmounts, mounts, refreshes = slot.tree.reexpand(s)
        for leaf in unmounts:
            target = slot.fragments.get(leaf)
            if target is not None:
                self._teardown(target)
        for leaf in mounts:
            self._mount_leaf(slot, leaf, position_key(leaf, slot.order_var))
        for leaf in refreshes:
            target = slot.fragments.get(leaf)
            if target is not None:
                self._refresh_fragment(target)

    # ---- events

    def dispatch_event(self, node_id, event_type, payload):
        handler = self.handlers.get((node_id, event_type))
        if handler is None:
            log.warning("no %r handler on node %d", event_type, node_id)
            return []
        e = EventObject(payload)
        goal = self._evaluate_handler(handler.spec, payload, e)
        self._batch = []
        for effect in e.effects:
            self._emit({"op": "host_effect", "node_id": node_id,
                        "effect": effect["effect"]})
        ops, self._batch = self._batch, None
        if goal is not None:
            context = self._context_goals(handler.fragment)
            self.sys.step(goal, context_goals=context)
            ops.extend(self.rerender())
        return ops

    def _evaluate_handler(self, spec, payload, e):
        if isinstance(spec, Goal):
            return spec
        if callable(spec):
            code = getattr(spec, "__code__", None)
            n_args = code.co_argcount if code is not None else 1
            if getattr(spec, "wants_state", False):
                result = spec(self.sys.substitution, e)
            elif n_args >= 2:
                value_var = fresh_var("value")
                result = spec(e, value_var)
                if isinstance(result, (Goal, list, tuple)) and \
                        payload.target_value is not None:
                    result = [eq(value_var, payload.target_value), result]
            else:
                result = spec(e)
            if result is None or result is False:
                return None
            if isinstance(result, (list, tuple)):
                return conj(*result)
            if isinstance(result, Goal):
                return result
            raise MountError(
                "handler returned %r, not a goal" % (result,))
        raise MountError("%r is not an event handler" % (spec,))

    # ---- snapshots

    def snapshot(self):
        tops = [self._snap(node_id) for _sk, _k, node_id in self.top]
        if len(tops) == 1:
            return tops[0]
        return tops

    def _snap(self, node_id):
        node = self.nodes[node_id]
        if node.kind == "text":
            return {"text": node.text}
        attrs = {k: v for k, v in sorted(node.attrs.items())
                 if v is not False}
        return {"tag": node.tag, "attrs": attrs,
                "children": [self._snap(c) for _sk, _k, c in node.children]}


def _text(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float) and value.is_integer():
        return str(int(value))
    return str(value)


def mount(sys, template):
    """Instantiate a template against a reactive system's current state."""
    instance = ViewInstance(sys)
    ops = instance.mount_root(template)
    return instance, ops


def dispatch_event(instance, node_id, event_type, payload):
    """Run the registered handler and return the resulting op batch."""
    return instance.dispatch_event(node_id, event_type, payload)


def snapshot(instance):
    return instance.snapshot()


def snapshot_json(instance):
    """The bit-exact golden-file form: sorted keys, no whitespace games."""
    return json.dumps(instance.snapshot(), sort_keys=True,
                      separators=(",", ":"))
