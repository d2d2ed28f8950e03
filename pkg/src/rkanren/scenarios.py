"""Scenario files: deterministic event scripts against a named template.

A scenario is JSON:

    {"template": "todomvc",
     "model": {"todos": [], "active": true, "completed": true},
     "events": [{"on": ".new-todo", "type": "keydown",
                 "key": "Enter", "value": "buy milk"}],
     "expect": [{"after": 0, "snapshot_file": "golden/step0.json"},
                {"after": 0, "ops_at_most": 20}]}

Events address nodes with a small selector language resolved against the
instance's abstract tree at dispatch time: "tag", "#id", ".class",
"[attr=value]" and any combination, plus ":nth(i)" to pick the i-th
match in document order, "@N" for a raw node id, and "/0/2/1" for a path
of child indices from the root. A selector that matches zero or several
nodes (without :nth) is an error, so scripts cannot silently drift.

The runner checks the substitution is in normal form after the mount and
after every event, optionally cross-checks incremental rendering against
a fresh mount of the same template, and evaluates expectations. It never
raises on a failed expectation; failures land in the report so the CLI
can print them all and exit nonzero once.
"""

import json
import re
from pathlib import Path

from .reactive import ReactiveSystem
from .registry import DEFAULT_MODELS, TEMPLATES, prepare_model
from .substitution import check_normal_form, export_model
from .template import EventPayload, mount

_NTH = re.compile(r":nth\((\d+)\)$")
_PART = re.compile(r"([#.]?[\w-]+|\[[\w-]+=[^\]]*\])")


class ScenarioError(Exception):
    pass


def load_scenario(path):
    with open(path) as f:
        scenario = json.load(f)
    if "template" not in scenario:
        raise ScenarioError("%s: scenario needs a template name" % path)
    if scenario["template"] not in TEMPLATES:
        raise ScenarioError("%s: unknown template %r (have: %s)"
                            % (path, scenario["template"],
                               ", ".join(sorted(TEMPLATES))))
    scenario.setdefault("events", [])
    scenario.setdefault("expect", [])
    scenario["_dir"] = str(Path(path).parent)
    return scenario


def resolve_selector(instance, selector):
    """Turn a selector into the single node id it denotes."""
    if selector.startswith("@"):
        node_id = int(selector[1:])
        if node_id not in instance.nodes:
            raise ScenarioError("no node with id %d" % node_id)
        return node_id
    if selector.startswith("/"):
        steps = [int(p) for p in selector.split("/")[1:] if p != ""]
        entries = instance.top
        node_id = None
        for step in steps:
            if step >= len(entries):
                raise ScenarioError("path %s walks off the tree" % selector)
            node_id = entries[step][2]
            entries = instance.nodes[node_id].children
        if node_id is None:
            raise ScenarioError("empty path selector")
        return node_id

    nth = None
    m = _NTH.search(selector)
    base = selector
    if m:
        nth = int(m.group(1))
        base = selector[:m.start()]
    tag = None
    checks = []
    for part in _PART.findall(base):
        if part.startswith("#"):
            checks.append(("id", part[1:]))
        elif part.startswith("."):
            checks.append(("class", part[1:]))
        elif part.startswith("["):
            name, _, value = part[1:-1].partition("=")
            checks.append((name, value))
        else:
            tag = part

    def matches(node):
        if node.kind != "element":
            return False
        if tag is not None and node.tag != tag:
            return False
        for name, want in checks:
            have = node.attrs.get(name)
            if name == "class":
                if want not in str(have or "").split():
                    return False
            elif str(have) != want:
                return False
        return True

    found = [n for n in _document_order(instance) if matches(n)]
    if nth is not None:
        if nth >= len(found):
            raise ScenarioError("%r matches %d nodes, wanted index %d"
                                % (selector, len(found), nth))
        return found[nth].id
    if len(found) != 1:
        raise ScenarioError("%r matches %d nodes, must match exactly one"
                            % (selector, len(found)))
    return found[0].id


def _document_order(instance):
    stack = [entry[2] for entry in reversed(instance.top)]
    while stack:
        node = instance.nodes[stack.pop()]
        yield node
        stack.extend(entry[2] for entry in reversed(node.children))


def _payload(event):
    return EventPayload(event_type=event["type"],
                        key=event.get("key"),
                        target_value=event.get("value"),
                        checked=event.get("checked"))


def run_scenario(scenario, check_oracle=False, snapshot_every_step=False,
                 op_sink=None, dump_tree=False):
    """Replay a scenario; returns a report dict with any failures inside."""
    name = scenario["template"]
    model = scenario.get("model", DEFAULT_MODELS[name])
    sys = ReactiveSystem(prepare_model(name, model))
    instance, mount_ops = mount(sys, TEMPLATES[name](sys.model_root))
    failures = []
    steps = []
    expectations = _index_expectations(scenario)

    def emit_ops(ops):
        # one batch per event, blank-line framed so replay harnesses can
        # align batches with per-step snapshots
        if op_sink is not None:
            for op in ops:
                op_sink.write(json.dumps(op, sort_keys=True) + "\n")
            op_sink.write("\n")
            op_sink.flush()

    def checkpoint(label, ops, event_index):
        issues = check_normal_form(sys.substitution, sys.model_root)
        for issue in issues:
            failures.append("%s: substitution not in normal form: %s"
                            % (label, issue))
        if check_oracle:
            fresh_inst, _ = mount(sys, TEMPLATES[name](sys.model_root))
            if fresh_inst.snapshot() != instance.snapshot():
                failures.append(
                    "%s: incremental snapshot diverges from fresh mount"
                    % label)
        step = {"label": label, "ops": len(ops)}
        if snapshot_every_step:
            step["snapshot"] = instance.snapshot()
        steps.append(step)
        for exp in expectations.get(event_index, []):
            failures.extend(_check_expectation(exp, instance, ops, scenario))

    emit_ops(mount_ops)
    checkpoint("mount", mount_ops, "mount")

    for i, event in enumerate(scenario["events"]):
        node_id = resolve_selector(instance, event["on"])
        ops = instance.dispatch_event(node_id, event["type"], _payload(event))
        emit_ops(ops)
        checkpoint("event %d (%s on %s)" % (i, event["type"], event["on"]),
                   ops, i)

    report = {
        "template": name,
        "steps": steps,
        "final_snapshot": instance.snapshot(),
        "final_model": export_model(sys.substitution, sys.model_root),
        "failures": failures,
        "ok": not failures,
    }
    if dump_tree:
        report["trees"] = _dump_trees(instance)
    return report


def _index_expectations(scenario):
    by_index = {}
    for exp in scenario["expect"]:
        by_index.setdefault(exp.get("after", "mount"), []).append(exp)
    return by_index


def _check_expectation(exp, instance, ops, scenario):
    failures = []
    where = "after %r" % exp.get("after", "mount")
    if "snapshot" in exp or "snapshot_file" in exp:
        want = exp.get("snapshot")
        if want is None:
            path = Path(scenario.get("_dir", ".")) / exp["snapshot_file"]
            with open(path) as f:
                want = json.load(f)
        got = instance.snapshot()
        if got != want:
            failures.append("%s: snapshot mismatch\n  want: %s\n  got:  %s"
                            % (where,
                               json.dumps(want, sort_keys=True)[:400],
                               json.dumps(got, sort_keys=True)[:400]))
    if "ops_at_most" in exp and len(ops) > exp["ops_at_most"]:
        failures.append("%s: %d ops, expected at most %d"
                        % (where, len(ops), exp["ops_at_most"]))
    if "ops_at_least" in exp and len(ops) < exp["ops_at_least"]:
        failures.append("%s: %d ops, expected at least %d"
                        % (where, len(ops), exp["ops_at_least"]))
    return failures


def _dump_trees(instance):
    dumps = []

    def visit(frag, label):
        for i, slot in enumerate(frag.slots):
            slot_label = "%s/slot%d" % (label, i)
            dumps.append({"slot": slot_label, "tree": slot.tree.dump()})
            for leaf, sub in slot.fragments.items():
                visit(sub, "%s@%s" % (slot_label, list(leaf.path)))

    visit(instance.root_fragment, "root")
    return dumps
