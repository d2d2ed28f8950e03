import assert from "node:assert/strict";
import { test } from "node:test";
import { DomBinding } from "../src/renderer.js";
import { RenderOp } from "../src/protocol.js";
import { makePage } from "./helpers.js";

function binding(log?: (m: string) => void) {
  const page = makePage();
  return { page, dom: new DomBinding(page.container, log ?? (() => {})) };
}

const MOUNT: RenderOp[] = [
  { op: "create_element", node_id: 1, tag: "ul", parent_id: null, position_key: [0] },
  { op: "create_element", node_id: 2, tag: "li", parent_id: 1, position_key: [0] },
  { op: "create_text", node_id: 3, text: "first", parent_id: 2, position_key: [0] },
];

test("mount batch builds the tree and the snapshot round-trips", () => {
  const { page, dom } = binding();
  assert.equal(dom.applyOps(MOUNT), true);
  assert.equal(page.container.innerHTML, "<ul><li>first</li></ul>");
  assert.deepEqual(dom.exportSnapshot(), {
    tag: "ul",
    attrs: {},
    children: [{ tag: "li", attrs: {}, children: [{ text: "first" }] }],
  });
});

test("attribute values keep their JSON types in the snapshot", () => {
  const { dom } = binding();
  dom.applyOps([
    { op: "create_element", node_id: 1, tag: "input", parent_id: null, position_key: [0] },
    { op: "set_attribute", node_id: 1, name: "checked", value: true },
    { op: "set_attribute", node_id: 1, name: "tabindex", value: 3 },
    { op: "set_attribute", node_id: 1, name: "hidden", value: false },
  ]);
  // false-valued attributes are dropped, true stays boolean, 3 stays a number
  assert.deepEqual(dom.exportSnapshot(), {
    tag: "input",
    attrs: { checked: true, tabindex: 3 },
    children: [],
  });
});

test("boolean attributes mirror onto element properties", () => {
  const { page, dom } = binding();
  dom.applyOps([
    { op: "create_element", node_id: 1, tag: "input", parent_id: null, position_key: [0] },
    { op: "set_attribute", node_id: 1, name: "checked", value: true },
  ]);
  const input = page.container.querySelector("input") as HTMLInputElement;
  assert.equal(input.checked, true);
  dom.applyOps([{ op: "set_attribute", node_id: 1, name: "checked", value: false }]);
  assert.equal(input.checked, false);
  assert.equal(input.hasAttribute("checked"), false);
});

test("siblings land in position-key order no matter the op order", () => {
  const { page, dom } = binding();
  dom.applyOps([
    { op: "create_element", node_id: 1, tag: "ul", parent_id: null, position_key: [0] },
    { op: "create_element", node_id: 2, tag: "li", parent_id: 1, position_key: ["b"] },
    { op: "create_element", node_id: 3, tag: "li", parent_id: 1, position_key: [7] },
    { op: "create_element", node_id: 4, tag: "li", parent_id: 1, position_key: ["a"] },
    { op: "create_element", node_id: 5, tag: "li", parent_id: 1, position_key: [2] },
  ]);
  dom.applyOps([
    { op: "set_text", node_id: 2, text: "b" },
    { op: "set_text", node_id: 3, text: "7" },
    { op: "set_text", node_id: 4, text: "a" },
    { op: "set_text", node_id: 5, text: "2" },
  ]);
  // numbers sort before strings, each kind ascending
  const texts = Array.from(page.container.querySelectorAll("li")).map(
    (li) => li.textContent,
  );
  assert.deepEqual(texts, ["2", "7", "a", "b"]);
});

test("later inserts splice between existing siblings", () => {
  const { page, dom } = binding();
  dom.applyOps([
    { op: "create_element", node_id: 1, tag: "ul", parent_id: null, position_key: [0] },
    { op: "create_text", node_id: 2, text: "left", parent_id: 1, position_key: [0, 0] },
    { op: "create_text", node_id: 3, text: "right", parent_id: 1, position_key: [2, 0] },
  ]);
  dom.applyOps([
    { op: "create_text", node_id: 4, text: "mid", parent_id: 1, position_key: [1, 0] },
  ]);
  assert.equal(page.container.querySelector("ul")!.textContent, "leftmidright");
});

test("a batch touching an unknown id is rejected without side effects", () => {
  const logged: string[] = [];
  const { page, dom } = binding((m) => logged.push(m));
  dom.applyOps(MOUNT);
  const before = page.container.innerHTML;
  const ok = dom.applyOps([
    { op: "create_element", node_id: 9, tag: "li", parent_id: 1, position_key: [1] },
    { op: "set_text", node_id: 42, text: "nope" },
  ]);
  assert.equal(ok, false);
  // the valid create_element at the front must not have run either
  assert.equal(page.container.innerHTML, before);
  assert.equal(dom.size(), 3);
  assert.match(logged[0]!, /unknown id 42/);
});

test("reusing a live node id rejects the batch", () => {
  const logged: string[] = [];
  const { dom } = binding((m) => logged.push(m));
  dom.applyOps(MOUNT);
  const ok = dom.applyOps([
    { op: "create_element", node_id: 2, tag: "li", parent_id: 1, position_key: [5] },
  ]);
  assert.equal(ok, false);
  assert.match(logged[0]!, /reuses live id 2/);
});

test("an id removed earlier in the batch may be recreated by it", () => {
  const { page, dom } = binding();
  dom.applyOps(MOUNT);
  const ok = dom.applyOps([
    { op: "remove_node", node_id: 2 },
    { op: "create_element", node_id: 2, tag: "li", parent_id: 1, position_key: [0] },
    { op: "create_text", node_id: 9, text: "again", parent_id: 2, position_key: [0] },
  ]);
  assert.equal(ok, true);
  assert.equal(page.container.querySelector("li")!.textContent, "again");
});

test("empty batches are fine", () => {
  const { dom } = binding();
  assert.equal(dom.applyOps([]), true);
});

test("remove_node drops the whole subtree and forgets its ids", () => {
  const { page, dom } = binding();
  dom.applyOps(MOUNT);
  const li = page.container.querySelector("li");
  dom.applyOps([{ op: "remove_node", node_id: 2 }]);
  assert.equal(dom.size(), 1);
  assert.equal(page.container.querySelector("li"), null);
  assert.equal(dom.idOf(li as unknown as Node), null);
  assert.equal(dom.nodeOf(3), null);
});

test("idOf walks up from untracked descendants to the owning node", () => {
  const { page, dom } = binding();
  dom.applyOps(MOUNT);
  const text = page.container.querySelector("li")!.firstChild;
  assert.equal(dom.idOf(text), 3);
  assert.equal(dom.idOf(page.container), null);
});

test("set_text rewrites a text node in place", () => {
  const { page, dom } = binding();
  dom.applyOps(MOUNT);
  const before = page.container.querySelector("li")!.firstChild;
  dom.applyOps([{ op: "set_text", node_id: 3, text: "second" }]);
  assert.equal(page.container.querySelector("li")!.textContent, "second");
  assert.equal(page.container.querySelector("li")!.firstChild, before);
});

test("host_effect clear_value empties the input without touching focus", () => {
  const { page, dom } = binding();
  dom.applyOps([
    { op: "create_element", node_id: 1, tag: "input", parent_id: null, position_key: [0] },
  ]);
  const input = page.container.querySelector("input") as HTMLInputElement;
  input.focus();
  input.value = "typed";
  dom.applyOps([{ op: "host_effect", node_id: 1, effect: "clear_value" }]);
  assert.equal(input.value, "");
  assert.equal(page.document.activeElement, input);
});

test("host_effect blur moves focus off the node", () => {
  const { page, dom } = binding();
  dom.applyOps([
    { op: "create_element", node_id: 1, tag: "input", parent_id: null, position_key: [0] },
  ]);
  const input = page.container.querySelector("input") as HTMLInputElement;
  input.focus();
  assert.equal(page.document.activeElement, input);
  dom.applyOps([{ op: "host_effect", node_id: 1, effect: "blur" }]);
  assert.notEqual(page.document.activeElement, input);
});
