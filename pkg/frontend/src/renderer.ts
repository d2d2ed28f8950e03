/**
 * DomBinding: applies render-op batches to live DOM nodes and exports the
 * snapshot dialect back out of them.
 *
 * Node identity is the engine's node_id; exactly one live node exists per
 * id. Sibling order is decided purely by position keys, so ops can arrive
 * in any order within a batch and the DOM still converges. Attribute
 * values are additionally kept in a typed map per element: a DOM
 * attribute is always a string, but the snapshot dialect preserves JSON
 * types (checked: true, not "true"), so the exporter reads values from
 * the map while taking shape, order and text from the live tree.
 */

import {
  AttrValue,
  ElementSnapshot,
  PositionKey,
  RenderOp,
  Snapshot,
  comparePositionKeys,
} from "./protocol.js";

interface Entry {
  node: Element | Text;
  key: PositionKey;
  parentId: number | null;
  attrs: Map<string, AttrValue>;
  childIds: number[];
}

const BOOLEAN_PROPERTIES = new Set(["checked", "disabled", "autofocus"]);

// nodeType check instead of `instanceof Element`: the global Element class
// does not exist under node, and happy-dom ships its own.
function isElement(node: Node): node is Element {
  return node.nodeType === 1;
}

export class DomBinding {
  private readonly doc: Document;
  private readonly entries = new Map<number, Entry>();
  private readonly byNode = new Map<Node, number>();
  private rootChildren: number[] = [];

  constructor(
    readonly container: Element,
    private readonly log: (message: string) => void = (m) =>
      console.warn(m),
  ) {
    this.doc = container.ownerDocument;
  }

  /**
   * Apply one batch atomically: the batch is validated first and an
   * unknown or duplicate id rejects the whole thing untouched.
   */
  applyOps(batch: RenderOp[]): boolean {
    const problem = this.validate(batch);
    if (problem !== null) {
      this.log(`batch aborted: ${problem}`);
      return false;
    }
    for (const op of batch) this.apply(op);
    return true;
  }

  private validate(batch: RenderOp[]): string | null {
    const known = new Set(this.entries.keys());
    for (const op of batch) {
      if (op.op === "create_element" || op.op === "create_text") {
        if (known.has(op.node_id)) {
          return `${op.op} reuses live id ${op.node_id}`;
        }
        if (op.parent_id !== null && !known.has(op.parent_id)) {
          return `${op.op} references unknown parent ${op.parent_id}`;
        }
        known.add(op.node_id);
      } else {
        if (!known.has(op.node_id)) {
          return `${op.op} references unknown id ${op.node_id}`;
        }
        if (op.op === "remove_node") known.delete(op.node_id);
      }
    }
    return null;
  }

  private apply(op: RenderOp): void {
    switch (op.op) {
      case "create_element":
        this.insert(op.node_id, this.doc.createElement(op.tag), op.parent_id,
          op.position_key);
        break;
      case "create_text":
        this.insert(op.node_id, this.doc.createTextNode(op.text),
          op.parent_id, op.position_key);
        break;
      case "set_attribute":
        this.setAttribute(op.node_id, op.name, op.value);
        break;
      case "set_text": {
        const entry = this.entries.get(op.node_id);
        if (entry) entry.node.textContent = op.text;
        break;
      }
      case "remove_node":
        this.remove(op.node_id);
        break;
      case "host_effect":
        this.hostEffect(op.node_id, op.effect);
        break;
    }
  }

  private siblingsOf(parentId: number | null): number[] {
    if (parentId === null) return this.rootChildren;
    return this.entries.get(parentId)!.childIds;
  }

  private insert(
    id: number,
    node: Element | Text,
    parentId: number | null,
    key: PositionKey,
  ): void {
    const entry: Entry = {
      node,
      key,
      parentId,
      attrs: new Map(),
      childIds: [],
    };
    this.entries.set(id, entry);
    this.byNode.set(node, id);
    const siblings = this.siblingsOf(parentId);
    let index = siblings.length;
    for (let i = 0; i < siblings.length; i++) {
      const sibling = this.entries.get(siblings[i]!)!;
      if (comparePositionKeys(sibling.key, key) > 0) {
        index = i;
        break;
      }
    }
    const parentNode =
      parentId === null ? this.container : this.entries.get(parentId)!.node;
    const reference =
      index < siblings.length
        ? this.entries.get(siblings[index]!)!.node
        : null;
    parentNode.insertBefore(node, reference);
    siblings.splice(index, 0, id);
  }

  private setAttribute(id: number, name: string, value: AttrValue): void {
    const entry = this.entries.get(id);
    if (!entry || !isElement(entry.node)) return;
    entry.attrs.set(name, value);
    const el = entry.node;
    if (value === false) {
      el.removeAttribute(name);
    } else if (value === true) {
      el.setAttribute(name, "");
    } else {
      el.setAttribute(name, String(value));
    }
    // live form state follows the property, not the attribute
    if (name === "value" && "value" in el) {
      (el as HTMLInputElement).value = String(value);
    } else if (BOOLEAN_PROPERTIES.has(name) && name in el) {
      (el as unknown as Record<string, unknown>)[name] = value === true;
    }
  }

  private remove(id: number): void {
    const entry = this.entries.get(id);
    if (!entry) return;
    for (const child of [...entry.childIds]) this.forget(child);
    const siblings = this.siblingsOf(entry.parentId);
    const at = siblings.indexOf(id);
    if (at >= 0) siblings.splice(at, 1);
    this.entries.delete(id);
    this.byNode.delete(entry.node);
    entry.node.remove();
  }

  private forget(id: number): void {
    const entry = this.entries.get(id);
    if (!entry) return;
    for (const child of entry.childIds) this.forget(child);
    this.entries.delete(id);
    this.byNode.delete(entry.node);
  }

  private hostEffect(id: number, effect: "clear_value" | "blur"): void {
    const entry = this.entries.get(id);
    if (!entry || !isElement(entry.node)) return;
    if (effect === "clear_value") {
      (entry.node as HTMLInputElement).value = "";
    } else {
      (entry.node as HTMLElement).blur();
    }
  }

  /** The engine id owning a DOM node, walking up from event targets. */
  idOf(node: Node | null): number | null {
    let current: Node | null = node;
    while (current !== null) {
      const id = this.byNode.get(current);
      if (id !== undefined) return id;
      current = current.parentNode;
    }
    return null;
  }

  nodeOf(id: number): Element | Text | null {
    return this.entries.get(id)?.node ?? null;
  }

  size(): number {
    return this.entries.size;
  }

  /**
   * Export the snapshot dialect from the live tree: one object per top
   * node (unwrapped when single), attrs sorted with false values dropped.
   */
  exportSnapshot(): Snapshot | Snapshot[] {
    const tops = this.childSnapshots(this.container);
    return tops.length === 1 ? tops[0]! : tops;
  }

  private childSnapshots(parent: Node): Snapshot[] {
    const out: Snapshot[] = [];
    for (const child of Array.from(parent.childNodes)) {
      if (!this.byNode.has(child)) continue;
      out.push(this.snapshotOf(child));
    }
    return out;
  }

  private snapshotOf(node: Node): Snapshot {
    const id = this.byNode.get(node)!;
    const entry = this.entries.get(id)!;
    if (!isElement(node)) {
      return { text: (node as Text).data };
    }
    const attrs: Record<string, AttrValue> = {};
    for (const name of [...entry.attrs.keys()].sort()) {
      const value = entry.attrs.get(name)!;
      if (value !== false) attrs[name] = value;
    }
    const snapshot: ElementSnapshot = {
      tag: node.tagName.toLowerCase(),
      attrs,
      children: this.childSnapshots(node),
    };
    return snapshot;
  }
}
