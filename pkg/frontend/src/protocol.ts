/**
 * The engine's wire formats: render ops (one JSON object per op, streamed
 * in batches), event payloads, and the snapshot dialect golden files are
 * written in. These mirror the Python side field for field; nothing here
 * knows about the DOM.
 */

export type PositionKey = ReadonlyArray<number | string>;

export type AttrValue = string | number | boolean;

export interface CreateElementOp {
  op: "create_element";
  node_id: number;
  tag: string;
  parent_id: number | null;
  position_key: PositionKey;
}

export interface CreateTextOp {
  op: "create_text";
  node_id: number;
  text: string;
  parent_id: number | null;
  position_key: PositionKey;
}

export interface SetAttributeOp {
  op: "set_attribute";
  node_id: number;
  name: string;
  value: AttrValue;
}

export interface SetTextOp {
  op: "set_text";
  node_id: number;
  text: string;
}

export interface RemoveNodeOp {
  op: "remove_node";
  node_id: number;
}

export interface HostEffectOp {
  op: "host_effect";
  node_id: number;
  effect: "clear_value" | "blur";
}

export type RenderOp =
  | CreateElementOp
  | CreateTextOp
  | SetAttributeOp
  | SetTextOp
  | RemoveNodeOp
  | HostEffectOp;

export interface EventPayload {
  event_type: string;
  key?: string | null;
  target_value?: string | null;
  checked?: boolean | null;
}

export interface ElementSnapshot {
  tag: string;
  attrs: Record<string, AttrValue>;
  children: Snapshot[];
}

export interface TextSnapshot {
  text: string;
}

export type Snapshot = ElementSnapshot | TextSnapshot;

/**
 * Sibling order under one parent: elementwise, numbers before strings,
 * numbers by value, strings lexicographically, shorter key first on a
 * shared prefix. Matches the engine's comparator exactly, which is what
 * keeps slot answers and static children interleaved identically.
 */
export function comparePositionKeys(a: PositionKey, b: PositionKey): number {
  const n = Math.min(a.length, b.length);
  for (let i = 0; i < n; i++) {
    const x = a[i]!;
    const y = b[i]!;
    const xNum = typeof x === "number";
    const yNum = typeof y === "number";
    if (xNum !== yNum) return xNum ? -1 : 1;
    if (xNum && yNum) {
      if (x !== y) return (x as number) - (y as number);
    } else if (x !== y) {
      return (x as string) < (y as string) ? -1 : 1;
    }
  }
  return a.length - b.length;
}

/** Split an ndjson op log into blank-line framed batches. */
export function parseOpLog(text: string): RenderOp[][] {
  return text
    .replace(/\n+$/, "")
    .split("\n\n")
    .map((block) => block.split("\n").map((line) => JSON.parse(line)));
}
