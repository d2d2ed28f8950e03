/**
 * Shared plumbing for the frontend tests: load the recorded op logs and
 * step snapshots from the repository, stand up a happy-dom page, and
 * resolve the selector shorthand scenario files use onto live elements.
 */

import { readFileSync } from "node:fs";
import { Window } from "happy-dom";
import { RenderOp, Snapshot, parseOpLog } from "../src/protocol.js";

export const REPO_ROOT = new URL("../../../", import.meta.url);

export function goldenBatches(name: string): RenderOp[][] {
  const url = new URL(`scenarios/golden/${name}/ops.ndjson`, REPO_ROOT);
  return parseOpLog(readFileSync(url, "utf8"));
}

export function goldenStep(name: string, step: number): Snapshot | Snapshot[] {
  const file = `step-${String(step).padStart(2, "0")}.json`;
  const url = new URL(`scenarios/golden/${name}/${file}`, REPO_ROOT);
  return JSON.parse(readFileSync(url, "utf8"));
}

export interface ScenarioEvent {
  on: string;
  type: string;
  key?: string;
  value?: string;
  checked?: boolean;
}

export function scenarioEvents(name: string): ScenarioEvent[] {
  const url = new URL(`scenarios/${name}.json`, REPO_ROOT);
  return JSON.parse(readFileSync(url, "utf8")).events;
}

export interface Page {
  window: Window;
  document: Document;
  container: Element;
  devPanel: Element;
}

export function makePage(): Page {
  const window = new Window({
    url: "http://localhost/",
    settings: { navigation: { disableMainFrameNavigation: true } },
  });
  const document = window.document;
  document.body.innerHTML = '<div id="root"></div><pre id="dev-panel"></pre>';
  return {
    window,
    document: document as unknown as Document,
    container: document.getElementById("root") as unknown as Element,
    devPanel: document.getElementById("dev-panel") as unknown as Element,
  };
}

/**
 * Find the element a scenario event targets. Scenario selectors are a
 * CSS subset plus a ":nth(i)" suffix for picking one of several matches;
 * attribute values arrive unquoted.
 */
export function target(container: Element, selector: string): Element {
  const match = /^(.*?)(?::nth\((\d+)\))?$/.exec(selector);
  if (!match || !match[1]) throw new Error(`bad selector ${selector}`);
  const css = match[1].replace(/\[([-\w]+)=([^\]]*)\]/g, '[$1="$2"]');
  const found = Array.from(container.querySelectorAll(css));
  if (match[2] === undefined && found.length > 1) {
    throw new Error(`ambiguous selector ${selector}`);
  }
  const el = found[match[2] === undefined ? 0 : Number(match[2])];
  if (!el) throw new Error(`no element for ${selector}`);
  return el;
}

/** Dispatch the DOM event a scenario event describes on its target. */
export function fire(page: Page, event: ScenarioEvent): void {
  const el = target(page.container, event.on) as unknown as HTMLInputElement;
  if (event.value !== undefined) el.value = event.value;
  if (event.checked !== undefined) el.checked = event.checked;
  const win = page.window;
  let domEvent;
  if (event.type === "keydown") {
    domEvent = new win.KeyboardEvent("keydown", {
      key: event.key,
      bubbles: true,
      cancelable: true,
    });
  } else if (event.type === "click" || event.type === "dblclick") {
    domEvent = new win.MouseEvent(event.type, {
      bubbles: true,
      cancelable: true,
    });
  } else {
    // input and blur; blur does not bubble but still capture-propagates
    domEvent = new win.Event(event.type, {
      bubbles: event.type !== "blur",
      cancelable: false,
    });
  }
  el.dispatchEvent(domEvent as unknown as Event);
}
