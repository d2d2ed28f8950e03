import assert from "node:assert/strict";
import { test } from "node:test";
import { App, boot, payloadFor } from "../src/app.js";
import { EventPayload, RenderOp } from "../src/protocol.js";
import { Engine, EngineError } from "../src/transport.js";
import {
  Page,
  fire,
  goldenBatches,
  goldenStep,
  makePage,
  scenarioEvents,
  target,
} from "./helpers.js";

/** Replays a recorded batch list, recording what the app sends. */
class ScriptedEngine implements Engine {
  received: Array<{ nodeId: number; payload: EventPayload }> = [];
  private step = 0;

  constructor(private readonly batches: RenderOp[][]) {}

  async mount(): Promise<RenderOp[]> {
    this.step = 1;
    return this.batches[0]!;
  }

  async send(nodeId: number, payload: EventPayload): Promise<RenderOp[]> {
    this.received.push({ nodeId, payload });
    const batch = this.batches[this.step++];
    assert.ok(batch, "engine script ran out of batches");
    return batch;
  }
}

async function bootTodomvc(page: Page): Promise<{
  app: App;
  engine: ScriptedEngine;
}> {
  const engine = new ScriptedEngine(goldenBatches("todomvc"));
  const app = await boot(page.container, engine, {
    devPanel: page.devPanel,
  });
  return { app, engine };
}

test("real DOM events replay the recorded todomvc session", async () => {
  const page = makePage();
  const { app, engine } = await bootTodomvc(page);
  assert.deepEqual(app.binding.exportSnapshot(), goldenStep("todomvc", 0));

  const events = scenarioEvents("todomvc");
  assert.equal(events.length, 12);
  for (const [i, event] of events.entries()) {
    fire(page, event);
    await app.flush();
    assert.deepEqual(
      app.binding.exportSnapshot(),
      goldenStep("todomvc", i + 1),
      `snapshot mismatch after event ${i}`,
    );
  }

  // what went over the wire is exactly the scenario's payloads
  assert.deepEqual(
    engine.received.map((r) => r.payload),
    events.map((e) => ({
      event_type: e.type,
      key: e.key ?? null,
      target_value: e.value ?? null,
      checked: e.checked ?? null,
    })),
  );
});

test("focused new-todo input survives adds and a toggle", async () => {
  const page = makePage();
  const { app } = await bootTodomvc(page);
  const input = target(page.container, ".new-todo") as HTMLInputElement;
  input.focus();
  assert.equal(page.document.activeElement, input);

  const events = scenarioEvents("todomvc").slice(0, 4);
  for (const event of events) {
    fire(page, event);
    await app.flush();
    // updates so far never remove the header input: same node, still focused
    assert.equal(target(page.container, ".new-todo"), input);
    assert.equal(page.document.activeElement, input);
  }
  // the engine's clear_value effect emptied the field without a remount
  assert.equal(input.value, "");
});

test("events on untracked nodes are not forwarded", async () => {
  const page = makePage();
  const { engine } = await bootTodomvc(page);
  page.container.dispatchEvent(
    new page.window.MouseEvent("click", { bubbles: true }) as unknown as Event,
  );
  await new Promise((resolve) => setImmediate(resolve));
  assert.equal(engine.received.length, 0);
});

test("an engine rejection lands in the dev panel and leaves the DOM alone", async () => {
  const page = makePage();
  const engine: Engine = {
    async mount() {
      return [
        {
          op: "create_element",
          node_id: 1,
          tag: "button",
          parent_id: null,
          position_key: [0],
        } as RenderOp,
      ];
    },
    async send() {
      throw new EngineError("no-answers", "the model rejects this event");
    },
  };
  const app = await boot(page.container, engine, { devPanel: page.devPanel });
  const before = page.container.innerHTML;
  target(page.container, "button").dispatchEvent(
    new page.window.MouseEvent("click", { bubbles: true }) as unknown as Event,
  );
  await app.flush();
  assert.equal(page.container.innerHTML, before);
  assert.equal(
    page.devPanel.textContent,
    "no-answers: the model rejects this event",
  );
});

test("a successful event clears the dev panel again", async () => {
  const page = makePage();
  let fail = true;
  const engine: Engine = {
    async mount() {
      return [
        {
          op: "create_element",
          node_id: 1,
          tag: "button",
          parent_id: null,
          position_key: [0],
        } as RenderOp,
      ];
    },
    async send() {
      if (fail) throw new EngineError("no-answers", "nope");
      return [];
    },
  };
  const app = await boot(page.container, engine, { devPanel: page.devPanel });
  const button = target(page.container, "button");
  const click = () =>
    button.dispatchEvent(
      new page.window.MouseEvent("click", {
        bubbles: true,
      }) as unknown as Event,
    );
  click();
  await app.flush();
  assert.equal(page.devPanel.textContent, "no-answers: nope");
  fail = false;
  click();
  await app.flush();
  assert.equal(page.devPanel.textContent, "");
});

test("events are forwarded one at a time, in order", async () => {
  const page = makePage();
  let issued = 0;
  const gates: Array<(ops: RenderOp[]) => void> = [];
  const engine: Engine = {
    async mount() {
      return [
        {
          op: "create_element",
          node_id: 1,
          tag: "button",
          parent_id: null,
          position_key: [0],
        },
        {
          op: "create_text",
          node_id: 2,
          text: "0",
          parent_id: 1,
          position_key: [0],
        },
      ] as RenderOp[];
    },
    send() {
      issued += 1;
      return new Promise<RenderOp[]>((resolve) => gates.push(resolve));
    },
  };
  const app = await boot(page.container, engine);
  const button = target(page.container, "button");
  const click = () =>
    button.dispatchEvent(
      new page.window.MouseEvent("click", {
        bubbles: true,
      }) as unknown as Event,
    );
  const hop = () => new Promise((resolve) => setImmediate(resolve));

  click();
  click();
  await hop();
  // the second event waits for the first reply before it is even sent
  assert.equal(issued, 1);
  gates[0]!([{ op: "set_text", node_id: 2, text: "first" }]);
  await hop();
  assert.equal(button.textContent, "first");
  assert.equal(issued, 2);
  gates[1]!([{ op: "set_text", node_id: 2, text: "second" }]);
  await app.flush();
  assert.equal(button.textContent, "second");
});

test("payloads carry values for fields, checked for checkboxes only", async () => {
  const page = makePage();
  page.container.innerHTML =
    '<input class="text"><input type="checkbox" class="box"><button>go</button>';
  const text = page.container.querySelector(".text") as HTMLInputElement;
  text.value = "hello";
  let payload: EventPayload | null = null;
  text.addEventListener("input", (ev) => {
    payload = payloadFor(ev as unknown as Event);
  });
  text.dispatchEvent(new page.window.Event("input", { bubbles: true }) as unknown as Event);
  assert.deepEqual(payload, {
    event_type: "input",
    key: null,
    target_value: "hello",
    checked: null,
  });

  const box = page.container.querySelector(".box") as HTMLInputElement;
  box.checked = true;
  box.addEventListener("input", (ev) => {
    payload = payloadFor(ev as unknown as Event);
  });
  box.dispatchEvent(new page.window.Event("input", { bubbles: true }) as unknown as Event);
  // a checkbox's .value is the meaningless default "on"; only checked goes
  assert.deepEqual(payload, {
    event_type: "input",
    key: null,
    target_value: null,
    checked: true,
  });

  const button = page.container.querySelector("button") as HTMLButtonElement;
  button.addEventListener("click", (ev) => {
    payload = payloadFor(ev as unknown as Event);
  });
  button.dispatchEvent(
    new page.window.MouseEvent("click", { bubbles: true }) as unknown as Event,
  );
  assert.deepEqual(payload, {
    event_type: "click",
    key: null,
    target_value: null,
    checked: null,
  });
});
