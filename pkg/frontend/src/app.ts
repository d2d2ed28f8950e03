/**
 * Wires a DomBinding to an Engine: real user events become EventPayloads,
 * returned op batches mutate the DOM. Events are forwarded one at a time
 * (strictly in order); an engine rejection leaves the DOM untouched and
 * surfaces in the dev panel instead.
 */

import { EventPayload } from "./protocol.js";
import { DomBinding } from "./renderer.js";
import { Engine, EngineError } from "./transport.js";

const FORWARDED_EVENTS = ["click", "dblclick", "input", "keydown", "blur"];

export interface AppOptions {
  devPanel?: Element | null;
  template?: string;
}

export class App {
  readonly binding: DomBinding;
  private queue: Promise<void> = Promise.resolve();

  constructor(
    container: Element,
    private readonly engine: Engine,
    private readonly options: AppOptions = {},
  ) {
    this.binding = new DomBinding(container);
    for (const type of FORWARDED_EVENTS) {
      container.addEventListener(type, (ev) => this.enqueue(ev), true);
    }
  }

  async start(): Promise<void> {
    const ops = await this.engine.mount(this.options.template);
    this.binding.applyOps(ops);
  }

  /** Settles after every event forwarded so far has been applied. */
  flush(): Promise<void> {
    return this.queue;
  }

  private enqueue(ev: Event): void {
    const nodeId = this.binding.idOf(ev.target as Node);
    if (nodeId === null) return;
    const payload = payloadFor(ev);
    this.queue = this.queue.then(() => this.forward(nodeId, payload));
  }

  private async forward(nodeId: number, payload: EventPayload): Promise<void> {
    try {
      const ops = await this.engine.send(nodeId, payload);
      this.binding.applyOps(ops);
      this.report("");
    } catch (err) {
      if (err instanceof EngineError) {
        this.report(`${err.kind}: ${err.message}`);
      } else {
        this.report(String(err));
      }
    }
  }

  private report(message: string): void {
    const panel = this.options.devPanel;
    if (panel) panel.textContent = message;
  }
}

const VALUE_TAGS = new Set(["INPUT", "TEXTAREA", "SELECT"]);

export function payloadFor(ev: Event): EventPayload {
  const target = ev.target as HTMLInputElement | null;
  const isCheckbox =
    target !== null && target.tagName === "INPUT" &&
    target.getAttribute("type") === "checkbox";
  const hasValue =
    target !== null && VALUE_TAGS.has(target.tagName) && !isCheckbox;
  return {
    event_type: ev.type,
    key: (ev as KeyboardEvent).key ?? null,
    target_value: hasValue ? target.value : null,
    checked: isCheckbox ? target.checked : null,
  };
}

export async function boot(
  container: Element,
  engine: Engine,
  options: AppOptions = {},
): Promise<App> {
  const app = new App(container, engine, options);
  await app.start();
  return app;
}
