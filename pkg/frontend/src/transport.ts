/**
 * The message boundary between the renderer and the engine. The page
 * talks to the bridge server over HTTP, but anything that can produce
 * op batches for event payloads satisfies Engine; tests use a stub fed
 * from recorded op logs.
 */

import { EventPayload, RenderOp } from "./protocol.js";

export interface Engine {
  mount(template?: string): Promise<RenderOp[]>;
  send(nodeId: number, payload: EventPayload): Promise<RenderOp[]>;
}

export class EngineError extends Error {
  constructor(
    readonly kind: string,
    message: string,
  ) {
    super(message);
  }
}

interface ErrorBody {
  error: { kind: string; message: string };
}

export class HttpEngine implements Engine {
  private session: string | null = null;

  constructor(private readonly base: string = "") {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await fetch(this.base + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    const data = (await response.json()) as T | ErrorBody;
    if (!response.ok) {
      const err = (data as ErrorBody).error ?? {
        kind: "http",
        message: `status ${response.status}`,
      };
      throw new EngineError(err.kind, err.message);
    }
    return data as T;
  }

  async mount(template = "todomvc"): Promise<RenderOp[]> {
    const data = await this.post<{ session: string; ops: RenderOp[] }>(
      "/api/session",
      { template },
    );
    this.session = data.session;
    return data.ops;
  }

  async send(nodeId: number, payload: EventPayload): Promise<RenderOp[]> {
    if (this.session === null) {
      throw new EngineError("no-session", "mount before sending events");
    }
    const data = await this.post<{ ops: RenderOp[] }>("/api/event", {
      session: this.session,
      node_id: nodeId,
      ...payload,
    });
    return data.ops;
  }

  async snapshot(): Promise<unknown> {
    const response = await fetch(
      `${this.base}/api/snapshot?session=${this.session}`,
    );
    const data = (await response.json()) as { snapshot: unknown };
    return data.snapshot;
  }
}
