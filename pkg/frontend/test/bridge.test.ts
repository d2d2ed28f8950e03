/**
 * Drives the page against a real bridge server: spawn `rkanren serve` on
 * an ephemeral port, mount over HTTP, dispatch the recorded todomvc
 * events as real DOM events, and hold the DOM to the recorded snapshots
 * the whole way. This is the one test where the engine resolves node ids
 * we picked off live DOM targets, so it would catch id drift between the
 * renderer and the wire.
 */

import assert from "node:assert/strict";
import { ChildProcess, spawn } from "node:child_process";
import { fileURLToPath } from "node:url";
import { after, before, test } from "node:test";
import { boot } from "../src/app.js";
import { HttpEngine } from "../src/transport.js";
import {
  REPO_ROOT,
  fire,
  goldenStep,
  makePage,
  scenarioEvents,
} from "./helpers.js";

let server: ChildProcess;
let base: string;

before(async () => {
  server = spawn(
    "python3",
    ["-m", "rkanren.cli", "serve", "--port", "0"],
    {
      cwd: fileURLToPath(REPO_ROOT),
      env: { ...process.env, PYTHONUNBUFFERED: "1" },
      stdio: ["ignore", "pipe", "inherit"],
    },
  );
  base = await new Promise<string>((resolve, reject) => {
    let seen = "";
    const timer = setTimeout(
      () => reject(new Error(`server never came up: ${seen}`)),
      15000,
    );
    server.stdout!.on("data", (chunk: Buffer) => {
      seen += chunk.toString();
      const match = /serving on (http:\/\/[\d.]+:\d+)\//.exec(seen);
      if (match) {
        clearTimeout(timer);
        resolve(match[1]!);
      }
    });
    server.on("error", reject);
    server.on("exit", (code) =>
      reject(new Error(`server exited early with ${code}: ${seen}`)),
    );
  });
});

after(() => {
  server.kill();
});

test("the static bundle is served at the root", async () => {
  const response = await fetch(`${base}/`);
  assert.equal(response.status, 200);
  const html = await response.text();
  assert.match(html, /<div id="root">/);
  assert.match(response.headers.get("content-type") ?? "", /text\/html/);
});

test("a live session replays the todomvc scenario over HTTP", async () => {
  const page = makePage();
  const engine = new HttpEngine(base);
  const app = await boot(page.container, engine, { devPanel: page.devPanel });
  assert.deepEqual(app.binding.exportSnapshot(), goldenStep("todomvc", 0));

  for (const [i, event] of scenarioEvents("todomvc").entries()) {
    fire(page, event);
    await app.flush();
    assert.deepEqual(
      app.binding.exportSnapshot(),
      goldenStep("todomvc", i + 1),
      `snapshot mismatch after event ${i}`,
    );
    assert.equal(page.devPanel.textContent, "", `event ${i} was rejected`);
  }

  // engine-side snapshot and DOM-side export agree at the end
  assert.deepEqual(await engine.snapshot(), app.binding.exportSnapshot());
});

test("a rejected event surfaces in the dev panel over HTTP too", async () => {
  const page = makePage();
  const app = await boot(page.container, new HttpEngine(base), {
    devPanel: page.devPanel,
  });
  // nothing is completed yet, so clear-completed has no answer to move to
  const before = page.container.innerHTML;
  fire(page, { on: ".clear-completed", type: "click" });
  await app.flush();
  assert.equal(page.container.innerHTML, before);
  assert.match(page.devPanel.textContent ?? "", /no-answers/);
});
