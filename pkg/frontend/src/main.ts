/** Browser entry point: boot the app against the local bridge server. */

import { boot } from "./app.js";
import { HttpEngine } from "./transport.js";

const root = document.getElementById("root");
const devPanel = document.getElementById("dev-panel");

if (root) {
  const engine = new HttpEngine("");
  boot(root, engine, { devPanel, template: "todomvc" })
    .then((app) => {
      // debug hook: compare the exported DOM snapshot with the engine's
      const w = window as unknown as Record<string, unknown>;
      w.__exportSnapshot = () => app.binding.exportSnapshot();
      w.__verifySnapshot = async () => {
        const engineSide = await engine.snapshot();
        const domSide = app.binding.exportSnapshot();
        const same = JSON.stringify(engineSide) === JSON.stringify(domSide);
        if (devPanel) {
          devPanel.textContent = same
            ? "snapshots agree"
            : "snapshot mismatch (see console)";
        }
        if (!same) console.error({ engineSide, domSide });
        return same;
      };
    })
    .catch((err) => {
      if (devPanel) devPanel.textContent = String(err);
    });
}
