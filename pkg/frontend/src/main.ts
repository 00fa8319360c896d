/**
 * Browser shell: creates a session against the local service and wires the
 * controls. All rendering goes through the pure string renderers.
 */
import { SessionClient } from "./api.js";
import { DEFAULT_SCHEME, type Scheme } from "./colors.js";
import { renderComparison } from "./compare.js";
import { SessionDriver } from "./driver.js";
import { renderDiagram } from "./render.js";
import { renderSparkline } from "./sparkline.js";
import { controlsState, ratingFromInput, type ViewModel } from "./viewmodel.js";

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el as T;
};

async function start(): Promise<void> {
  const base = (document.body.dataset.api ?? "http://127.0.0.1:8000").replace(/\/$/, "");
  const client = new SessionClient(base);
  let scheme: Scheme = DEFAULT_SCHEME;
  let latest: ViewModel | null = null;

  const created = await client.createSession({
    generate: { attributes: 16, methods: 15, uses: 39, classCount: 5 },
    seed: Math.floor(Math.random() * 1e6),
  });
  $("run").textContent = created.runId;

  const driver = new SessionDriver(client, created.sessionId, (vm, curve) => {
    latest = vm;
    $("diagram").textContent = renderDiagram(vm, scheme);
    $("spark").textContent = renderSparkline(curve);
    const controls = controlsState(vm);
    ($("rate") as HTMLButtonElement).disabled = !controls.rate;
    ($("freeze") as HTMLButtonElement).disabled = !controls.freeze;
    ($("unfreeze") as HTMLButtonElement).disabled = !controls.unfreeze;
    ($("archive") as HTMLButtonElement).disabled = !controls.archive;
    ($("halt") as HTMLButtonElement).disabled = !controls.halt;
  });

  $("scheme").addEventListener("change", (e) => {
    scheme = (e.target as HTMLSelectElement).value as Scheme;
    void driver.poll();
  });

  $("rate").addEventListener("click", () => {
    const awaiting = latest?.kind === "view" && latest.awaiting;
    const rating = ratingFromInput(($("rating") as HTMLInputElement).value, !!awaiting);
    if (rating !== null) void driver.submit({ action: "rate", rating });
  });
  $("freeze").addEventListener("click", () => {
    const idx = Number(($("classIndex") as HTMLInputElement).value);
    if (Number.isInteger(idx)) void driver.submit({ action: "freeze", classIndex: idx });
  });
  $("unfreeze").addEventListener("click", () => {
    const idx = Number(($("classIndex") as HTMLInputElement).value);
    if (Number.isInteger(idx)) void driver.submit({ action: "unfreeze", classIndex: idx });
  });
  $("archive").addEventListener("click", () => void driver.submit({ action: "archive" }));
  $("halt").addEventListener("click", () => void driver.submit({ action: "halt" }));

  $("compare").addEventListener("click", async () => {
    const archive = await client.archive(created.sessionId);
    const [a, b] = archive.entries.slice(-2);
    $("comparison").textContent =
      a && b ? renderComparison(a, b) : "archive two candidates to compare";
  });

  await driver.advance();
  setInterval(() => void driver.poll(), 1500);
}

void start();
