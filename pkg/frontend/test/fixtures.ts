import type { Snapshot } from "../src/schema.js";

export function snapshot(overrides: Partial<Snapshot> = {}): Snapshot {
  return {
    schema: 1,
    sessionId: "s-1",
    runId: "demo-s1-abcd1234",
    problemName: "demo",
    status: "running",
    iteration: 15,
    awaiting: true,
    weights: { cbo: 0.34, nac: 0.33, atmr: 0.33 },
    bestQuality: 0.61,
    candidate: {
      classes: [
        { index: 0, members: ["balance", "deposit()"], cohesionTier: "high", frozen: false },
        { index: 1, members: ["owner", "rename()"], cohesionTier: "low", frozen: true },
        { index: 2, members: [], cohesionTier: "low", frozen: false },
      ],
      couples: [
        { fromClass: 0, toClass: 1, strength: 1 },
        { fromClass: 1, toClass: 0, strength: 4 },
      ],
      metrics: { cbo: 0.5, nac: 0.25, atmr: 0.1 },
    },
    interactionCount: 0,
    archiveSize: 0,
    ...overrides,
  };
}
