/**
 * Pure mapping from a service snapshot to what the diagram renders.
 * No search state lives here: the view is a function of the latest
 * snapshot plus the local color-scheme preference.
 */
import { snapshotSchema, type Snapshot, type Metrics, type Weights } from "./schema.js";
import type { Tier } from "./colors.js";

export interface ClassView {
  name: string;
  members: string[];
  tier: Tier;
  frozen: boolean;
}

export interface CoupleView {
  fromClass: number;
  toClass: number;
  strength: number;
  /** strength / max strength in this snapshot, in (0, 1] */
  thickness: number;
}

export interface DiagramViewModel {
  kind: "view";
  classes: ClassView[];
  couples: CoupleView[];
  metrics: Metrics | null;
  weights: Weights;
  iteration: number;
  awaiting: boolean;
  status: "running" | "halted";
  bestQuality: number | null;
  interactionCount: number;
  archiveSize: number;
}

export interface ErrorViewModel {
  kind: "error";
  message: string;
}

export type ViewModel = DiagramViewModel | ErrorViewModel;

/**
 * Validate and project a raw snapshot payload. Malformed payloads come back
 * as an error view for the shell to render; nothing throws.
 */
export function snapshotToViewModel(payload: unknown): ViewModel {
  const parsed = snapshotSchema.safeParse(payload);
  if (!parsed.success) {
    return { kind: "error", message: `bad snapshot: ${parsed.error.issues[0]?.message ?? "invalid"}` };
  }
  return fromSnapshot(parsed.data);
}

export function fromSnapshot(snapshot: Snapshot): DiagramViewModel {
  const candidate = snapshot.candidate;
  const classes: ClassView[] = (candidate?.classes ?? []).map((c) => ({
    name: `C${c.index}`,
    members: c.members,
    tier: c.cohesionTier,
    frozen: c.frozen,
  }));

  const positive = (candidate?.couples ?? []).filter((c) => c.strength > 0);
  const max = positive.reduce((m, c) => Math.max(m, c.strength), 0);
  const couples: CoupleView[] = positive.map((c) => ({
    ...c,
    thickness: c.strength / max,
  }));

  return {
    kind: "view",
    classes,
    couples,
    metrics: candidate?.metrics ?? null,
    weights: snapshot.weights,
    iteration: snapshot.iteration,
    awaiting: snapshot.awaiting,
    status: snapshot.status,
    bestQuality: snapshot.bestQuality,
    interactionCount: snapshot.interactionCount,
    archiveSize: snapshot.archiveSize,
  };
}

/** Round and clamp into the 1-100 rating range. */
export function clampRating(raw: number): number {
  return Math.min(100, Math.max(1, Math.round(raw)));
}

/**
 * What the rating control emits for a text input: an integer in [1,100]
 * while an interaction is awaited, otherwise null. Non-numeric input is
 * swallowed as null.
 */
export function ratingFromInput(text: string, awaiting: boolean): number | null {
  if (!awaiting) return null;
  const value = Number(text.trim());
  if (!Number.isFinite(value) || text.trim() === "") return null;
  return clampRating(value);
}

export interface ControlsState {
  rate: boolean;
  freeze: boolean;
  unfreeze: boolean;
  archive: boolean;
  halt: boolean;
}

/** Every steering control follows the awaiting flag; nothing else gates them. */
export function controlsState(vm: ViewModel): ControlsState {
  const enabled = vm.kind === "view" && vm.awaiting;
  return { rate: enabled, freeze: enabled, unfreeze: enabled, archive: enabled, halt: enabled };
}
