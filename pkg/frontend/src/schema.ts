/**
 * Wire types for the session service, mirrored from the JSON Schemas the
 * backend ships. Everything arriving over the network is validated here
 * before it reaches view code.
 */
import { z } from "zod";

export const weightsSchema = z.object({
  cbo: z.number(),
  nac: z.number(),
  atmr: z.number(),
});

export const metricsSchema = z.object({
  cbo: z.number(),
  nac: z.number(),
  atmr: z.number(),
});

export const candidateClassSchema = z.object({
  index: z.number().int().nonnegative(),
  members: z.array(z.string()),
  cohesionTier: z.enum(["high", "intermediate", "low"]),
  frozen: z.boolean(),
});

export const coupleSchema = z.object({
  fromClass: z.number().int().nonnegative(),
  toClass: z.number().int().nonnegative(),
  strength: z.number().nonnegative(),
});

export const candidateSchema = z.object({
  classes: z.array(candidateClassSchema),
  couples: z.array(coupleSchema),
  metrics: metricsSchema,
});

export const snapshotSchema = z.object({
  schema: z.number().int(),
  sessionId: z.string(),
  runId: z.string(),
  problemName: z.string(),
  status: z.enum(["running", "halted"]),
  iteration: z.number().int().nonnegative(),
  awaiting: z.boolean(),
  weights: weightsSchema,
  bestQuality: z.number().nullable(),
  candidate: candidateSchema.nullable(),
  interactionCount: z.number().int().nonnegative(),
  archiveSize: z.number().int().nonnegative(),
});

export const archiveEntrySchema = z.object({
  iteration: z.number().int().nonnegative(),
  classes: z.array(z.array(z.string())),
  metrics: metricsSchema,
});

export const archiveSchema = z.object({
  schema: z.number().int(),
  entries: z.array(archiveEntrySchema),
});

export const createResponseSchema = z.object({
  schema: z.number().int(),
  sessionId: z.string(),
  runId: z.string(),
  problemName: z.string(),
  status: z.enum(["running", "halted"]),
});

export type Weights = z.infer<typeof weightsSchema>;
export type Metrics = z.infer<typeof metricsSchema>;
export type CandidateClass = z.infer<typeof candidateClassSchema>;
export type Couple = z.infer<typeof coupleSchema>;
export type Candidate = z.infer<typeof candidateSchema>;
export type Snapshot = z.infer<typeof snapshotSchema>;
export type ArchiveEntry = z.infer<typeof archiveEntrySchema>;
export type Archive = z.infer<typeof archiveSchema>;

export type InteractionAction = "rate" | "freeze" | "unfreeze" | "archive" | "halt";

export interface InteractionRequest {
  action: InteractionAction;
  rating?: number;
  classIndex?: number;
  members?: string[];
}
