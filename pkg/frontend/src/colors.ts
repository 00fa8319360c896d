/** Cohesion-tier color mapping for the two selectable palettes. */

export type Tier = "high" | "intermediate" | "low";
export type Scheme = "traffic-lights" | "water-tap";

/** Client-side preference only; cosmetic, so this is the default palette. */
export const DEFAULT_SCHEME: Scheme = "traffic-lights";

const PALETTES: Record<Scheme, Record<Tier, string>> = {
  // more cohesion = greener
  "traffic-lights": { high: "green", intermediate: "amber", low: "red" },
  // more cohesion = hotter
  "water-tap": { high: "red", intermediate: "amber", low: "blue" },
};

export function applyColorScheme(tier: Tier, scheme: Scheme): string {
  return PALETTES[scheme][tier];
}
