export { SessionClient, ApiError } from "./api.js";
export type { FetchLike, GenerateSpec, CreateSessionOptions } from "./api.js";
export { applyColorScheme, DEFAULT_SCHEME } from "./colors.js";
export type { Tier, Scheme } from "./colors.js";
export { renderComparison } from "./compare.js";
export { SessionDriver } from "./driver.js";
export { renderClassBox, renderCouple, renderDiagram, strokeFor, FROZEN_MARKER } from "./render.js";
export { renderSparkline } from "./sparkline.js";
export * from "./schema.js";
export {
  clampRating,
  controlsState,
  fromSnapshot,
  ratingFromInput,
  snapshotToViewModel,
} from "./viewmodel.js";
export type {
  ClassView,
  ControlsState,
  CoupleView,
  DiagramViewModel,
  ErrorViewModel,
  ViewModel,
} from "./viewmodel.js";
