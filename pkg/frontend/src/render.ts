/**
 * String renderers for the diagram. Rendering to plain strings keeps the
 * component testable in node; the browser shell drops them into a <pre>.
 */
import { applyColorScheme, type Scheme } from "./colors.js";
import type { ClassView, CoupleView, ViewModel } from "./viewmodel.js";

export const FROZEN_MARKER = "❄"; // ice marker on frozen classes

/** Line weight buckets for coupling thickness in (0, 1]. */
export function strokeFor(thickness: number): string {
  if (thickness > 0.75) return "====";
  if (thickness > 0.4) return "---";
  return "··"; // faint
}

export function renderClassBox(cls: ClassView, scheme: Scheme): string {
  const color = applyColorScheme(cls.tier, scheme);
  const title = `${cls.name}${cls.frozen ? " " + FROZEN_MARKER : ""} [${color}]`;
  const width = Math.max(title.length, ...cls.members.map((m) => m.length), 4) + 2;
  const bar = "+" + "-".repeat(width) + "+";
  const pad = (s: string) => "| " + s + " ".repeat(width - s.length - 1) + "|";
  const body = cls.members.length ? cls.members.map(pad) : [pad("(empty)")];
  return [bar, pad(title), bar, ...body, bar].join("\n");
}

export function renderCouple(c: CoupleView): string {
  return `C${c.fromClass} ${strokeFor(c.thickness)}> C${c.toClass} (${c.strength})`;
}

export function renderDiagram(vm: ViewModel, scheme: Scheme): string {
  if (vm.kind === "error") {
    return `! ${vm.message}\n(controls disabled until a valid snapshot arrives)`;
  }
  const head =
    `iteration ${vm.iteration}  status ${vm.status}  ` +
    `awaiting ${vm.awaiting ? "yes" : "no"}  ` +
    `best ${vm.bestQuality === null ? "-" : vm.bestQuality.toFixed(4)}`;
  const weights =
    `weights cbo=${vm.weights.cbo.toFixed(3)} ` +
    `nac=${vm.weights.nac.toFixed(3)} atmr=${vm.weights.atmr.toFixed(3)}`;
  const boxes = vm.classes.map((c) => renderClassBox(c, scheme));
  const couples = vm.couples.length
    ? ["couples:", ...vm.couples.map(renderCouple)]
    : ["couples: none"];
  const metrics = vm.metrics
    ? `metrics cbo=${vm.metrics.cbo.toFixed(4)} nac=${vm.metrics.nac.toFixed(4)} atmr=${vm.metrics.atmr.toFixed(4)}`
    : "metrics -";
  return [head, weights, metrics, "", ...boxes, "", ...couples].join("\n");
}
