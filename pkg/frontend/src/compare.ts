/** Side-by-side comparison of two archived candidates. */
import type { ArchiveEntry } from "./schema.js";

function column(entry: ArchiveEntry): string[] {
  const lines = [
    `iteration ${entry.iteration}`,
    `cbo ${entry.metrics.cbo.toFixed(4)}  nac ${entry.metrics.nac.toFixed(4)}  atmr ${entry.metrics.atmr.toFixed(4)}`,
  ];
  entry.classes.forEach((members, i) => {
    lines.push(`C${i}: ${members.length ? members.join(", ") : "(empty)"}`);
  });
  return lines;
}

export function renderComparison(left: ArchiveEntry, right: ArchiveEntry): string {
  const a = column(left);
  const b = column(right);
  const width = Math.max(...a.map((l) => l.length), 10) + 3;
  const rows = Math.max(a.length, b.length);
  const out: string[] = [];
  for (let i = 0; i < rows; i++) {
    const l = a[i] ?? "";
    const r = b[i] ?? "";
    out.push(l + " ".repeat(width - l.length) + "| " + r);
  }
  return out.join("\n");
}
