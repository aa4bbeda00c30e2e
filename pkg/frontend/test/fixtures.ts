import { CSV_HEADER } from "../src/csv.js";

export const MODELS = ["gat", "gcn"];
export const DENSITIES = ["dense", "sparse"];
export const MODES = ["none", "rescaled", "simple"];
export const SIZES = [25, 50, 110, 240, 500, 1100, 2000];

/** Synthetic results CSV covering the given cases; 3 classes per (case, n). */
export function makeCsv(
  cases: [string, string, string][],
  opts: { mean?: (cls: number, n: number) => number; std?: (cls: number, n: number) => number } = {},
): string {
  const mean = opts.mean ?? ((cls, n) => 1 / 3 + (cls - 1) * 0.1 * (1 - n / 4000));
  const std = opts.std ?? ((_cls, n) => 0.2 * Math.sqrt(25 / n));
  const lines = [CSV_HEADER];
  for (const [model, density, mode] of cases) {
    for (const n of SIZES) {
      for (let cls = 0; cls < 3; cls++) {
        lines.push(
          `${model},${density},${mode},${n},${cls},${mean(cls, n)},${std(cls, n)},30`,
        );
      }
    }
  }
  return lines.join("\n") + "\n";
}

export function allCases(): [string, string, string][] {
  const cases: [string, string, string][] = [];
  for (const model of MODELS)
    for (const density of DENSITIES)
      for (const mode of MODES) cases.push([model, density, mode]);
  return cases;
}
