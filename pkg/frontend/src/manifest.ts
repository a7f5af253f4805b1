/**
 * Flat key=value manifest describing one plot.
 *
 *   kind   = trace | curve | contour
 *   input  = path[,path...]     (relative paths resolve against the manifest)
 *   out    = output base path   (writes <out>.svg and <out>.png)
 *   labels = one label per input (curve/trace legends)
 *   styles = solid|dashed per input (curve only)
 *   title, x_label, y_label, width, height, levels  (optional)
 */

import * as path from "node:path";

export type PlotKind = "trace" | "curve" | "contour";

export interface PlotManifest {
  kind: PlotKind;
  inputs: string[];
  out: string;
  labels: string[];
  styles: string[];
  title: string;
  xLabel: string;
  yLabel: string;
  width: number;
  height: number;
  levels: number[];
}

export class ManifestError extends Error {}

const KINDS: PlotKind[] = ["trace", "curve", "contour"];

export function parseManifest(text: string, manifestPath: string): PlotManifest {
  const raw: Record<string, string> = {};
  text.split("\n").forEach((line, idx) => {
    const body = line.split("#", 1)[0].trim();
    if (body === "") return;
    const eq = body.indexOf("=");
    if (eq < 0) throw new ManifestError(`line ${idx + 1}: expected key=value`);
    raw[body.slice(0, eq).trim().replace(/-/g, "_")] = body.slice(eq + 1).trim();
  });

  const kind = raw.kind as PlotKind;
  if (!KINDS.includes(kind)) {
    throw new ManifestError(`kind must be one of ${KINDS.join(", ")}, got '${raw.kind}'`);
  }
  if (!raw.input) throw new ManifestError("manifest needs input=");
  if (!raw.out) throw new ManifestError("manifest needs out=");
  const base = path.dirname(manifestPath);
  const inputs = raw.input.split(",").map((p) => path.resolve(base, p.trim()));
  if (kind === "contour" && inputs.length !== 1) {
    throw new ManifestError("contour plots take exactly one input");
  }
  const labels = raw.labels ? raw.labels.split(",").map((s) => s.trim()) : inputs.map(
    (p) => path.basename(p, ".csv"),
  );
  const styles = raw.styles ? raw.styles.split(",").map((s) => s.trim()) : inputs.map(
    () => "solid",
  );
  if (labels.length !== inputs.length || styles.length !== inputs.length) {
    throw new ManifestError("labels/styles must match the number of inputs");
  }
  for (const s of styles) {
    if (s !== "solid" && s !== "dashed") {
      throw new ManifestError(`style must be solid or dashed, got '${s}'`);
    }
  }
  const levels = raw.levels
    ? raw.levels.split(",").map((s) => {
        const v = Number(s);
        if (!Number.isFinite(v)) throw new ManifestError(`bad contour level '${s}'`);
        return v;
      })
    : [0.99, 0.999];
  return {
    kind,
    inputs,
    out: path.resolve(base, raw.out),
    labels,
    styles,
    title: raw.title ?? "",
    xLabel: raw.x_label ?? "",
    yLabel: raw.y_label ?? "",
    width: raw.width ? Number(raw.width) : 880,
    height: raw.height ? Number(raw.height) : 620,
    levels,
  };
}
