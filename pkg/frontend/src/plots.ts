/**
 * Plot builders: trace, curve, contour.  Each consumes parsed CSV tables
 * plus the manifest and emits a Scene for the two render backends.
 */

import { SERIES_COLORS, rgbHex, viridis } from "./color";
import { Op, Scene } from "./display";
import { CsvSchemaError, CsvTable, axisValues, requireColumns } from "./csv";
import { PlotManifest } from "./manifest";

interface Frame {
  x0: number;
  y0: number; // top-left of the data area
  w: number;
  h: number;
  xMin: number;
  xMax: number;
  yMin: number;
  yMax: number;
}

function mapX(f: Frame, x: number): number {
  return f.x0 + ((x - f.xMin) / (f.xMax - f.xMin || 1)) * f.w;
}

function mapY(f: Frame, y: number): number {
  return f.y0 + f.h - ((y - f.yMin) / (f.yMax - f.yMin || 1)) * f.h;
}

function tickValues(lo: number, hi: number, n = 5): number[] {
  const ticks = [];
  for (let i = 0; i < n; i++) ticks.push(lo + ((hi - lo) * i) / (n - 1));
  return ticks;
}

function fmtTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 0.01 && a < 10000) {
    return String(Number(v.toPrecision(3)));
  }
  return v.toExponential(1);
}

function axes(f: Frame, title: string, xLabel: string, yLabel: string): Op[] {
  const ops: Op[] = [];
  const black = "#000000";
  ops.push({
    op: "polyline",
    points: [
      [f.x0, f.y0],
      [f.x0, f.y0 + f.h],
      [f.x0 + f.w, f.y0 + f.h],
      [f.x0 + f.w, f.y0],
      [f.x0, f.y0],
    ],
    color: black,
    width: 1,
  });
  for (const tx of tickValues(f.xMin, f.xMax)) {
    const px = mapX(f, tx);
    ops.push({ op: "polyline", points: [[px, f.y0 + f.h], [px, f.y0 + f.h + 5]], color: black, width: 1 });
    ops.push({
      op: "text", x: px, y: f.y0 + f.h + 20, text: fmtTick(tx),
      color: black, size: 12, anchor: "middle",
    });
  }
  for (const ty of tickValues(f.yMin, f.yMax)) {
    const py = mapY(f, ty);
    ops.push({ op: "polyline", points: [[f.x0 - 5, py], [f.x0, py]], color: black, width: 1 });
    ops.push({
      op: "text", x: f.x0 - 8, y: py + 4, text: fmtTick(ty),
      color: black, size: 12, anchor: "end",
    });
  }
  if (title) {
    ops.push({
      op: "text", x: f.x0 + f.w / 2, y: f.y0 - 12, text: title,
      color: black, size: 15, anchor: "middle",
    });
  }
  if (xLabel) {
    ops.push({
      op: "text", x: f.x0 + f.w / 2, y: f.y0 + f.h + 38, text: xLabel,
      color: black, size: 13, anchor: "middle",
    });
  }
  if (yLabel) {
    ops.push({
      op: "text", x: f.x0 - 48, y: f.y0 + f.h / 2, text: yLabel,
      color: black, size: 13, anchor: "middle", vertical: true,
    });
  }
  return ops;
}

function legend(f: Frame, entries: { label: string; color: string; dash?: [number, number] }[]): Op[] {
  const ops: Op[] = [];
  let y = f.y0 + 14;
  for (const entry of entries) {
    const x = f.x0 + f.w - 150;
    ops.push({
      op: "polyline",
      points: [[x, y], [x + 26, y]],
      color: entry.color,
      width: 2,
      dash: entry.dash,
    });
    ops.push({
      op: "text", x: x + 32, y: y + 4, text: entry.label,
      color: "#000000", size: 11, anchor: "start",
    });
    y += 16;
  }
  return ops;
}

function pad(lo: number, hi: number): [number, number] {
  if (lo === hi) return [lo - 1, hi + 1];
  const m = 0.04 * (hi - lo);
  return [lo - m, hi + m];
}

export function buildTrace(tables: CsvTable[], mf: PlotManifest): Scene {
  const ops: Op[] = [];
  const table = tables[0];
  requireColumns(table, ["t_us", "p0", "p1", "pe", "fidelity"], "trace input");
  const t = table.numbers.t_us;
  const f: Frame = {
    x0: 70, y0: 40, w: mf.width - 100, h: mf.height - 110,
    xMin: t[0], xMax: t[t.length - 1], yMin: -0.02, yMax: 1.02,
  };
  const series: [string, string, [number, number] | undefined][] = [
    ["fidelity", SERIES_COLORS[0], undefined],
    ["p0", SERIES_COLORS[1], [6, 4]],
    ["p1", SERIES_COLORS[2], [2, 3]],
    ["pe", SERIES_COLORS[3], undefined],
  ];
  // stage boundary marker at t = tau
  const tau = Number(table.meta.tau_us);
  if (Number.isFinite(tau) && tau > t[0] && tau < t[t.length - 1]) {
    ops.push({
      op: "polyline",
      points: [[mapX(f, tau), f.y0], [mapX(f, tau), f.y0 + f.h]],
      color: "#888888",
      width: 1,
      dash: [5, 4],
    });
  }
  for (const [col, color, dash] of series) {
    const pts: [number, number][] = t.map((tv, i) => [
      mapX(f, tv),
      mapY(f, table.numbers[col][i]),
    ]);
    ops.push({ op: "polyline", points: pts, color, width: 2, dash });
  }
  ops.push(...axes(f, mf.title, mf.xLabel || "t (us)", mf.yLabel || "population / fidelity"));
  ops.push(...legend(f, series.map(([col, color, dash]) => ({
    label: col, color, dash,
  }))));
  return { width: mf.width, height: mf.height, ops };
}

export function buildCurve(tables: CsvTable[], mf: PlotManifest): Scene {
  const ops: Op[] = [];
  const xCols: string[] = [];
  let yLo = Infinity;
  let yHi = -Infinity;
  let xLo = Infinity;
  let xHi = -Infinity;
  for (const table of tables) {
    requireColumns(table, ["fidelity_sim", "eps", "delta_mhz"], "curve input");
    const xCol = table.meta.kind === "delta" ? "delta_mhz" : "eps";
    xCols.push(xCol);
    const xs = table.numbers[xCol];
    const ys = table.numbers.fidelity_sim;
    xLo = Math.min(xLo, ...xs);
    xHi = Math.max(xHi, ...xs);
    yLo = Math.min(yLo, ...ys);
    yHi = Math.max(yHi, ...ys);
  }
  const [yMin, yMax] = pad(yLo, Math.max(yHi, 1.0));
  const f: Frame = {
    x0: 80, y0: 40, w: mf.width - 110, h: mf.height - 110,
    xMin: xLo, xMax: xHi, yMin, yMax,
  };
  const entries = [];
  for (let s = 0; s < tables.length; s++) {
    const table = tables[s];
    const xs = table.numbers[xCols[s]];
    const ys = table.numbers.fidelity_sim;
    const order = xs.map((_, i) => i).sort((a, b) => xs[a] - xs[b]);
    const color = SERIES_COLORS[s % SERIES_COLORS.length];
    const dash: [number, number] | undefined =
      mf.styles[s] === "dashed" ? [7, 5] : undefined;
    ops.push({
      op: "polyline",
      points: order.map((i) => [mapX(f, xs[i]), mapY(f, ys[i])]),
      color,
      width: 2,
      dash,
    });
    entries.push({ label: mf.labels[s], color, dash });
  }
  const xLabel = mf.xLabel || (xCols[0] === "eps" ? "rabi error fraction" : "detuning (MHz)");
  ops.push(...axes(f, mf.title, xLabel, mf.yLabel || "fidelity"));
  ops.push(...legend(f, entries));
  return { width: mf.width, height: mf.height, ops };
}

/** Marching-squares iso-lines of a grid field, in data coordinates. */
export function isoSegments(
  xs: number[], ys: number[], field: number[][], level: number,
): [number, number, number, number][] {
  const segs: [number, number, number, number][] = [];
  const lerp = (a: number, b: number, va: number, vb: number) =>
    a + ((level - va) / (vb - va || 1e-300)) * (b - a);
  for (let j = 0; j < ys.length - 1; j++) {
    for (let i = 0; i < xs.length - 1; i++) {
      const v00 = field[j][i];
      const v10 = field[j][i + 1];
      const v01 = field[j + 1][i];
      const v11 = field[j + 1][i + 1];
      const pts: [number, number][] = [];
      if (v00 < level !== v10 < level) {
        pts.push([lerp(xs[i], xs[i + 1], v00, v10), ys[j]]);
      }
      if (v01 < level !== v11 < level) {
        pts.push([lerp(xs[i], xs[i + 1], v01, v11), ys[j + 1]]);
      }
      if (v00 < level !== v01 < level) {
        pts.push([xs[i], lerp(ys[j], ys[j + 1], v00, v01)]);
      }
      if (v10 < level !== v11 < level) {
        pts.push([xs[i + 1], lerp(ys[j], ys[j + 1], v10, v11)]);
      }
      if (pts.length === 2) {
        segs.push([pts[0][0], pts[0][1], pts[1][0], pts[1][1]]);
      } else if (pts.length === 4) {
        segs.push([pts[0][0], pts[0][1], pts[2][0], pts[2][1]]);
        segs.push([pts[1][0], pts[1][1], pts[3][0], pts[3][1]]);
      }
    }
  }
  return segs;
}

export function buildContour(tables: CsvTable[], mf: PlotManifest): Scene {
  const table = tables[0];
  requireColumns(table, ["eps", "delta_mhz", "fidelity_sim"], "contour input");
  const xs = axisValues(table.numbers.eps);
  const ys = axisValues(table.numbers.delta_mhz);
  if (xs.length < 2 || ys.length < 2) {
    throw new CsvSchemaError("contour input must vary both eps and delta_mhz", 1);
  }
  if (xs.length * ys.length !== table.rowCount) {
    throw new CsvSchemaError(
      `grid expects ${xs.length}x${ys.length} rows, found ${table.rowCount}`, 1,
    );
  }
  const xIndex = new Map(xs.map((v, i) => [v, i]));
  const yIndex = new Map(ys.map((v, i) => [v, i]));
  const field: number[][] = ys.map(() => xs.map(() => NaN));
  let lo = Infinity;
  let hi = -Infinity;
  for (let r = 0; r < table.rowCount; r++) {
    const v = table.numbers.fidelity_sim[r];
    field[yIndex.get(table.numbers.delta_mhz[r])!][xIndex.get(table.numbers.eps[r])!] = v;
    lo = Math.min(lo, v);
    hi = Math.max(hi, v);
  }
  if (hi === lo) hi = lo + 1e-12;

  const ops: Op[] = [];
  const f: Frame = {
    x0: 80, y0: 40, w: mf.width - 190, h: mf.height - 110,
    xMin: xs[0], xMax: xs[xs.length - 1], yMin: ys[0], yMax: ys[ys.length - 1],
  };
  const cellW = f.w / xs.length;
  const cellH = f.h / ys.length;
  const colors: string[] = [];
  // rows top-down in device space = descending delta
  for (let j = ys.length - 1; j >= 0; j--) {
    for (let i = 0; i < xs.length; i++) {
      colors.push(rgbHex(viridis((field[j][i] - lo) / (hi - lo))));
    }
  }
  ops.push({
    op: "cells", x: f.x0, y: f.y0, cellW, cellH,
    cols: xs.length, rows: ys.length, colors,
  });
  for (const level of mf.levels) {
    for (const [ax, ay, bx, by] of isoSegments(xs, ys, field, level)) {
      ops.push({
        op: "polyline",
        points: [
          [mapX(f, ax) + cellW / 2, mapY(f, ay) - cellH / 2],
          [mapX(f, bx) + cellW / 2, mapY(f, by) - cellH / 2],
        ],
        color: "#ffffff",
        width: 1,
      });
    }
  }
  // colorbar
  const barX = f.x0 + f.w + 24;
  const barW = 18;
  const strips = 64;
  const stripColors: string[] = [];
  for (let s = strips - 1; s >= 0; s--) {
    stripColors.push(rgbHex(viridis((s + 0.5) / strips)));
  }
  ops.push({
    op: "cells", x: barX, y: f.y0, cellW: barW, cellH: f.h / strips,
    cols: 1, rows: strips, colors: stripColors,
  });
  ops.push({
    op: "polyline",
    points: [
      [barX, f.y0], [barX + barW, f.y0], [barX + barW, f.y0 + f.h],
      [barX, f.y0 + f.h], [barX, f.y0],
    ],
    color: "#000000",
    width: 1,
  });
  for (const frac of [0, 0.5, 1]) {
    const v = lo + frac * (hi - lo);
    const py = f.y0 + f.h - frac * f.h;
    ops.push({
      op: "text", x: barX + barW + 6, y: py + 4, text: fmtTick(v),
      color: "#000000", size: 11, anchor: "start",
    });
  }
  ops.push(...axes(
    f, mf.title, mf.xLabel || "rabi error fraction", mf.yLabel || "detuning (MHz)",
  ));
  return { width: mf.width, height: mf.height, ops };
}

export function buildScene(tables: CsvTable[], mf: PlotManifest): Scene {
  switch (mf.kind) {
    case "trace":
      return buildTrace(tables, mf);
    case "curve":
      return buildCurve(tables, mf);
    case "contour":
      return buildContour(tables, mf);
  }
}
