/**
 * Tiny display list shared by the SVG and PNG backends, so each plot is
 * described once and rendered twice.  Coordinates are device pixels with
 * the origin at the top left.
 */

import { GLYPH_H, GLYPH_W, Raster, parseHexColor } from "./raster";

export type Op =
  | { op: "rect"; x: number; y: number; w: number; h: number; fill: string }
  | {
      op: "cells";
      x: number;
      y: number;
      cellW: number;
      cellH: number;
      cols: number;
      rows: number;
      colors: string[]; // row-major, rows bottom-up already resolved by caller
    }
  | {
      op: "polyline";
      points: [number, number][];
      color: string;
      width: number;
      dash?: [number, number];
    }
  | {
      op: "text";
      x: number;
      y: number;
      text: string;
      color: string;
      size: number;
      anchor: "start" | "middle" | "end";
      vertical?: boolean;
    };

export interface Scene {
  width: number;
  height: number;
  ops: Op[];
}

const XML_ESCAPES: Record<string, string> = {
  "&": "&amp;",
  "<": "&lt;",
  ">": "&gt;",
  '"': "&quot;",
};

function esc(s: string): string {
  return s.replace(/[&<>"]/g, (ch) => XML_ESCAPES[ch]);
}

function fmt(v: number): string {
  return Number.isInteger(v) ? String(v) : v.toFixed(2);
}

export function toSvg(scene: Scene): string {
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${scene.width}" ` +
      `height="${scene.height}" viewBox="0 0 ${scene.width} ${scene.height}">`,
  );
  parts.push(`<rect width="${scene.width}" height="${scene.height}" fill="#ffffff"/>`);
  for (const op of scene.ops) {
    switch (op.op) {
      case "rect":
        parts.push(
          `<rect x="${fmt(op.x)}" y="${fmt(op.y)}" width="${fmt(op.w)}" ` +
            `height="${fmt(op.h)}" fill="${op.fill}"/>`,
        );
        break;
      case "cells": {
        for (let r = 0; r < op.rows; r++) {
          for (let c = 0; c < op.cols; c++) {
            const x = op.x + c * op.cellW;
            const y = op.y + r * op.cellH;
            parts.push(
              `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(op.cellW + 0.5)}" ` +
                `height="${fmt(op.cellH + 0.5)}" fill="${op.colors[r * op.cols + c]}"/>`,
            );
          }
        }
        break;
      }
      case "polyline": {
        const pts = op.points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
        const dash = op.dash ? ` stroke-dasharray="${op.dash[0]} ${op.dash[1]}"` : "";
        parts.push(
          `<polyline points="${pts}" fill="none" stroke="${op.color}" ` +
            `stroke-width="${op.width}"${dash}/>`,
        );
        break;
      }
      case "text": {
        const anchor = { start: "start", middle: "middle", end: "end" }[op.anchor];
        const transform = op.vertical
          ? ` transform="rotate(-90 ${fmt(op.x)} ${fmt(op.y)})"`
          : "";
        parts.push(
          `<text x="${fmt(op.x)}" y="${fmt(op.y)}" font-family="Helvetica,Arial,sans-serif" ` +
            `font-size="${op.size}" fill="${op.color}" text-anchor="${anchor}"${transform}>` +
            `${esc(op.text)}</text>`,
        );
        break;
      }
    }
  }
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

export function toPng(scene: Scene): Buffer {
  const raster = new Raster(scene.width, scene.height);
  for (const op of scene.ops) {
    switch (op.op) {
      case "rect":
        raster.fillRect(op.x, op.y, op.w, op.h, parseHexColor(op.fill));
        break;
      case "cells":
        for (let r = 0; r < op.rows; r++) {
          for (let c = 0; c < op.cols; c++) {
            raster.fillRect(
              op.x + c * op.cellW,
              op.y + r * op.cellH,
              op.cellW + 1,
              op.cellH + 1,
              parseHexColor(op.colors[r * op.cols + c]),
            );
          }
        }
        break;
      case "polyline":
        raster.polyline(op.points, parseHexColor(op.color), Math.round(op.width), op.dash);
        break;
      case "text": {
        const scale = Math.max(1, Math.round(op.size / 10));
        const px = op.text.length * GLYPH_W * scale;
        let x = op.x;
        let y = op.y;
        if (op.vertical) {
          // draw stacked characters centered on the anchor column
          const total = op.text.length * (GLYPH_H + 1) * scale;
          raster.text(x - (5 * scale) / 2, y - total / 2, op.text,
                      parseHexColor(op.color), scale, true);
        } else {
          if (op.anchor === "middle") x -= px / 2;
          if (op.anchor === "end") x -= px;
          raster.text(x, y - GLYPH_H * scale, op.text, parseHexColor(op.color), scale);
        }
        break;
      }
    }
  }
  return raster.toPng();
}
