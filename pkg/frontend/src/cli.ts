/**
 * plot --manifest <path> [--manifest <path> ...]
 *
 * Renders each manifest to <out>.svg and <out>.png.  Manifests are
 * processed sequentially; rendering is a pure function of manifest + CSV
 * content.  Exit codes: 0 ok, 1 usage, 2 parse/render failure, 3 I/O.
 */

import * as fs from "node:fs";

import { CsvSchemaError, parseCsv } from "./csv";
import { toPng, toSvg } from "./display";
import { ManifestError, parseManifest } from "./manifest";
import { buildScene } from "./plots";

export function renderManifestFile(manifestPath: string): { svg: string; png: Buffer; out: string } {
  const mf = parseManifest(fs.readFileSync(manifestPath, "utf-8"), manifestPath);
  const tables = mf.inputs.map((p) => parseCsv(fs.readFileSync(p, "utf-8")));
  const scene = buildScene(tables, mf);
  return { svg: toSvg(scene), png: toPng(scene), out: mf.out };
}

export function main(argv: string[]): number {
  try {
    if (argv.length === 0 || argv[0] !== "plot") {
      process.stderr.write("usage: plot --manifest <path> [--manifest <path> ...]\n");
      return 1;
    }
    const manifests: string[] = [];
    for (let i = 1; i < argv.length; i++) {
      if (argv[i] === "--manifest" && i + 1 < argv.length) {
        manifests.push(argv[++i]);
      } else {
        process.stderr.write(`unknown argument: ${argv[i]}\n`);
        return 1;
      }
    }
    if (manifests.length === 0) {
      process.stderr.write("at least one --manifest is required\n");
      return 1;
    }
    for (const path of manifests) {
      const { svg, png, out } = renderManifestFile(path);
      fs.writeFileSync(out + ".svg", svg);
      fs.writeFileSync(out + ".png", png);
      process.stdout.write(`${out}.svg ${out}.png\n`);
    }
    return 0;
  } catch (err) {
    if (err instanceof ManifestError || err instanceof CsvSchemaError) {
      process.stderr.write(`render error: ${(err as Error).message}\n`);
      return 2;
    }
    if ((err as NodeJS.ErrnoException).code) {
      process.stderr.write(`i/o error: ${(err as Error).message}\n`);
      return 3;
    }
    throw err;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
