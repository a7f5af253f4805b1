/**
 * Parser for the simulator's CSV output.
 *
 * Both file kinds share the layout: `# key=value` comment lines, one header
 * row, then data rows.  Sweep files carry
 * eps,delta_mhz,delta_rad_per_us,fidelity_sim,fidelity_oracle,infidelity_sim,status
 * and trace files t_us,p0,p1,pe,fidelity.
 */

export interface CsvTable {
  meta: Record<string, string>;
  columns: string[];
  /** numeric columns by name; non-numeric columns (status) kept as strings */
  numbers: Record<string, number[]>;
  strings: Record<string, string[]>;
  rowCount: number;
}

export class CsvSchemaError extends Error {
  constructor(message: string, public line: number) {
    super(`line ${line}: ${message}`);
  }
}

export function parseCsv(text: string): CsvTable {
  const meta: Record<string, string> = {};
  const lines = text.split("\n");
  let i = 0;
  for (; i < lines.length; i++) {
    const line = lines[i];
    if (!line.startsWith("#")) break;
    const body = line.replace(/^#\s*/, "");
    const eq = body.indexOf("=");
    if (eq < 0) throw new CsvSchemaError(`comment is not key=value: ${body}`, i + 1);
    meta[body.slice(0, eq)] = body.slice(eq + 1);
  }
  if (i >= lines.length || lines[i].trim() === "") {
    throw new CsvSchemaError("missing header row", i + 1);
  }
  const columns = lines[i].split(",").map((c) => c.trim());
  if (columns.length < 2) throw new CsvSchemaError("header has fewer than 2 columns", i + 1);
  i++;

  const numbers: Record<string, number[]> = {};
  const strings: Record<string, string[]> = {};
  for (const c of columns) {
    numbers[c] = [];
    strings[c] = [];
  }
  let rowCount = 0;
  for (; i < lines.length; i++) {
    const line = lines[i];
    if (line.trim() === "") continue;
    const cells = line.split(",");
    if (cells.length !== columns.length) {
      throw new CsvSchemaError(
        `expected ${columns.length} cells, found ${cells.length}`,
        i + 1,
      );
    }
    for (let c = 0; c < columns.length; c++) {
      const raw = cells[c].trim();
      strings[columns[c]].push(raw);
      const num = Number(raw);
      numbers[columns[c]].push(Number.isFinite(num) ? num : NaN);
    }
    rowCount++;
  }
  if (rowCount === 0) throw new CsvSchemaError("no data rows", i);
  return { meta, columns, numbers, strings, rowCount };
}

export function requireColumns(table: CsvTable, needed: string[], context: string): void {
  for (const col of needed) {
    if (!table.columns.includes(col)) {
      throw new CsvSchemaError(`${context}: missing column '${col}'`, 1);
    }
  }
}

/** Distinct sorted values of a column (used to recover grid axes). */
export function axisValues(values: number[]): number[] {
  return [...new Set(values)].sort((a, b) => a - b);
}
