/**
 * Reader for the experiment runner's CSV output.
 *
 * The schema is versioned through a literal tag column; files carrying any
 * other tag (or missing required columns) are rejected rather than guessed
 * at.
 */

export const CSV_SCHEMA = "laa-runs-1";

export interface RunRow {
  n: number;
  delta: number;
  epsilon: number;
  sampleSize: number;
  flipRate: number;
  predictionError: number;
  pipelineValue: number;
  fallbackValue: number;
  finalValue: number;
  oracleValue: number | null;
  ratio: number | null;
  slackClaimed: number;
  fallbackUsed: boolean;
  wallTimeMs: number;
  seed: number;
}

export class SchemaError extends Error {}

const REQUIRED = [
  "schema",
  "n",
  "delta",
  "epsilon",
  "sample_size",
  "flip_rate",
  "prediction_error",
  "pipeline_value",
  "fallback_value",
  "final_value",
  "oracle_value",
  "ratio",
  "slack_claimed",
  "fallback_used",
  "wall_time_ms",
  "seed",
];

function splitLine(line: string): string[] {
  // values are plain numbers/flags; quoting never appears in this schema
  return line.split(",").map((cell) => cell.trim());
}

function toNumber(cell: string, column: string, line: number): number {
  const value = Number(cell);
  if (cell === "" || Number.isNaN(value)) {
    throw new SchemaError(`line ${line}: column ${column} is not numeric: "${cell}"`);
  }
  return value;
}

function toOptional(cell: string, column: string, line: number): number | null {
  if (cell === "" || cell === "nan") {
    return null;
  }
  return toNumber(cell, column, line);
}

export function parseRuns(text: string): RunRow[] {
  const lines = text.split(/\r?\n/).filter((line) => line.trim() !== "");
  if (lines.length === 0) {
    throw new SchemaError("empty CSV: nothing to plot");
  }
  const header = splitLine(lines[0]);
  for (const column of REQUIRED) {
    if (!header.includes(column)) {
      throw new SchemaError(`missing column "${column}" (schema ${CSV_SCHEMA})`);
    }
  }
  const index = new Map(header.map((name, i) => [name, i]));
  const at = (cells: string[], name: string) => cells[index.get(name)!] ?? "";
  const rows: RunRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = splitLine(lines[i]);
    if (cells.length !== header.length) {
      throw new SchemaError(`line ${i + 1}: expected ${header.length} cells, got ${cells.length}`);
    }
    const tag = at(cells, "schema");
    if (tag !== CSV_SCHEMA) {
      throw new SchemaError(`line ${i + 1}: unknown schema tag "${tag}" (want ${CSV_SCHEMA})`);
    }
    rows.push({
      n: toNumber(at(cells, "n"), "n", i + 1),
      delta: toNumber(at(cells, "delta"), "delta", i + 1),
      epsilon: toNumber(at(cells, "epsilon"), "epsilon", i + 1),
      sampleSize: toNumber(at(cells, "sample_size"), "sample_size", i + 1),
      flipRate: toNumber(at(cells, "flip_rate"), "flip_rate", i + 1),
      predictionError: toNumber(at(cells, "prediction_error"), "prediction_error", i + 1),
      pipelineValue: toNumber(at(cells, "pipeline_value"), "pipeline_value", i + 1),
      fallbackValue: toNumber(at(cells, "fallback_value"), "fallback_value", i + 1),
      finalValue: toNumber(at(cells, "final_value"), "final_value", i + 1),
      oracleValue: toOptional(at(cells, "oracle_value"), "oracle_value", i + 1),
      ratio: toOptional(at(cells, "ratio"), "ratio", i + 1),
      slackClaimed: toNumber(at(cells, "slack_claimed"), "slack_claimed", i + 1),
      fallbackUsed: at(cells, "fallback_used") === "1",
      wallTimeMs: toNumber(at(cells, "wall_time_ms"), "wall_time_ms", i + 1),
      seed: toNumber(at(cells, "seed"), "seed", i + 1),
    });
  }
  if (rows.length === 0) {
    throw new SchemaError("empty CSV: header only, nothing to plot");
  }
  return rows;
}
