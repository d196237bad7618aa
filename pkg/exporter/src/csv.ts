/**
 * Embedding CSV writer matching the consumer contract exactly:
 * header `id[,label],x0,...,x{p-1}`, RFC-4180 quoting, decimal floats.
 * Files are written atomically (temp file, then rename).
 */

import { closeSync, fsyncSync, openSync, renameSync, unlinkSync, writeSync } from "node:fs";

export interface EmbeddingRow {
  id: string;
  label?: string;
  vector: ArrayLike<number>;
}

export function quoteField(field: string): string {
  if (/[",\r\n]/.test(field)) {
    return `"${field.replace(/"/g, '""')}"`;
  }
  return field;
}

/** Unit-length copy of a vector; zero vectors indicate a broken embedding. */
export function l2Normalize(vector: ArrayLike<number>): Float64Array {
  let sum = 0;
  for (let i = 0; i < vector.length; i++) {
    sum += vector[i] * vector[i];
  }
  const norm = Math.sqrt(sum);
  if (norm === 0) {
    throw new Error("cannot normalize a zero embedding vector");
  }
  const out = new Float64Array(vector.length);
  for (let i = 0; i < vector.length; i++) {
    out[i] = vector[i] / norm;
  }
  return out;
}

export function embeddingsToCsv(rows: EmbeddingRow[], labeled: boolean): string {
  if (rows.length === 0) {
    throw new Error("no rows to write");
  }
  const dim = rows[0].vector.length;
  const header = [labeled ? "id,label" : "id"];
  for (let j = 0; j < dim; j++) {
    header.push(`x${j}`);
  }
  const lines = [header.join(",")];
  for (const row of rows) {
    if (row.vector.length !== dim) {
      throw new Error(`row ${row.id}: dimension ${row.vector.length}, expected ${dim}`);
    }
    const front = labeled
      ? `${quoteField(row.id)},${quoteField(row.label ?? "")}`
      : quoteField(row.id);
    const coords = new Array<string>(dim);
    for (let j = 0; j < dim; j++) {
      coords[j] = String(row.vector[j]);
    }
    lines.push(`${front},${coords.join(",")}`);
  }
  return lines.join("\n") + "\n";
}

/** Write text to `path` atomically: temp file in the same directory, fsync, rename. */
export function writeFileAtomic(path: string, text: string): void {
  const tempPath = `${path}.tmp-${process.pid}`;
  const fd = openSync(tempPath, "w");
  try {
    writeSync(fd, text);
    fsyncSync(fd);
  } catch (error) {
    closeSync(fd);
    unlinkSync(tempPath);
    throw error;
  }
  closeSync(fd);
  renameSync(tempPath, path);
}

export function writeEmbeddingsCsv(path: string, rows: EmbeddingRow[], labeled: boolean): void {
  writeFileAtomic(path, embeddingsToCsv(rows, labeled));
}
