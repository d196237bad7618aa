/**
 * The two export operations: image embeddings for a CIFAR-100 split and text
 * embeddings for every prompt template filled with every class name. Both
 * emit the consumer's embedding-CSV contract with unit-normalized vectors.
 */

import { readFileSync } from "node:fs";
import { join } from "node:path";

import type { EmbeddingBackend } from "./backend.js";
import { CIFAR100_FINE_LABELS, readBinaryBatch, type CifarImage } from "./cifar100.js";
import { l2Normalize, writeEmbeddingsCsv, type EmbeddingRow } from "./csv.js";
import { fillTemplate, slugFor, type PromptTemplate } from "./templates.js";

export interface ImageExportResult {
  outPath: string;
  rows: number;
  dim: number;
}

export async function exportImageEmbeddings(
  binPath: string,
  backend: EmbeddingBackend,
  outPath: string,
  splitName = "test",
): Promise<ImageExportResult> {
  const images: CifarImage[] = readBinaryBatch(
    new Uint8Array(readFileSync(binPath)),
    splitName,
  );
  const vectors = await backend.embedImages(images);
  const rows: EmbeddingRow[] = images.map((image, i) => ({
    id: image.id,
    label: image.label,
    vector: l2Normalize(vectors[i]),
  }));
  writeEmbeddingsCsv(outPath, rows, true);
  return { outPath, rows: rows.length, dim: rows[0].vector.length };
}

export interface TextExportResult {
  files: string[];
  classes: number;
}

export async function exportTextEmbeddings(
  templates: PromptTemplate[],
  backend: EmbeddingBackend,
  outDir: string,
  classNames: readonly string[] = CIFAR100_FINE_LABELS,
): Promise<TextExportResult> {
  const files: string[] = [];
  for (const template of templates) {
    const captions = classNames.map((name) => fillTemplate(template.template, name));
    const vectors = await backend.embedTexts(captions);
    const rows: EmbeddingRow[] = classNames.map((name, i) => ({
      id: name,
      vector: l2Normalize(vectors[i]),
    }));
    const path = join(outDir, `${slugFor(template)}.csv`);
    writeEmbeddingsCsv(path, rows, false);
    files.push(path);
  }
  return { files, classes: classNames.length };
}
