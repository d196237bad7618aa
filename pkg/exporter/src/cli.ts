#!/usr/bin/env node
/**
 * nngs-exporter: materialize the embedding CSVs behind the zero-shot study
 * and fetch the public inputs of the analogy study.
 *
 *   nngs-exporter images --data-dir data --out images.csv [--model-id ID] [--split test]
 *   nngs-exporter texts  --out-dir texts/ [--templates FILE] [--model-id ID]
 *   nngs-exporter download (questions|glove|cifar100) [--out-dir data]
 */

import { mkdirSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { parseArgs } from "node:util";

import { createBackend, DEFAULT_MODEL_ID } from "./backend.js";
import { downloadCifar100, downloadGlove, downloadQuestions } from "./download.js";
import { exportImageEmbeddings, exportTextEmbeddings } from "./export.js";
import { loadTemplates } from "./templates.js";

const DEFAULT_TEMPLATES = join(dirname(fileURLToPath(import.meta.url)), "..", "templates.json");

function usageError(message: string): never {
  console.error(`error: ${message}`);
  console.error(
    "usage: nngs-exporter images|texts|download ... (see exporter README for flags)",
  );
  process.exit(2);
}

async function cmdImages(argv: string[]): Promise<void> {
  const { values } = parseArgs({
    args: argv,
    options: {
      "model-id": { type: "string", default: DEFAULT_MODEL_ID },
      split: { type: "string", default: "test" },
      "data-dir": { type: "string" },
      bin: { type: "string" },
      out: { type: "string" },
      "batch-size": { type: "string", default: "64" },
    },
  });
  if (values.split !== "test") {
    usageError(`only the test split is supported, got ${JSON.stringify(values.split)}`);
  }
  if (!values.out) {
    usageError("images needs --out <csv path>");
  }
  const binPath =
    values.bin ??
    (values["data-dir"]
      ? join(values["data-dir"], "cifar-100-binary", "test.bin")
      : usageError("images needs --data-dir (holding cifar-100-binary/test.bin) or --bin"));
  const backend = createBackend(values["model-id"]!, Number(values["batch-size"]));
  const result = await exportImageEmbeddings(binPath, backend, values.out, values.split);
  console.error(
    `wrote ${result.rows} rows x ${result.dim} dims to ${result.outPath} (model ${backend.id})`,
  );
}

async function cmdTexts(argv: string[]): Promise<void> {
  const { values } = parseArgs({
    args: argv,
    options: {
      "model-id": { type: "string", default: DEFAULT_MODEL_ID },
      templates: { type: "string", default: DEFAULT_TEMPLATES },
      "out-dir": { type: "string" },
      "batch-size": { type: "string", default: "64" },
    },
  });
  if (!values["out-dir"]) {
    usageError("texts needs --out-dir <directory>");
  }
  const templates = loadTemplates(values.templates!);
  mkdirSync(values["out-dir"]!, { recursive: true });
  const backend = createBackend(values["model-id"]!, Number(values["batch-size"]));
  const result = await exportTextEmbeddings(templates, backend, values["out-dir"]!);
  console.error(
    `wrote ${result.files.length} template files (${result.classes} classes each) to ${values["out-dir"]}`,
  );
}

async function cmdDownload(argv: string[]): Promise<void> {
  const target = argv[0];
  const { values } = parseArgs({
    args: argv.slice(1),
    options: { "out-dir": { type: "string", default: "data" } },
  });
  const outDir = values["out-dir"]!;
  if (target === "questions") {
    console.error(`fetched ${await downloadQuestions(outDir)}`);
  } else if (target === "glove") {
    console.error(`fetched ${await downloadGlove(outDir)}`);
  } else if (target === "cifar100") {
    console.error(`fetched ${await downloadCifar100(outDir)}`);
  } else {
    usageError("download target must be questions, glove, or cifar100");
  }
}

async function main(): Promise<void> {
  const [command, ...rest] = process.argv.slice(2);
  try {
    if (command === "images") {
      await cmdImages(rest);
    } else if (command === "texts") {
      await cmdTexts(rest);
    } else if (command === "download") {
      await cmdDownload(rest);
    } else {
      usageError(`unknown command ${JSON.stringify(command ?? "")}`);
    }
  } catch (error) {
    console.error(`error: ${error instanceof Error ? error.message : error}`);
    process.exit(1);
  }
}

void main();
