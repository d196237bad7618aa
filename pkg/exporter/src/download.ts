/**
 * Download helpers for the public study inputs. These need outbound network
 * access; failures surface as clear errors rather than partial files.
 */

import { execFileSync } from "node:child_process";
import { createWriteStream, existsSync, mkdirSync, renameSync } from "node:fs";
import { join } from "node:path";
import { Readable } from "node:stream";
import { pipeline } from "node:stream/promises";

export const QUESTIONS_URL =
  "https://raw.githubusercontent.com/nicholas-leonard/word2vec/master/questions-words.txt";
export const GLOVE_URL = "https://nlp.stanford.edu/data/glove.6B.zip";
export const CIFAR100_URL = "https://www.cs.toronto.edu/~kriz/cifar-100-binary.tar.gz";

async function fetchToFile(url: string, outPath: string): Promise<void> {
  const response = await fetch(url);
  if (!response.ok || response.body === null) {
    throw new Error(`download failed: ${url} -> HTTP ${response.status}`);
  }
  const tempPath = `${outPath}.tmp-${process.pid}`;
  await pipeline(Readable.fromWeb(response.body as any), createWriteStream(tempPath));
  renameSync(tempPath, outPath);
}

export async function downloadQuestions(outDir: string): Promise<string> {
  mkdirSync(outDir, { recursive: true });
  const outPath = join(outDir, "questions-words.txt");
  await fetchToFile(QUESTIONS_URL, outPath);
  return outPath;
}

export async function downloadGlove(outDir: string): Promise<string> {
  mkdirSync(outDir, { recursive: true });
  const zipPath = join(outDir, "glove.6B.zip");
  const txtPath = join(outDir, "glove.6B.300d.txt");
  if (!existsSync(zipPath)) {
    await fetchToFile(GLOVE_URL, zipPath);
  }
  try {
    execFileSync("unzip", ["-o", zipPath, "glove.6B.300d.txt", "-d", outDir], {
      stdio: "inherit",
    });
  } catch {
    throw new Error(
      `downloaded ${zipPath} but could not unzip it; extract glove.6B.300d.txt manually`,
    );
  }
  return txtPath;
}

export async function downloadCifar100(outDir: string): Promise<string> {
  mkdirSync(outDir, { recursive: true });
  const tarPath = join(outDir, "cifar-100-binary.tar.gz");
  const binPath = join(outDir, "cifar-100-binary", "test.bin");
  if (!existsSync(tarPath)) {
    await fetchToFile(CIFAR100_URL, tarPath);
  }
  execFileSync("tar", ["-xzf", tarPath, "-C", outDir], { stdio: "inherit" });
  if (!existsSync(binPath)) {
    throw new Error(`extracted ${tarPath} but ${binPath} is missing`);
  }
  return binPath;
}
