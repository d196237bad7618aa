/**
 * Embedding backends. The real one runs a CLIP checkpoint through
 * transformers.js (model weights are fetched on first use); the fake one is
 * a deterministic stand-in for exercising the export pipeline offline, via
 * model ids like "fake:64".
 */

import { IMAGE_SIZE, toInterleavedRgb, type CifarImage } from "./cifar100.js";

export interface EmbeddingBackend {
  readonly id: string;
  readonly dim: number | null;
  embedTexts(texts: string[]): Promise<number[][]>;
  embedImages(images: CifarImage[]): Promise<number[][]>;
}

export const DEFAULT_MODEL_ID = "Xenova/clip-vit-base-patch32";

// --- deterministic fake ------------------------------------------------------

function fnv1a(bytes: Uint8Array, seed: number): number {
  let hash = (0x811c9dc5 ^ seed) >>> 0;
  for (let i = 0; i < bytes.length; i++) {
    hash ^= bytes[i];
    hash = Math.imul(hash, 0x01000193) >>> 0;
  }
  return hash >>> 0;
}

function mulberry32(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

function hashedVector(bytes: Uint8Array, dim: number, seed: number): number[] {
  const next = mulberry32(fnv1a(bytes, seed));
  const out = new Array<number>(dim);
  for (let j = 0; j < dim; j++) {
    out[j] = next() - 0.5;
  }
  return out;
}

export function fakeBackend(dim: number): EmbeddingBackend {
  if (!Number.isInteger(dim) || dim < 1) {
    throw new Error(`fake backend needs a positive integer dimension, got ${dim}`);
  }
  const encoder = new TextEncoder();
  return {
    id: `fake:${dim}`,
    dim,
    async embedTexts(texts) {
      return texts.map((text) => hashedVector(encoder.encode(text), dim, 1));
    },
    async embedImages(images) {
      return images.map((image) => hashedVector(image.pixels, dim, 2));
    },
  };
}

// --- transformers.js CLIP ----------------------------------------------------

// Resolved lazily through a variable so the exporter builds and tests without
// the optional model runtime installed.
const TRANSFORMERS_MODULE = "@xenova/transformers";

async function loadTransformers(): Promise<any> {
  try {
    return await import(TRANSFORMERS_MODULE);
  } catch (cause) {
    throw new Error(
      `the ${TRANSFORMERS_MODULE} runtime is not installed; ` +
        `run "npm install ${TRANSFORMERS_MODULE}" (or use a fake:<dim> model id for a dry run)`,
      { cause },
    );
  }
}

function clipBackend(modelId: string, batchSize: number): EmbeddingBackend {
  let loaded: Promise<any> | null = null;
  const load = () => {
    loaded ??= loadTransformers().then(async (tf) => {
      const tokenizer = await tf.AutoTokenizer.from_pretrained(modelId);
      const textModel = await tf.CLIPTextModelWithProjection.from_pretrained(modelId, {
        quantized: false,
      });
      const processor = await tf.AutoProcessor.from_pretrained(modelId);
      const visionModel = await tf.CLIPVisionModelWithProjection.from_pretrained(modelId, {
        quantized: false,
      });
      return { tf, tokenizer, textModel, processor, visionModel };
    });
    return loaded;
  };

  return {
    id: modelId,
    dim: null,
    async embedTexts(texts) {
      const { tokenizer, textModel } = await load();
      const out: number[][] = [];
      for (let start = 0; start < texts.length; start += batchSize) {
        const batch = texts.slice(start, start + batchSize);
        const inputs = tokenizer(batch, { padding: true, truncation: true });
        const result = await textModel(inputs);
        out.push(...result.text_embeds.tolist());
      }
      return out;
    },
    async embedImages(images) {
      const { tf, processor, visionModel } = await load();
      const out: number[][] = [];
      for (let start = 0; start < images.length; start += batchSize) {
        const batch = images.slice(start, start + batchSize);
        const raw = batch.map(
          (image) =>
            new tf.RawImage(toInterleavedRgb(image.pixels), IMAGE_SIZE, IMAGE_SIZE, 3),
        );
        const inputs = await processor(raw);
        const result = await visionModel(inputs);
        out.push(...result.image_embeds.tolist());
      }
      return out;
    },
  };
}

/** Backend for a model id; "fake:<dim>" selects the offline stand-in. */
export function createBackend(modelId: string, batchSize = 64): EmbeddingBackend {
  if (modelId.startsWith("fake:")) {
    return fakeBackend(Number(modelId.slice("fake:".length)));
  }
  return clipBackend(modelId, batchSize);
}
