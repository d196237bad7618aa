/**
 * CIFAR-100 metadata and a reader for the binary test batch.
 *
 * Records in the binary distribution are 3074 bytes: one coarse-label byte,
 * one fine-label byte, then a 32x32 RGB image stored planar (all red bytes,
 * all green, all blue).
 */

export const IMAGE_SIZE = 32;
export const IMAGE_BYTES = 3 * IMAGE_SIZE * IMAGE_SIZE;
const RECORD_BYTES = 2 + IMAGE_BYTES;

/** Fine label names in the dataset's canonical (alphabetical) order. */
export const CIFAR100_FINE_LABELS: readonly string[] = [
  "apple", "aquarium_fish", "baby", "bear", "beaver",
  "bed", "bee", "beetle", "bicycle", "bottle",
  "bowl", "boy", "bridge", "bus", "butterfly",
  "camel", "can", "castle", "caterpillar", "cattle",
  "chair", "chimpanzee", "clock", "cloud", "cockroach",
  "couch", "crab", "crocodile", "cup", "dinosaur",
  "dolphin", "elephant", "flatfish", "forest", "fox",
  "girl", "hamster", "house", "kangaroo", "keyboard",
  "lamp", "lawn_mower", "leopard", "lion", "lizard",
  "lobster", "man", "maple_tree", "motorcycle", "mountain",
  "mouse", "mushroom", "oak_tree", "orange", "orchid",
  "otter", "palm_tree", "pear", "pickup_truck", "pine_tree",
  "plain", "plate", "poppy", "porcupine", "possum",
  "rabbit", "raccoon", "ray", "road", "rocket",
  "rose", "sea", "seal", "shark", "shrew",
  "skunk", "skyscraper", "snail", "snake", "spider",
  "squirrel", "streetcar", "sunflower", "sweet_pepper", "table",
  "tank", "telephone", "television", "tiger", "tractor",
  "train", "trout", "tulip", "turtle", "wardrobe",
  "whale", "willow_tree", "wolf", "woman", "worm",
];

export interface CifarImage {
  /** Stable per-split identifier, e.g. "test-00042". */
  id: string;
  /** Fine label name. */
  label: string;
  /** Planar RGB bytes, length 3072. */
  pixels: Uint8Array;
}

/** Parse a CIFAR binary batch (e.g. the contents of test.bin). */
export function readBinaryBatch(buffer: Uint8Array, splitName = "test"): CifarImage[] {
  if (buffer.length === 0 || buffer.length % RECORD_BYTES !== 0) {
    throw new Error(
      `not a CIFAR-100 binary batch: ${buffer.length} bytes is not a multiple of ${RECORD_BYTES}`,
    );
  }
  const count = buffer.length / RECORD_BYTES;
  const width = String(count - 1).length;
  const images: CifarImage[] = [];
  for (let i = 0; i < count; i++) {
    const offset = i * RECORD_BYTES;
    const fine = buffer[offset + 1];
    if (fine >= CIFAR100_FINE_LABELS.length) {
      throw new Error(`record ${i}: fine label ${fine} out of range`);
    }
    images.push({
      id: `${splitName}-${String(i).padStart(Math.max(width, 5), "0")}`,
      label: CIFAR100_FINE_LABELS[fine],
      pixels: buffer.subarray(offset + 2, offset + RECORD_BYTES),
    });
  }
  return images;
}

/** Planar CIFAR bytes to interleaved RGB (what image models consume). */
export function toInterleavedRgb(pixels: Uint8Array): Uint8Array {
  const plane = IMAGE_SIZE * IMAGE_SIZE;
  const out = new Uint8Array(IMAGE_BYTES);
  for (let p = 0; p < plane; p++) {
    out[3 * p] = pixels[p];
    out[3 * p + 1] = pixels[plane + p];
    out[3 * p + 2] = pixels[2 * plane + p];
  }
  return out;
}
