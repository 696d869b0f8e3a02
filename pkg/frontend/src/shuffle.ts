/**
 * Deterministic choice shuffling for display.
 *
 * Same contract as the server's shuffler (a seeded Fisher-Yates permutation
 * of canonical indices), with a locally drawn seed per question view. The
 * permutation maps screen position -> canonical index; answers are always
 * submitted in canonical indices.
 */

/** Small fast seeded PRNG (mulberry32). */
function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

/** Permutation of 0..k-1: element at screen position p is canonical index perm[p]. */
export function shuffleChoices(k: number, seed: number): number[] {
  const rand = mulberry32(seed);
  const order = Array.from({ length: k }, (_, i) => i);
  for (let i = k - 1; i > 0; i--) {
    const j = Math.floor(rand() * (i + 1));
    [order[i], order[j]] = [order[j]!, order[i]!];
  }
  return order;
}

export function drawSeed(): number {
  return Math.floor(Math.random() * 0xffffffff);
}
