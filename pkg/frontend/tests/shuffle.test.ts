/** Display order is a permutation; submissions map back to canonical indices. */

import { describe, expect, it } from "vitest";

import { shuffleChoices } from "../src/shuffle.js";
import { DrillSession } from "../src/drill.js";
import { LectureCache } from "../src/cache.js";
import { MemoryStore } from "../src/storage.js";
import { makePayload } from "./helpers.js";

describe("shuffleChoices", () => {
  it("always returns a permutation", () => {
    for (let seed = 0; seed < 300; seed++) {
      const perm = shuffleChoices(4, seed);
      expect([...perm].sort()).toEqual([0, 1, 2, 3]);
    }
  });

  it("is deterministic per seed", () => {
    expect(shuffleChoices(5, 1234)).toEqual(shuffleChoices(5, 1234));
  });

  it("spreads the correct answer across positions", () => {
    const counts = [0, 0, 0, 0];
    for (let seed = 0; seed < 4000; seed++) {
      counts[shuffleChoices(4, seed).indexOf(0)]! += 1;
    }
    for (const c of counts) {
      expect(Math.abs(c - 1000)).toBeLessThan(130); // ~4 sigma
    }
  });
});

describe("scripted interactions", () => {
  it("submitted canonical index matches the clicked choice, 100 times", () => {
    const cache = new LectureCache(new MemoryStore(), "s1", "lec");
    cache.install(makePayload(12, { enabled: false, tMin: 15, tMax: 180, gMin: 6, width: 2 }));
    let clock = 1_000_000;
    const session = new DrillSession(cache, () => (clock += 1500));

    for (let i = 0; i < 100; i++) {
      const view = session.nextQuestion();
      // display order is a permutation of the canonical indices
      const canonicals = view.choices.map((c) => c.canonicalIndex).sort((a, b) => a - b);
      expect(canonicals).toEqual([0, 1, 2, 3]);

      const position = Math.floor(Math.random() * view.choices.length);
      const clicked = view.choices[position]!;
      const question = cache
        .get()
        .payload.questions.find((q) => q.token === view.token)!;
      // what the student saw at that position is the canonical choice text
      expect(question.choices[clicked.canonicalIndex]!.text).toBe(clicked.text);

      const feedback = session.submit(position);
      const recorded = cache.get().queue.at(-1)!;
      expect(recorded.chosenIndex).toBe(clicked.canonicalIndex);
      expect(feedback.correct).toBe(question.choices[clicked.canonicalIndex]!.correct);
    }
    expect(cache.get().queue.length).toBe(100);
  });
});
