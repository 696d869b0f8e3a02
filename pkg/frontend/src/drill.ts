/**
 * The drill state machine: pick a question matched to the grade, show
 * shuffled choices under a countdown, record the answer locally, and show
 * feedback with the explanation. Works entirely from the lecture cache, so
 * it neither needs nor notices the network.
 */

import type { LectureCache } from "./cache.js";
import { timeoutSeconds } from "./pacing.js";
import { drawSeed, shuffleChoices } from "./shuffle.js";
import type { WireQuestion } from "./types.js";

export interface DisplayChoice {
  text: string;
  canonicalIndex: number;
}

export interface QuestionView {
  token: string;
  stem: string;
  imageUrl: string | null;
  choices: DisplayChoice[]; // in display order
  countdownSeconds: number | null; // null when the timeout policy is off
  grade: number;
  answered: number;
}

export interface FeedbackView {
  correct: boolean;
  timedOut: boolean;
  explanation: string;
  correctDisplayPosition: number;
  grade: number;
  answered: number;
}

export class DrillSession {
  private active: { question: WireQuestion; view: QuestionView; startedAt: number } | null =
    null;

  constructor(
    private cache: LectureCache,
    private now: () => number = () => Date.now(),
    private random: () => number = Math.random,
    private seedFn: () => number = drawSeed,
  ) {}

  get grade(): number {
    return this.cache.get().grade;
  }

  get answered(): number {
    return this.cache.get().outcomes.length;
  }

  /** Select and present the next question for the current grade. */
  nextQuestion(): QuestionView {
    const data = this.cache.get();
    const questions = data.payload.questions;
    if (questions.length === 0) throw new Error("allocation is empty");
    const question = this.select(questions, data.grade, data.lastAnsweredToken);
    const perm = shuffleChoices(question.choices.length, this.seedFn());
    const limit = timeoutSeconds(data.grade, data.payload.timeoutPolicy);
    const view: QuestionView = {
      token: question.token,
      stem: question.stem,
      imageUrl: question.imageUrl ?? null,
      choices: perm.map((canonical) => ({
        text: question.choices[canonical]!.text,
        canonicalIndex: canonical,
      })),
      countdownSeconds: Number.isFinite(limit) ? limit : null,
      grade: data.grade,
      answered: data.outcomes.length,
    };
    this.active = { question, view, startedAt: this.now() };
    return view;
  }

  /**
   * Grade-matched selection over the payload order, which the server sorts
   * easiest first: sample a rank near (grade/scale)*(m-1) with spread
   * max(1, 0.15 m), never repeating the previous question when avoidable.
   */
  private select(
    questions: WireQuestion[],
    grade: number,
    lastToken: string | null,
  ): WireQuestion {
    const m = questions.length;
    if (m === 1) return questions[0]!;
    const scale = this.cache.get().payload.gradePolicy.scale;
    const target = (grade / scale) * (m - 1);
    const spread = Math.max(1, 0.15 * m);
    const weights = questions.map((q, i) =>
      q.token === lastToken ? 0 : Math.exp(-((i - target) ** 2) / (2 * spread ** 2)),
    );
    let total = 0;
    for (const w of weights) total += w;
    let u = this.random() * total;
    for (let i = 0; i < m; i++) {
      u -= weights[i]!;
      if (u <= 0) return questions[i]!;
    }
    return questions[m - 1]!;
  }

  /** The student clicked the choice at the given display position. */
  submit(displayPosition: number): FeedbackView {
    if (this.active === null) throw new Error("no active question");
    const { question, view, startedAt } = this.active;
    const display = view.choices[displayPosition];
    if (display === undefined) throw new Error(`no choice at position ${displayPosition}`);
    const canonical = display.canonicalIndex;
    const correct = question.choices[canonical]!.correct;
    let timeTaken = (this.now() - startedAt) / 1000;
    if (view.countdownSeconds !== null) {
      timeTaken = Math.min(timeTaken, view.countdownSeconds);
    }
    return this.finish(question, view, canonical, timeTaken, false, correct);
  }

  /** The countdown reached zero: an incorrect, timed-out answer. */
  expire(): FeedbackView {
    if (this.active === null) throw new Error("no active question");
    const { question, view } = this.active;
    if (view.countdownSeconds === null) throw new Error("no countdown on this question");
    return this.finish(question, view, null, view.countdownSeconds, true, false);
  }

  private finish(
    question: WireQuestion,
    view: QuestionView,
    canonical: number | null,
    timeTaken: number,
    timedOut: boolean,
    correct: boolean,
  ): FeedbackView {
    this.cache.recordAnswer(question.token, canonical, timeTaken, timedOut, correct, this.now());
    this.active = null;
    const data = this.cache.get();
    const correctCanonical = question.choices.findIndex((c) => c.correct);
    return {
      correct: correct && !timedOut,
      timedOut,
      explanation: question.explanation,
      correctDisplayPosition: view.choices.findIndex(
        (c) => c.canonicalIndex === correctCanonical,
      ),
      grade: data.grade,
      answered: data.outcomes.length,
    };
  }
}
