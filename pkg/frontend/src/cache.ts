/**
 * Per-lecture client cache: the allocation payload, the local answer
 * history, and the queue of answers still waiting for the server.
 *
 * Everything is persisted through a KeyValueStore on every mutation, so a
 * page reload (or killing the tab mid-session) never loses an answer or
 * reuses a clientSeq. The queue only shrinks when the server acknowledges
 * a record as accepted or duplicate.
 */

import type { KeyValueStore } from "./storage.js";
import type { AckStatus, AllocationPayload, AnswerRecord, LocalOutcome } from "./types.js";
import { computeGrade } from "./grading.js";

export interface LectureCacheData {
  payload: AllocationPayload;
  queue: AnswerRecord[];
  deadLetters: AnswerRecord[];
  nextClientSeq: number;
  outcomes: LocalOutcome[];
  grade: number;
  lastAnsweredToken: string | null;
}

export class LectureCache {
  private data: LectureCacheData | null = null;

  constructor(
    private store: KeyValueStore,
    private studentKey: string,
    readonly lectureId: string,
  ) {
    const raw = this.store.get(this.key());
    if (raw !== null) {
      this.data = JSON.parse(raw) as LectureCacheData;
    }
  }

  private key(): string {
    return `drillkit:${this.studentKey}:${this.lectureId}`;
  }

  private persist(): void {
    this.store.set(this.key(), JSON.stringify(this.data));
  }

  get loaded(): boolean {
    return this.data !== null;
  }

  get(): LectureCacheData {
    if (this.data === null) throw new Error(`lecture ${this.lectureId} is not cached`);
    return this.data;
  }

  /** Install a fresh allocation payload, keeping any pending local state. */
  install(payload: AllocationPayload): void {
    if (this.data === null) {
      this.data = {
        payload,
        queue: [],
        deadLetters: [],
        nextClientSeq: 1,
        outcomes: [],
        grade: payload.grade,
        lastAnsweredToken: null,
      };
    } else {
      this.data.payload = payload; // refresh bodies/policies; local history wins
    }
    this.persist();
  }

  /** Append one answered question: history, queue, and seq move together. */
  recordAnswer(
    token: string,
    chosenIndex: number | null,
    timeTaken: number,
    timedOut: boolean,
    correct: boolean,
    clientTimestamp: number,
  ): AnswerRecord {
    const data = this.get();
    const record: AnswerRecord = {
      token,
      clientSeq: data.nextClientSeq,
      chosenIndex,
      timeTaken,
      timedOut,
      clientTimestamp,
    };
    data.nextClientSeq += 1;
    data.queue.push(record);
    data.outcomes.push({ correct: correct && !timedOut, timedOut, timeTaken });
    data.grade = computeGrade(data.outcomes, data.payload.gradePolicy);
    data.lastAnsweredToken = token;
    this.persist();
    return record;
  }

  /**
   * Apply server acks to the queue. Accepted and duplicate records leave
   * the queue; records the server can never accept (unknown token) move to
   * the dead-letter list so the drill can continue after re-allocation.
   * Returns true when a re-allocation prompt is needed.
   */
  applyAcks(sent: AnswerRecord[], statuses: AckStatus[]): boolean {
    const data = this.get();
    const drop = new Set<number>();
    let needsReallocation = false;
    statuses.forEach((status, i) => {
      const record = sent[i];
      if (record === undefined) return;
      if (status.status === "accepted" || status.status === "duplicate") {
        drop.add(record.clientSeq);
      } else if (status.reason === "unknown_token") {
        drop.add(record.clientSeq);
        data.deadLetters.push(record);
        needsReallocation = true;
      }
      // other rejections stay queued: the server stores them, so the next
      // delivery acks them as duplicates and the queue drains
    });
    data.queue = data.queue.filter((r) => !drop.has(r.clientSeq));
    this.persist();
    return needsReallocation;
  }

  evict(): void {
    this.data = null;
    this.store.remove(this.key());
  }
}
