/**
 * Background upload of the pending answer queue.
 *
 * The whole queue goes up as one batch, in clientSeq order, whenever a sync
 * runs. Network failures are retried with exponential backoff and never
 * lose records; the queue shrinks only on accepted/duplicate acks, so a
 * lost ack just means the next delivery is acknowledged as duplicates.
 */

import type { ApiClient } from "./api.js";
import { OfflineError } from "./api.js";
import type { LectureCache } from "./cache.js";
import type { Ack } from "./types.js";

export type SyncOutcome = "empty" | "synced" | "offline";

export interface SyncEvents {
  onReallocationNeeded?: () => void;
  onServerGrade?: (grade: number, answered: number) => void;
}

export class SyncEngine {
  constructor(
    private api: ApiClient,
    private cache: LectureCache,
    private studentId: string,
    private events: SyncEvents = {},
    private sleep: (ms: number) => Promise<void> = (ms) =>
      new Promise((resolve) => setTimeout(resolve, ms)),
  ) {}

  /** One delivery attempt; no request at all when the queue is empty. */
  async syncOnce(): Promise<SyncOutcome> {
    const data = this.cache.get();
    if (data.queue.length === 0) return "empty";
    const batch = [...data.queue].sort((a, b) => a.clientSeq - b.clientSeq);
    let ack: Ack;
    try {
      ack = await this.api.postAnswers(this.studentId, this.cache.lectureId, batch);
    } catch (err) {
      if (err instanceof OfflineError) return "offline";
      throw err;
    }
    const needsReallocation = this.cache.applyAcks(batch, ack.statuses);
    if (needsReallocation) this.events.onReallocationNeeded?.();
    this.events.onServerGrade?.(ack.grade, ack.answered);
    return "synced";
  }

  /** Retry silently with exponential backoff until online or out of tries. */
  async syncWithRetry(maxAttempts = 5, baseDelayMs = 500): Promise<SyncOutcome> {
    let outcome: SyncOutcome = "offline";
    for (let attempt = 0; attempt < maxAttempts; attempt++) {
      outcome = await this.syncOnce();
      if (outcome !== "offline") return outcome;
      await this.sleep(baseDelayMs * 2 ** attempt);
    }
    return outcome;
  }
}
