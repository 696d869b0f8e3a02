/** Countdown timer for the answer time limit. */

export interface CountdownHooks {
  onTick?: (remainingSeconds: number) => void;
  onExpire?: () => void;
}

export class Countdown {
  private timer: ReturnType<typeof setInterval> | null = null;
  private startedAt = 0;
  private running = false;
  private frozenRemaining: number | null = null;

  constructor(
    readonly durationSeconds: number | null,
    private hooks: CountdownHooks = {},
    private tickMs = 100,
    private now: () => number = () => Date.now(),
  ) {}

  /** No-op when there is no time limit (policy disabled). */
  start(): void {
    if (this.durationSeconds === null || this.running) return;
    this.startedAt = this.now();
    this.running = true;
    this.hooks.onTick?.(this.durationSeconds);
    this.timer = setInterval(() => {
      const remaining = this.remaining();
      if (remaining <= 0) {
        this.stop();
        this.hooks.onTick?.(0);
        this.hooks.onExpire?.();
      } else {
        this.hooks.onTick?.(remaining);
      }
    }, this.tickMs);
  }

  remaining(): number {
    if (this.durationSeconds === null) return Infinity;
    if (this.running) return this.durationSeconds - (this.now() - this.startedAt) / 1000;
    return this.frozenRemaining ?? this.durationSeconds;
  }

  stop(): void {
    if (this.running) this.frozenRemaining = this.remaining();
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
    this.running = false;
  }
}
