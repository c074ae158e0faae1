// Decouples stream consumption from the single rendering thread: the
// stream may outpace rendering, so only the newest snapshot is retained
// while every non-snapshot event is kept in order.

import type { SessionEvent } from "./protocol.js";

export class EventMailbox {
  private newestSnapshot: SessionEvent | null = null;
  private others: SessionEvent[] = [];

  put(event: SessionEvent): void {
    if (event.type === "snapshot") {
      this.newestSnapshot = event;
    } else {
      this.others.push(event);
    }
  }

  /** Everything pending, in arrival order with the snapshot last. */
  drain(): SessionEvent[] {
    const batch = this.others;
    this.others = [];
    if (this.newestSnapshot !== null) {
      batch.push(this.newestSnapshot);
      this.newestSnapshot = null;
    }
    return batch;
  }

  get pending(): boolean {
    return this.newestSnapshot !== null || this.others.length > 0;
  }
}
