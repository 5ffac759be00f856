/**
 * Offline submission queue.
 *
 * Failed-to-send submissions are stored (exact serialized bytes) and flushed
 * serially on reconnect.  A server rejection (duplicate, validation) drops
 * the entry and surfaces the reason — rejections must never retry forever;
 * only transport failures keep an entry queued.
 */

import { ApiError } from "./api.js";

export interface StorageLike {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
}

export interface QueuedSubmission {
  taskId: string;
  bodyBytes: string;
}

export interface FlushReport {
  sent: number;
  rejected: { item: QueuedSubmission; detail: string }[];
  /** Entries still queued after a transport failure stopped the flush. */
  remaining: number;
}

export class OfflineQueue {
  constructor(
    private readonly storage: StorageLike,
    private readonly key = "factalign.offline-queue",
  ) {}

  items(): QueuedSubmission[] {
    const raw = this.storage.getItem(this.key);
    if (!raw) return [];
    try {
      return JSON.parse(raw) as QueuedSubmission[];
    } catch {
      return [];
    }
  }

  private write(items: QueuedSubmission[]): void {
    if (items.length === 0) {
      this.storage.removeItem(this.key);
    } else {
      this.storage.setItem(this.key, JSON.stringify(items));
    }
  }

  push(item: QueuedSubmission): void {
    this.write([...this.items(), item]);
  }

  size(): number {
    return this.items().length;
  }

  async flush(post: (item: QueuedSubmission) => Promise<unknown>): Promise<FlushReport> {
    const report: FlushReport = { sent: 0, rejected: [], remaining: 0 };
    let pending = this.items();
    while (pending.length > 0) {
      const item = pending[0]!;
      try {
        await post(item);
        report.sent += 1;
      } catch (error) {
        if (error instanceof ApiError) {
          report.rejected.push({ item, detail: error.detail });
        } else {
          // Still offline: keep everything from here and stop.
          report.remaining = pending.length;
          this.write(pending);
          return report;
        }
      }
      pending = pending.slice(1);
      this.write(pending);
    }
    return report;
  }
}
