/** Serializes mutations: at most one request in flight, the rest queued. */

export class MutationQueue {
  private tail: Promise<unknown> = Promise.resolve();
  private pending = 0;

  /** Mutations waiting or in flight. */
  get size(): number {
    return this.pending;
  }

  run<T>(task: () => Promise<T>): Promise<T> {
    this.pending += 1;
    const result = this.tail.then(task).finally(() => {
      this.pending -= 1;
    });
    // a failed mutation must not wedge the queue
    this.tail = result.catch(() => undefined);
    return result;
  }
}
