import { describe, expect, it } from "vitest";

import { RequestQueue } from "../src/queue.js";

const sleep = (ms: number) => new Promise((resolve) => setTimeout(resolve, ms));

describe("RequestQueue", () => {
  it("runs tasks one at a time in submission order", async () => {
    const queue = new RequestQueue();
    const started: number[] = [];
    const finished: number[] = [];
    const tasks = [30, 5, 15].map((delay, i) =>
      queue.run(async () => {
        started.push(i);
        await sleep(delay);
        finished.push(i);
        return i;
      }),
    );
    const results = await Promise.all(tasks);
    expect(results).toEqual([0, 1, 2]);
    expect(started).toEqual([0, 1, 2]); // never overlapping
    expect(finished).toEqual([0, 1, 2]);
  });

  it("keeps serving after a task rejects", async () => {
    const queue = new RequestQueue();
    const failing = queue.run(async () => {
      throw new Error("boom");
    });
    await expect(failing).rejects.toThrow("boom");
    await expect(queue.run(async () => "ok")).resolves.toBe("ok");
  });
});
