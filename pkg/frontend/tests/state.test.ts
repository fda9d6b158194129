import { describe, expect, it } from "vitest";

import type { AlarmSummary } from "../src/api.js";
import {
  PAGE_SIZE,
  currentPage,
  gotoPage,
  initialState,
  pageCount,
  removeFromQueue,
  restoreToQueue,
  setQueue,
} from "../src/state.js";

function summaries(n: number): AlarmSummary[] {
  return Array.from({ length: n }, (_, i) => ({
    alarm_id: `a${i}`,
    function_point: "FP",
    day: 1,
    verified: false,
    cause: null,
  }));
}

describe("queue state", () => {
  it("keeps service order", () => {
    const state = setQueue(initialState(), summaries(3), 5);
    expect(state.queue.map((a) => a.alarm_id)).toEqual(["a0", "a1", "a2"]);
    expect(state.version).toBe(5);
  });

  it("paginates a 200-alarm queue preserving order", () => {
    let state = setQueue(initialState(), summaries(200), 1);
    expect(pageCount(state)).toBe(Math.ceil(200 / PAGE_SIZE));
    expect(currentPage(state)).toHaveLength(PAGE_SIZE);
    expect(currentPage(state)[0].alarm_id).toBe("a0");
    state = gotoPage(state, 1);
    expect(currentPage(state)[0].alarm_id).toBe(`a${PAGE_SIZE}`);
    const seen = [];
    for (let p = 0; p < pageCount(state); p++) {
      seen.push(...currentPage(gotoPage(state, p)).map((a) => a.alarm_id));
    }
    expect(seen).toEqual(summaries(200).map((a) => a.alarm_id));
  });

  it("clamps page navigation", () => {
    const state = setQueue(initialState(), summaries(10), 1);
    expect(gotoPage(state, -4).page).toBe(0);
    expect(gotoPage(state, 99).page).toBe(0);
  });

  it("drops the current page back in range when the queue shrinks", () => {
    let state = setQueue(initialState(), summaries(120), 1);
    state = gotoPage(state, 2);
    state = setQueue(state, summaries(40), 2);
    expect(state.page).toBe(0);
  });
});

describe("optimistic removal", () => {
  it("removes and restores at the original index", () => {
    const base = setQueue(initialState(), summaries(5), 1);
    const { state, removed, index } = removeFromQueue(base, "a2");
    expect(removed?.alarm_id).toBe("a2");
    expect(index).toBe(2);
    expect(state.queue.map((a) => a.alarm_id)).toEqual(["a0", "a1", "a3", "a4"]);
    const rolledBack = restoreToQueue(state, removed!, index);
    expect(rolledBack.queue.map((a) => a.alarm_id)).toEqual(base.queue.map((a) => a.alarm_id));
  });

  it("is a no-op for unknown ids", () => {
    const base = setQueue(initialState(), summaries(2), 1);
    const { state, removed } = removeFromQueue(base, "missing");
    expect(removed).toBeNull();
    expect(state.queue).toHaveLength(2);
  });
});
