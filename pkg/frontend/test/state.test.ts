import { describe, expect, it } from "vitest";

import {
  createState,
  lengthHint,
  segmentOfSentence,
  segments,
  toDoc,
  toggleBoundary,
  toggleExtract,
} from "../src/state";

describe("toggleBoundary", () => {
  it("is an involution", () => {
    const s0 = createState(20);
    const s2 = toggleBoundary(toggleBoundary(s0, 3), 3);
    expect(s2.boundaries).toEqual(s0.boundaries);
    expect([...s2.selected]).toEqual([...s0.selected]);
  });

  it("keeps boundaries sorted regardless of click order", () => {
    let s = createState(20);
    for (const gap of [10, 3, 15]) s = toggleBoundary(s, gap);
    expect(s.boundaries).toEqual([3, 10, 15]);
  });

  it("marks the state dirty", () => {
    expect(toggleBoundary(createState(20), 5).dirty).toBe(true);
  });

  it("rejects out-of-range gaps", () => {
    expect(() => toggleBoundary(createState(20), 0)).toThrow(RangeError);
    expect(() => toggleBoundary(createState(20), 20)).toThrow(RangeError);
    expect(() => toggleBoundary(createState(20), 2.5)).toThrow(RangeError);
  });

  it("splits a selected segment into two selected halves", () => {
    let s = toggleBoundary(createState(20), 10); // segments [0,10) [10,20)
    s = toggleExtract(s, 1);
    s = toggleBoundary(s, 15); // splits the selected segment
    expect(s.boundaries).toEqual([10, 15]);
    expect([...s.selected].sort()).toEqual([1, 2]);
  });

  it("reindexes selections when an earlier segment splits", () => {
    let s = toggleBoundary(createState(20), 10);
    s = toggleExtract(s, 1);
    s = toggleBoundary(s, 5); // splits segment 0, selection moves to 2
    expect([...s.selected]).toEqual([2]);
  });

  it("merging keeps the selection if either half was selected", () => {
    let s = toggleBoundary(toggleBoundary(createState(20), 5), 10);
    s = toggleExtract(s, 1); // [5,10) selected
    s = toggleBoundary(s, 10); // merge [5,10) and [10,20)
    expect(s.boundaries).toEqual([5]);
    expect([...s.selected]).toEqual([1]);
  });
});

describe("segments and selection", () => {
  it("derives segments from boundaries", () => {
    const s = toggleBoundary(toggleBoundary(createState(20), 3), 10);
    expect(segments(s)).toEqual([
      { start: 0, end: 3 },
      { start: 3, end: 10 },
      { start: 10, end: 20 },
    ]);
    expect(segmentOfSentence(s, 2)).toBe(0);
    expect(segmentOfSentence(s, 3)).toBe(1);
    expect(segmentOfSentence(s, 19)).toBe(2);
  });

  it("toggleExtract is an involution and bounds-checked", () => {
    const s = toggleBoundary(createState(20), 10);
    const once = toggleExtract(s, 0);
    expect([...once.selected]).toEqual([0]);
    expect([...toggleExtract(once, 0).selected]).toEqual([]);
    expect(() => toggleExtract(s, 2)).toThrow(RangeError);
  });
});

describe("length hints", () => {
  it("flags segments outside the 30-50 sentence guidance", () => {
    expect(lengthHint({ start: 0, end: 200 })).toBe("long");
    expect(lengthHint({ start: 0, end: 10 })).toBe("short");
    expect(lengthHint({ start: 0, end: 40 })).toBeNull();
  });
});

describe("document round trip", () => {
  it("serializes boundaries {3,10} with segment 1 selected", () => {
    let s = toggleBoundary(toggleBoundary(createState(20), 3), 10);
    s = toggleExtract(s, 1);
    expect(toDoc(s)).toEqual({ boundaries: [3, 10], selected: [[3, 10]] });
  });

  it("omits selected when nothing is marked", () => {
    expect(toDoc(toggleBoundary(createState(20), 3))).toEqual({
      boundaries: [3],
    });
  });

  it("restores selection state from a saved document", () => {
    const s = createState(20, {
      boundaries: [3, 10],
      selected: [[3, 10]],
      revision: 4,
    });
    expect([...s.selected]).toEqual([1]);
    expect(s.revision).toBe(4);
    expect(s.dirty).toBe(false);
    expect(toDoc(s)).toEqual({ boundaries: [3, 10], selected: [[3, 10]] });
  });

  it("maps a multi-segment extract range onto every covered segment", () => {
    const s = createState(20, { boundaries: [3, 10], selected: [[0, 10]] });
    expect([...s.selected].sort()).toEqual([0, 1]);
  });
});
