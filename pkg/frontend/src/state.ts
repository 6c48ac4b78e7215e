/**
 * Pure UI state for the annotation task.
 *
 * Boundaries are sentence-gap indices (gap g splits sentence g-1 from
 * sentence g). Extract selection is per whole segment, which makes
 * overlapping extracts impossible by construction.
 */

import type { SegmentationDoc } from "./types.js";

export interface Segment {
  /** First sentence index (inclusive). */
  start: number;
  /** Last sentence index (exclusive). */
  end: number;
}

export interface UiState {
  sentenceCount: number;
  /** Sorted gap indices. */
  boundaries: number[];
  /** Indices into segments() of the segments marked as extracts. */
  selected: Set<number>;
  /** True when local edits have not been saved. */
  dirty: boolean;
  /** Last revision acknowledged by the server, if any. */
  revision: number | null;
}

export function createState(
  sentenceCount: number,
  doc?: SegmentationDoc,
): UiState {
  const state: UiState = {
    sentenceCount,
    boundaries: doc ? [...doc.boundaries].sort((a, b) => a - b) : [],
    selected: new Set(),
    dirty: false,
    revision: doc?.revision ?? null,
  };
  if (doc?.selected) {
    const segs = segments(state);
    for (const [start, end] of doc.selected) {
      segs.forEach((seg, i) => {
        if (start <= seg.start && seg.end <= end) {
          state.selected.add(i);
        }
      });
    }
  }
  return state;
}

/** Current segments, derived from the boundary set. */
export function segments(state: UiState): Segment[] {
  const cuts = [0, ...state.boundaries, state.sentenceCount];
  const out: Segment[] = [];
  for (let i = 0; i + 1 < cuts.length; i++) {
    out.push({ start: cuts[i]!, end: cuts[i + 1]! });
  }
  return out;
}

/** Segment index containing a sentence. */
export function segmentOfSentence(state: UiState, sentence: number): number {
  let i = 0;
  for (const b of state.boundaries) {
    if (sentence < b) break;
    i++;
  }
  return i;
}

/**
 * Place or remove the boundary at a gap.
 *
 * Toggling is an involution. When a split lands inside a selected segment,
 * both halves inherit the selection; when a removal merges two segments,
 * the merged segment stays selected if either half was.
 */
export function toggleBoundary(state: UiState, gap: number): UiState {
  if (!Number.isInteger(gap) || gap < 1 || gap > state.sentenceCount - 1) {
    throw new RangeError(
      `gap ${gap} outside valid range [1, ${state.sentenceCount - 1}]`,
    );
  }
  const existing = state.boundaries.indexOf(gap);
  const selected = new Set<number>();
  let boundaries: number[];

  if (existing >= 0) {
    // remove: segments existing and existing+1 merge
    boundaries = state.boundaries.filter((b) => b !== gap);
    for (const i of state.selected) {
      if (i <= existing) selected.add(i);
      else selected.add(i - 1);
    }
  } else {
    // insert: the segment containing the gap splits in two
    const split = segmentOfSentence(state, gap);
    boundaries = [...state.boundaries, gap].sort((a, b) => a - b);
    for (const i of state.selected) {
      if (i < split) selected.add(i);
      else if (i === split) {
        selected.add(split);
        selected.add(split + 1);
      } else selected.add(i + 1);
    }
  }
  return { ...state, boundaries, selected, dirty: true };
}

/** Toggle whether a segment is marked as a selected extract. */
export function toggleExtract(state: UiState, segmentIndex: number): UiState {
  const count = state.boundaries.length + 1;
  if (!Number.isInteger(segmentIndex) || segmentIndex < 0 || segmentIndex >= count) {
    throw new RangeError(`no segment ${segmentIndex} (have ${count})`);
  }
  const selected = new Set(state.selected);
  if (selected.has(segmentIndex)) selected.delete(segmentIndex);
  else selected.add(segmentIndex);
  return { ...state, selected, dirty: true };
}

/** Advisory length guidance: segments should average around 30-50 sentences. */
export type LengthHint = "short" | "long" | null;

export function lengthHint(segment: Segment): LengthHint {
  const length = segment.end - segment.start;
  if (length > 50) return "long";
  if (length < 30) return "short";
  return null;
}

/** Serialize the local state as a segmentation document for saving. */
export function toDoc(state: UiState): SegmentationDoc {
  const doc: SegmentationDoc = { boundaries: [...state.boundaries] };
  if (state.selected.size > 0) {
    doc.selected = segments(state)
      .map((seg): [number, number] => [seg.start, seg.end])
      .filter((_, i) => state.selected.has(i));
  }
  return doc;
}
