/**
 * Client-side segmentation validation.
 *
 * Mirrors the server's rules exactly; the shared vector file
 * (../shared/segmentation-vectors.json) is run against both sides to keep
 * them in lockstep. Boundaries are sentence-gap indices: gap g separates
 * sentence g-1 from sentence g, so valid gaps are 1..n-1.
 */

export interface CandidateDoc {
  boundaries: unknown;
  selected?: unknown;
}

/** Returns a list of violations; empty means the document is valid. */
export function validateSegmentation(
  doc: CandidateDoc,
  sentenceCount: number,
): string[] {
  const violations: string[] = [];
  const n = sentenceCount;

  if (!Array.isArray(doc.boundaries)) {
    return ["boundaries must be an array of gap indices"];
  }
  let prev = 0;
  for (const b of doc.boundaries) {
    if (typeof b !== "number" || !Number.isInteger(b)) {
      violations.push(`boundary ${b} is not an integer`);
      continue;
    }
    if (b < 1 || b > n - 1) {
      violations.push(`boundary ${b} outside valid gap range [1, ${n - 1}]`);
      continue;
    }
    if (b <= prev) {
      violations.push(
        `boundaries must be strictly increasing (saw ${b} after ${prev})`,
      );
    }
    prev = b;
  }
  if (violations.length > 0) {
    return violations;
  }

  if (doc.selected !== undefined && doc.selected !== null) {
    if (!Array.isArray(doc.selected)) {
      return ["selected must be an array of [start, end) ranges"];
    }
    const cutPoints = new Set<number>([0, n, ...(doc.boundaries as number[])]);
    let prevEnd = 0;
    for (const range of doc.selected) {
      if (
        !Array.isArray(range) ||
        range.length !== 2 ||
        !range.every((x) => typeof x === "number" && Number.isInteger(x))
      ) {
        violations.push("each extract must be an integer [start, end) pair");
        continue;
      }
      const [start, end] = range as [number, number];
      if (!(0 <= start && start < end && end <= n)) {
        violations.push(
          `selected range [${start}, ${end}) is not a valid sentence range`,
        );
        continue;
      }
      if (start < prevEnd) {
        violations.push("extracts overlap");
      }
      if (!cutPoints.has(start) || !cutPoints.has(end)) {
        violations.push(
          `selected range [${start}, ${end}) endpoints must coincide ` +
            "with a boundary, 0, or the sentence count",
        );
      }
      prevEnd = end;
    }
  }
  return violations;
}
