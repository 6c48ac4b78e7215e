/**
 * HTML rendering for the transcript view and the segment sidebar.
 *
 * Pure string -> string so the markup is testable without a DOM. The app
 * shell attaches event handlers by delegation on data-* attributes.
 */

import { lengthHint, segmentOfSentence, segments, UiState } from "./state.js";
import type { Transcript } from "./types.js";

export interface RenderOptions {
  /** Show the advisory 30-50 sentence length hints (default true). */
  hints?: boolean;
}

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function gapButton(gap: number, on: boolean): string {
  const cls = on ? "gap boundary-on" : "gap";
  const label = on
    ? `remove boundary at gap ${gap}`
    : `place boundary at gap ${gap}`;
  return (
    `<button type="button" class="${cls}" data-gap="${gap}"` +
    ` aria-pressed="${on}" aria-label="${label}"></button>`
  );
}

/**
 * Transcript body: speaker labels and sentences only, with one clickable
 * gap between every adjacent sentence pair — including mid-turn gaps.
 */
export function renderTranscript(
  transcript: Transcript,
  state: UiState,
): string {
  const on = new Set(state.boundaries);
  const parts: string[] = ['<article class="transcript">'];
  let sentence = 0;
  for (const turn of transcript.turns) {
    parts.push('<section class="turn">');
    parts.push(`<h3 class="speaker">${escapeHtml(turn.speaker)}</h3>`);
    for (const text of turn.sentences) {
      if (sentence > 0) {
        parts.push(gapButton(sentence, on.has(sentence)));
      }
      const segment = segmentOfSentence(state, sentence);
      const cls = state.selected.has(segment)
        ? "sentence selected"
        : "sentence";
      parts.push(
        `<span class="${cls}" data-sentence="${sentence}"` +
          ` data-segment="${segment}">${escapeHtml(text)}</span>`,
      );
      sentence++;
    }
    parts.push("</section>");
  }
  parts.push("</article>");
  return parts.join("\n");
}

/** Sidebar: one row per segment with live length readout and hints. */
export function renderSegmentList(
  state: UiState,
  options: RenderOptions = {},
): string {
  const hints = options.hints !== false;
  const rows = segments(state).map((seg, i) => {
    const length = seg.end - seg.start;
    const hint = hints ? lengthHint(seg) : null;
    const classes = ["segment-row"];
    if (state.selected.has(i)) classes.push("selected");
    if (hint) classes.push(`hint-${hint}`);
    const hintText =
      hint === "long"
        ? ' <em class="hint">long — consider splitting</em>'
        : hint === "short"
          ? ' <em class="hint">short</em>'
          : "";
    return (
      `<li class="${classes.join(" ")}">` +
      `<button type="button" class="extract-toggle" data-segment="${i}"` +
      ` aria-pressed="${state.selected.has(i)}">` +
      `Segment ${i + 1}: sentences ${seg.start + 1}–${seg.end}` +
      ` (${length})</button>${hintText}</li>`
    );
  });
  return `<ul class="segments">\n${rows.join("\n")}\n</ul>`;
}
