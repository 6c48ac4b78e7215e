/**
 * App shell: wires the pure state/render modules to the DOM and the
 * annotation service. URL parameters:
 *
 *   ?annotator=NAME   annotator id used for loading and saving (required)
 *   ?transcript=ID    transcript to open (default: first in the list)
 *   ?hints=off        hide the advisory segment-length hints
 */

import { ApiClient } from "./api.js";
import { renderSegmentList, renderTranscript } from "./render.js";
import {
  createState,
  toDoc,
  toggleBoundary,
  toggleExtract,
  UiState,
} from "./state.js";
import { sentenceCount, Transcript } from "./types.js";
import { validateSegmentation } from "./validate.js";

interface App {
  state: UiState;
  transcript: Transcript;
  annotator: string;
}

function byId(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el;
}

function rerender(app: App, hints: boolean): void {
  byId("transcript").innerHTML = renderTranscript(app.transcript, app.state);
  byId("segments").innerHTML = renderSegmentList(app.state, { hints });
  const violations = validateSegmentation(toDoc(app.state), app.state.sentenceCount);
  const save = byId("save") as HTMLButtonElement;
  save.disabled = !app.state.dirty || violations.length > 0;
  byId("status").textContent = violations.length
    ? violations.join("; ")
    : app.state.dirty
      ? "unsaved changes"
      : "saved";
}

function showBanner(text: string, retry?: () => void): void {
  const banner = byId("banner");
  banner.textContent = text;
  banner.hidden = false;
  if (retry) {
    const button = document.createElement("button");
    button.textContent = "retry";
    button.addEventListener("click", () => {
      banner.hidden = true;
      retry();
    });
    banner.append(" ", button);
  }
}

async function boot(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const annotator = params.get("annotator");
  if (!annotator) {
    showBanner("add ?annotator=YOURNAME to the URL to begin");
    return;
  }
  const hints = params.get("hints") !== "off";
  const api = new ApiClient();

  let transcript: Transcript;
  let saved;
  try {
    const listed = await api.listTranscripts();
    const id = params.get("transcript") ?? listed[0]?.id;
    if (!id) {
      showBanner("corpus has no transcripts");
      return;
    }
    transcript = await api.getTranscript(id);
    saved = await api.getSegmentation(annotator, transcript.id);
  } catch {
    showBanner("could not reach the annotation service", () => void boot());
    return;
  }

  const app: App = {
    transcript,
    annotator,
    state: createState(sentenceCount(transcript), saved ?? undefined),
  };
  byId("title").textContent = transcript.title ?? transcript.id;
  rerender(app, hints);

  document.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    const gap = target.dataset.gap;
    const segment = target.closest<HTMLElement>(".extract-toggle")?.dataset
      .segment;
    if (gap !== undefined) {
      app.state = toggleBoundary(app.state, Number(gap));
      rerender(app, hints);
    } else if (segment !== undefined) {
      app.state = toggleExtract(app.state, Number(segment));
      rerender(app, hints);
    }
  });

  // keyboard-only operation: gaps and segment rows are buttons (Enter and
  // Space already toggle); arrows move focus between gap affordances
  document.addEventListener("keydown", (event) => {
    if (event.key !== "ArrowLeft" && event.key !== "ArrowRight") return;
    const gaps = [...document.querySelectorAll<HTMLElement>("button.gap")];
    const index = gaps.indexOf(document.activeElement as HTMLElement);
    if (index < 0) return;
    const next = gaps[index + (event.key === "ArrowRight" ? 1 : -1)];
    next?.focus();
    event.preventDefault();
  });

  byId("save").addEventListener("click", async () => {
    let outcome;
    try {
      outcome = await api.saveSegmentation(
        app.annotator,
        app.transcript.id,
        toDoc(app.state),
        app.state.revision,
      );
    } catch {
      showBanner("save failed: service unreachable (your work is kept)");
      return;
    }
    if (!outcome.ok) {
      byId("status").textContent =
        `rejected: ${(outcome.violations ?? []).join("; ")}`;
      return;
    }
    app.state = { ...app.state, dirty: false, revision: outcome.revision! };
    rerender(app, hints);
    if (outcome.conflict) {
      showBanner(
        "warning: this segmentation was saved elsewhere in the meantime; " +
          "your save overwrote it",
      );
    }
  });
}

void boot();
