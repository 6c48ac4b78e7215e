/**
 * Annotation-service client. Only the service's HTTP API is used; the
 * fetch function is injectable for tests.
 */

import type { SegmentationDoc, Transcript } from "./types.js";

export type FetchLike = (
  input: string,
  init?: RequestInit,
) => Promise<Response>;

export interface SaveOutcome {
  ok: boolean;
  /** Revision acknowledged by the server on success. */
  revision?: number;
  /** Validation violations reported by the server (HTTP 400). */
  violations?: string[];
  /**
   * True when the acknowledged revision jumped past the expected one:
   * someone else saved this segmentation in the meantime.
   */
  conflict?: boolean;
}

export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  async listTranscripts(): Promise<
    { id: string; title?: string; sentence_count: number }[]
  > {
    const resp = await this.fetchFn(`${this.baseUrl}/api/transcripts`);
    if (!resp.ok) throw new Error(`transcript list failed: ${resp.status}`);
    return resp.json();
  }

  async getTranscript(id: string): Promise<Transcript> {
    const resp = await this.fetchFn(
      `${this.baseUrl}/api/transcripts/${encodeURIComponent(id)}`,
    );
    if (!resp.ok) throw new Error(`transcript fetch failed: ${resp.status}`);
    return resp.json();
  }

  /** Returns null when no segmentation has been saved yet. */
  async getSegmentation(
    annotator: string,
    transcriptId: string,
  ): Promise<SegmentationDoc | null> {
    const resp = await this.fetchFn(this.segUrl(annotator, transcriptId));
    if (resp.status === 404) return null;
    if (!resp.ok) throw new Error(`segmentation fetch failed: ${resp.status}`);
    return resp.json();
  }

  /**
   * PUT the segmentation. `expectedRevision` is the last revision this
   * client saw plus one; a larger acknowledged revision means a concurrent
   * save happened and the caller should warn before continuing.
   */
  async saveSegmentation(
    annotator: string,
    transcriptId: string,
    doc: SegmentationDoc,
    lastRevision: number | null,
  ): Promise<SaveOutcome> {
    const resp = await this.fetchFn(this.segUrl(annotator, transcriptId), {
      method: "PUT",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(doc),
    });
    if (resp.status === 400) {
      const body = await resp.json();
      return { ok: false, violations: body.violations ?? ["invalid save"] };
    }
    if (!resp.ok) throw new Error(`save failed: ${resp.status}`);
    const body = await resp.json();
    const revision: number = body.revision;
    const expected = lastRevision === null ? 1 : lastRevision + 1;
    return { ok: true, revision, conflict: revision > expected };
  }

  private segUrl(annotator: string, transcriptId: string): string {
    return (
      `${this.baseUrl}/api/segmentations/` +
      `${encodeURIComponent(annotator)}/${encodeURIComponent(transcriptId)}`
    );
  }
}
