/** Wire types shared with the annotation service. */

export interface Turn {
  speaker: string;
  sentences: string[];
}

export interface Transcript {
  id: string;
  title?: string;
  turns: Turn[];
}

/** One saved segmentation, as stored on disk by the service. */
export interface SegmentationDoc {
  transcript_id?: string;
  annotator?: string;
  boundaries: number[];
  /** Extract ranges [start, end) in sentence indices. */
  selected?: [number, number][];
  revision?: number;
}

export function sentenceCount(transcript: Transcript): number {
  return transcript.turns.reduce((n, turn) => n + turn.sentences.length, 0);
}
