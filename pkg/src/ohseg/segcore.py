"""Common segmenter contract and the uniform baseline."""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import Corpus, length_statistics
from .errors import ParameterError, ValidationError


@dataclass(frozen=True)
class UniformParams:
    """Constant segment length in sentences; the evaluation's lower bound."""

    segment_length: int

    def __post_init__(self):
        if self.segment_length < 1:
            raise ParameterError("segment_length must be >= 1")


def uniform_segment(n_sentences: int, length: int) -> list[int]:
    """Boundaries at length, 2*length, ... strictly below n_sentences.

    The trailing remainder stays attached as a final, possibly short,
    segment.
    """
    if n_sentences < 1:
        raise ParameterError("n_sentences must be >= 1")
    if length < 1:
        raise ParameterError("length must be >= 1")
    return list(range(length, n_sentences, length))


def reference_segment_count(corpus: Corpus, transcript_id: str,
                            annotator: str = "original") -> int:
    """Segment count of the named annotator's segmentation for a transcript."""
    try:
        seg = corpus.segmentation(annotator, transcript_id)
    except KeyError:
        raise ValidationError(
            f"no reference segmentation by {annotator!r}",
            transcript_id=transcript_id, annotator=annotator) from None
    return seg.segment_count


def median_segment_length(corpus: Corpus,
                          annotators: list[str] | None = None,
                          transcript_id: str | None = None) -> int:
    """Median manual segment length used to size the uniform baseline.

    Corpus-global by default; pass ``transcript_id`` for the per-transcript
    variant. Even-count medians resolve to the lower middle value so the
    result stays an integer.
    """
    stats = length_statistics(corpus, annotators=annotators)
    if transcript_id is None:
        return stats.median
    if transcript_id not in stats.per_transcript_median:
        raise ValidationError("no manual segments for transcript",
                              transcript_id=transcript_id)
    return stats.per_transcript_median[transcript_id]
