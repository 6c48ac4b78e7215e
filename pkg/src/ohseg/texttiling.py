"""TextTiling: block cosine similarity over fixed-size token-sequences,
smoothing, depth scoring, and threshold-based boundary selection, snapped
back to sentence gaps.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from . import preprocess
from .corpus import Transcript
from .errors import ParameterError, ValidationError


@dataclass(frozen=True)
class TextTilingParams:
    """Hearst defaults: w=20, k=10, one smoothing round of width 2,
    liberal threshold (mean - stddev of depth scores)."""

    w: int = 20
    k: int = 10
    smoothing_rounds: int = 1
    smoothing_width: int = 2
    cutoff: float | None = None  # None = liberal policy

    def __post_init__(self):
        if self.w < 1 or self.k < 1 or self.smoothing_width < 1:
            raise ParameterError("w, k and smoothing_width must be >= 1")
        if self.smoothing_rounds < 0:
            raise ParameterError("smoothing_rounds must be >= 0")


@dataclass(frozen=True)
class TokenSequence:
    tokens: tuple[str, ...]
    sentence_indices: tuple[int, ...]  # source sentence of each token


@dataclass(frozen=True)
class GapScoreSeries:
    """Per-gap scores plus the maps needed to place boundaries on sentences."""

    similarities: tuple[float, ...]
    depths: tuple[float, ...]
    gap_token_offsets: tuple[int, ...]
    gap_sentence_gaps: tuple[int, ...]
    threshold: float


def build_token_sequences(stream: list[tuple[str, int]], w: int) -> list[TokenSequence]:
    """Consecutive non-overlapping windows of exactly w tokens.

    ``stream`` pairs each token with its source sentence index. A final
    partial window is dropped. Fewer than two full windows cannot be tiled.
    """
    n_full = len(stream) // w
    if n_full < 2:
        raise ValidationError(
            f"transcript too short to tile: {len(stream)} tokens yield "
            f"{n_full} token-sequence(s) of size {w}, need at least 2")
    sequences = []
    for i in range(n_full):
        window = stream[i * w:(i + 1) * w]
        sequences.append(TokenSequence(
            tokens=tuple(t for t, _ in window),
            sentence_indices=tuple(s for _, s in window),
        ))
    return sequences


def _cosine(a: Counter, b: Counter) -> float:
    dot = sum(c * b[t] for t, c in a.items())
    na2 = sum(c * c for c in a.values())
    nb2 = sum(c * c for c in b.values())
    if na2 == 0 or nb2 == 0:
        return 0.0
    # integer squared norms keep cosine(x, x) exactly 1
    return dot / math.sqrt(na2 * nb2)


def gap_similarities(sequences: list[TokenSequence], k: int) -> list[float]:
    """Cosine similarity of the k-sequence blocks flanking each internal gap.

    Blocks at the ends use however many sequences are available, up to k.
    """
    if len(sequences) < 2:
        raise ValidationError("need at least 2 token-sequences")
    counts = [Counter(seq.tokens) for seq in sequences]
    sims = []
    for gap in range(len(sequences) - 1):
        left = Counter()
        for c in counts[max(0, gap + 1 - k):gap + 1]:
            left.update(c)
        right = Counter()
        for c in counts[gap + 1:gap + 1 + k]:
            right.update(c)
        sims.append(_cosine(left, right))
    return sims


def smooth(scores: list[float], width: int, rounds: int) -> list[float]:
    """Moving average of window 2*width+1, truncated at the ends."""
    out = list(scores)
    for _ in range(rounds):
        prev = out
        out = []
        for i in range(len(prev)):
            lo = max(0, i - width)
            hi = min(len(prev), i + width + 1)
            out.append(sum(prev[lo:hi]) / (hi - lo))
    return out


def depth_scores(scores: list[float]) -> list[float]:
    """Valley depth at each gap: rise to the nearest flanking peaks.

    Scanning away from the gap continues through plateaus and stops at the
    first decrease.
    """
    depths = []
    for g, s in enumerate(scores):
        lpeak = s
        i = g - 1
        while i >= 0 and scores[i] >= lpeak:
            lpeak = scores[i]
            i -= 1
        rpeak = s
        i = g + 1
        while i < len(scores) and scores[i] >= rpeak:
            rpeak = scores[i]
            i += 1
        depths.append((lpeak - s) + (rpeak - s))
    return depths


def liberal_threshold(depths: list[float]) -> float:
    mean = sum(depths) / len(depths)
    var = sum((d - mean) ** 2 for d in depths) / len(depths)
    return mean - math.sqrt(var)


def select_boundaries(depths: list[float],
                      gap_sentence_gaps: list[int],
                      cutoff: float | None = None) -> list[int]:
    """Threshold candidate gaps, merge near-adjacent candidates, snap to
    sentence gaps.

    Candidates must also have strictly positive depth: a flat gap is not a
    valley regardless of where the threshold lands.
    """
    if not depths:
        return []
    threshold = liberal_threshold(depths) if cutoff is None else cutoff
    candidates = [g for g, d in enumerate(depths) if d > threshold and d > 0.0]
    # adjacent candidates within one token-sequence keep only the deeper one
    # (ties keep the earlier); raising the cutoff can then only remove
    # boundaries, never add them
    cand_set = set(candidates)
    merged: list[int] = []
    for g in candidates:
        suppressed = False
        for other in (g - 1, g + 1):
            if other in cand_set:
                if depths[other] > depths[g] or \
                        (depths[other] == depths[g] and other < g):
                    suppressed = True
                    break
        if not suppressed:
            merged.append(g)
    boundaries = sorted({gap_sentence_gaps[g] for g in merged})
    return boundaries


def _nearest_sentence_gap(token_offset: int, sentence_starts: list[int],
                          n_sentences: int) -> int:
    """Sentence gap whose token offset is nearest; ties snap left."""
    best_gap = 1
    best_dist = None
    for gap in range(1, n_sentences):
        dist = abs(sentence_starts[gap] - token_offset)
        if best_dist is None or dist < best_dist:
            best_gap = gap
            best_dist = dist
    return best_gap


def analyze(transcript: Transcript, params: TextTilingParams,
            stopwords: frozenset[str]) -> GapScoreSeries:
    """Run the pipeline up to depth scoring and build the gap maps."""
    tokenized = preprocess.lexical_pipeline(transcript, stopwords)
    stream = [(tok, ts.sentence_index) for ts in tokenized for tok in ts.tokens]
    sequences = build_token_sequences(stream, params.w)

    # token offset at which sentence i starts, within the kept stream
    n = transcript.sentence_count
    sentence_starts = [0] * (n + 1)
    count = 0
    sent = 0
    for ts in tokenized:
        while sent < ts.sentence_index:
            sent += 1
            sentence_starts[sent] = count
        count += len(ts.tokens)
    for s in range(sent + 1, n + 1):
        sentence_starts[s] = count

    sims = gap_similarities(sequences, params.k)
    smoothed = smooth(sims, params.smoothing_width, params.smoothing_rounds)
    depths = depth_scores(smoothed)
    offsets = [(g + 1) * params.w for g in range(len(sims))]
    gap_map = [_nearest_sentence_gap(off, sentence_starts, n) for off in offsets]
    threshold = (liberal_threshold(depths) if params.cutoff is None
                 else params.cutoff)
    return GapScoreSeries(
        similarities=tuple(sims),
        depths=tuple(depths),
        gap_token_offsets=tuple(offsets),
        gap_sentence_gaps=tuple(gap_map),
        threshold=threshold,
    )


def segment(transcript: Transcript, params: TextTilingParams,
            stopwords: frozenset[str]) -> list[int]:
    """TextTiling boundaries for one transcript, as sentence gap indices."""
    series = analyze(transcript, params, stopwords)
    return select_boundaries(list(series.depths),
                             list(series.gap_sentence_gaps),
                             cutoff=params.cutoff)
