import math
import random

import pytest

from ohseg import texttiling
from ohseg.corpus import Transcript, Turn
from ohseg.errors import ValidationError
from ohseg.texttiling import (TextTilingParams, build_token_sequences,
                              depth_scores, gap_similarities,
                              select_boundaries, smooth)


def _stream(tokens, sentence_size=10):
    return [(tok, i // sentence_size) for i, tok in enumerate(tokens)]


def test_build_token_sequences_exact():
    seqs = build_token_sequences(_stream([f"t{i}" for i in range(100)]), 20)
    assert len(seqs) == 5
    assert all(len(s.tokens) == 20 for s in seqs)


def test_build_token_sequences_drops_partial():
    seqs = build_token_sequences(_stream([f"t{i}" for i in range(105)]), 20)
    assert len(seqs) == 5


def test_build_token_sequences_too_short():
    with pytest.raises(ValidationError, match="too short"):
        build_token_sequences(_stream([f"t{i}" for i in range(19)]), 20)


def _seqs_from_token_lists(lists):
    stream = [(tok, 0) for tokens in lists for tok in tokens]
    return build_token_sequences(stream, len(lists[0]))


def test_gap_similarity_identical_blocks():
    seqs = _seqs_from_token_lists([["a", "b"], ["a", "b"]])
    assert gap_similarities(seqs, 10) == [1.0]


def test_gap_similarity_disjoint_blocks():
    seqs = _seqs_from_token_lists([["a", "b"], ["c", "d"]])
    assert gap_similarities(seqs, 10) == [0.0]


def test_gap_similarity_hand_computed():
    # left {a:2}, right {a:1, b:1} -> 2 / (2 * sqrt(2))
    seqs = _seqs_from_token_lists([["a", "a"], ["a", "b"]])
    sims = gap_similarities(seqs, 10)
    assert sims[0] == pytest.approx(2 / (2 * math.sqrt(2)), abs=1e-12)


def test_gap_similarity_block_size_limits():
    # k=1: only the immediately flanking sequences matter
    seqs = _seqs_from_token_lists([["a", "a"], ["a", "b"], ["c", "c"]])
    sims = gap_similarities(seqs, 1)
    assert sims[0] == pytest.approx(2 / (2 * math.sqrt(2)))
    assert sims[1] == 0.0


def test_bag_of_words_permutation_invariance():
    rng = random.Random(7)
    tokens = [rng.choice("abcdef") for _ in range(80)]
    stream = _stream(tokens)
    seqs = build_token_sequences(stream, 10)
    base = gap_similarities(seqs, 3)
    # permute tokens inside each token-sequence
    shuffled = []
    for s in range(8):
        chunk = tokens[s * 10:(s + 1) * 10]
        rng.shuffle(chunk)
        shuffled.extend(chunk)
    seqs2 = build_token_sequences(_stream(shuffled), 10)
    assert gap_similarities(seqs2, 3) == pytest.approx(base)


def test_smooth_zero_rounds_identity():
    assert smooth([0.3, 0.9, 0.1], 2, 0) == [0.3, 0.9, 0.1]


def test_smooth_constant_unchanged():
    assert smooth([0.5] * 6, 2, 3) == pytest.approx([0.5] * 6)


def test_smooth_hand_computed():
    assert smooth([0, 1, 0], 1, 1) == pytest.approx([0.5, 1 / 3, 0.5])


def test_depth_scores_valley():
    assert depth_scores([1.0, 0.0, 1.0]) == pytest.approx([0.0, 2.0, 0.0])


def test_depth_scores_constant():
    assert depth_scores([0.4] * 5) == [0.0] * 5


def test_depth_scores_monotone_series():
    depths = depth_scores([0.1, 0.2, 0.3, 0.4])
    assert depths[0] == pytest.approx(0.3)  # right peak only
    assert depths[-1] == 0.0


def test_depth_scores_plateau_continues_rise():
    # plateau on the way up still reaches the far peak
    depths = depth_scores([0.9, 0.9, 0.1, 0.5, 0.5, 0.9])
    assert depths[2] == pytest.approx((0.9 - 0.1) + (0.9 - 0.1))


def test_select_boundaries_all_equal_depths():
    assert select_boundaries([0.5, 0.5, 0.5], [1, 2, 3]) == []


def test_select_boundaries_merges_adjacent():
    depths = [0.0, 0.6, 0.9, 0.0, 0.0, 0.8, 0.0]
    gaps = [1, 2, 3, 4, 5, 6, 7]
    got = select_boundaries(depths, gaps, cutoff=0.5)
    assert got == [3, 6]  # 1-2 adjacent chain keeps the deeper gap 2 -> snaps 3


def test_select_boundaries_custom_cutoff_monotone():
    depths = [0.1, 0.6, 0.2, 0.9, 0.05]
    gaps = [1, 2, 3, 4, 5]
    prev = None
    for cutoff in [0.0, 0.3, 0.7, 1.0]:
        got = set(select_boundaries(depths, gaps, cutoff=cutoff))
        if prev is not None:
            assert got <= prev
        prev = got


def _two_topic_transcript(sentences_per_half=60, tokens_per_sentence=10):
    half_a = ["xa" + str(j) for j in range(tokens_per_sentence)]
    half_b = ["xb" + str(j) for j in range(tokens_per_sentence)]
    sents = [" ".join(half_a) + "." for _ in range(sentences_per_half)]
    sents += [" ".join(half_b) + "." for _ in range(sentences_per_half)]
    return Transcript(id="synthetic",
                      turns=(Turn(speaker="R", sentences=tuple(sents)),))


def test_planted_boundary_recovery(stopwords):
    t = _two_topic_transcript()
    params = TextTilingParams()  # Hearst defaults, liberal threshold
    boundaries = texttiling.segment(t, params, stopwords)
    assert len(boundaries) == 1
    # within w tokens of the true midpoint (10 tokens per sentence)
    assert abs(boundaries[0] * 10 - 600) <= params.w


def test_constant_document_no_boundaries(stopwords):
    sents = tuple("mill mill mill mill mill mill mill mill mill mill."
                  for _ in range(60))
    t = Transcript(id="flat", turns=(Turn(speaker="R", sentences=sents),))
    assert texttiling.segment(t, TextTilingParams(), stopwords) == []


def test_segment_output_validates(stopwords):
    t = _two_topic_transcript(30, 10)
    boundaries = texttiling.segment(t, TextTilingParams(), stopwords)
    n = t.sentence_count
    assert all(1 <= b <= n - 1 for b in boundaries)
    assert boundaries == sorted(set(boundaries))


def test_determinism(stopwords):
    t = _two_topic_transcript()
    p = TextTilingParams()
    assert texttiling.segment(t, p, stopwords) == \
        texttiling.segment(t, p, stopwords)
