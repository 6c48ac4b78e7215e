"""Bayesian segmenter: per-segment Dirichlet-compound-multinomial marginal
likelihood over noun tokens, with globally optimal dynamic-programming
placement of a fixed number of boundaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from . import preprocess
from .corpus import Transcript
from .errors import ParameterError, ValidationError

lgamma = math.lgamma


@dataclass(frozen=True)
class BayesSegParams:
    """k = desired segment count; alpha = symmetric Dirichlet concentration."""

    k: int
    alpha: float = 0.2
    estimate_alpha: bool = False

    def __post_init__(self):
        if self.k < 1:
            raise ParameterError("k must be >= 1")
        if self.alpha <= 0:
            raise ParameterError("alpha must be > 0")


@dataclass(frozen=True)
class SentenceBags:
    """Per-sentence token-count maps over a shared integer vocabulary."""

    vocab: tuple[str, ...]
    sentences: tuple[tuple[tuple[int, int], ...], ...]  # (word_id, count) pairs

    @property
    def vocab_size(self) -> int:
        return len(self.vocab)

    @property
    def sentence_count(self) -> int:
        return len(self.sentences)

    @property
    def total_tokens(self) -> int:
        return sum(c for s in self.sentences for _, c in s)


def bags_from_token_lists(token_lists: Sequence[Sequence[str]]) -> SentenceBags:
    vocab: dict[str, int] = {}
    sentences = []
    for tokens in token_lists:
        counts: dict[int, int] = {}
        for tok in tokens:
            wid = vocab.setdefault(tok, len(vocab))
            counts[wid] = counts.get(wid, 0) + 1
        sentences.append(tuple(sorted(counts.items())))
    return SentenceBags(vocab=tuple(vocab), sentences=tuple(sentences))


def build_bags(transcript: Transcript, stopwords: frozenset[str]) -> SentenceBags:
    """Noun-filtered per-sentence bags for one transcript."""
    tokenized = preprocess.noun_pipeline(transcript, stopwords)
    return bags_from_token_lists([ts.tokens for ts in tokenized])


def dcm_log_likelihood(token_counts: Mapping[int, int] | Sequence[int],
                       alpha: float, vocab_size: int) -> float:
    """Log marginal likelihood of a bag of words under a multinomial with a
    symmetric Dirichlet(alpha) prior over vocab_size words.

    logG(V*a) - logG(V*a + N) + sum over seen words of
    [logG(a + n_w) - logG(a)].
    """
    if alpha <= 0:
        raise ParameterError("alpha must be > 0")
    if vocab_size < 1:
        raise ParameterError("vocab_size must be >= 1")
    counts = (token_counts.values() if isinstance(token_counts, Mapping)
              else token_counts)
    total = 0
    term = 0.0
    for c in counts:
        if c < 0:
            raise ParameterError("token counts must be >= 0")
        if c > 0:
            total += c
            term += lgamma(alpha + c) - lgamma(alpha)
    va = vocab_size * alpha
    return lgamma(va) - lgamma(va + total) + term


def _segment_likelihood_table(bags: SentenceBags, alpha: float) -> list[list[float]]:
    """L[s][t] = DCM log-likelihood of the segment of sentences [s, t),
    built with incremental count updates."""
    n = bags.sentence_count
    v = max(bags.vocab_size, 1)
    va = v * alpha
    lg_alpha = lgamma(alpha)
    lg_va = lgamma(va)
    table: list[list[float]] = []
    for s in range(n):
        row = [0.0] * (n + 1)
        counts: dict[int, int] = {}
        total = 0
        term = 0.0
        for t in range(s + 1, n + 1):
            for wid, c in bags.sentences[t - 1]:
                old = counts.get(wid, 0)
                if old:
                    term -= lgamma(alpha + old) - lg_alpha
                counts[wid] = old + c
                term += lgamma(alpha + old + c) - lg_alpha
                total += c
            row[t] = lg_va - lgamma(va + total) + term
        table.append(row)
    return table


def map_segmentation(bags: SentenceBags, params: BayesSegParams) -> list[int]:
    """Boundaries maximizing the summed segment DCM log-likelihood.

    Exactly params.k segments; ties broken toward the earliest boundary at
    every argmax, which makes the result deterministic.
    """
    n = bags.sentence_count
    k = params.k
    if k > n:
        raise ParameterError(f"k={k} exceeds sentence count {n}")
    if bags.total_tokens == 0:
        raise ValidationError(
            "no tokens survive preprocessing; check the tokenize/stopword/"
            "stem/noun pipeline before segmenting")
    if k == 1:
        return []
    table = _segment_likelihood_table(bags, params.alpha)
    neg = -math.inf
    best = [[neg] * (n + 1) for _ in range(k + 1)]
    parent = [[0] * (n + 1) for _ in range(k + 1)]
    best[0][0] = 0.0
    for ki in range(1, k + 1):
        for t in range(ki, n - (k - ki) + 1):
            b = neg
            arg = -1
            for s in range(ki - 1, t):
                prev = best[ki - 1][s]
                if prev == neg:
                    continue
                cand = prev + table[s][t]
                if cand > b:
                    b = cand
                    arg = s
            best[ki][t] = b
            parent[ki][t] = arg
    boundaries = []
    t = n
    for ki in range(k, 0, -1):
        s = parent[ki][t]
        if s > 0:
            boundaries.append(s)
        t = s
    boundaries.reverse()
    return boundaries


def total_log_likelihood(bags: SentenceBags, boundaries: Sequence[int],
                         alpha: float) -> float:
    """Sum of per-segment DCM log-likelihoods, recomputed from scratch."""
    n = bags.sentence_count
    v = max(bags.vocab_size, 1)
    edges = [0, *boundaries, n]
    total = 0.0
    for a, b in zip(edges, edges[1:]):
        counts: dict[int, int] = {}
        for t in range(a, b):
            for wid, c in bags.sentences[t]:
                counts[wid] = counts.get(wid, 0) + c
        total += dcm_log_likelihood(counts, alpha, v)
    return total


def _golden_section(f, lo: float, hi: float, tol: float = 1e-4,
                    max_iter: int = 100) -> float:
    """Maximize f over [lo, hi] by golden-section search."""
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - phi * (b - a)
    d = a + phi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a < tol:
            break
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + phi * (b - a)
            fd = f(d)
    return c if fc > fd else d


@dataclass(frozen=True)
class AlphaEstimate:
    alpha: float
    boundaries: tuple[int, ...]
    log_likelihood: float
    converged: bool


def estimate_alpha(bags: SentenceBags, k: int,
                   alpha0: float = 0.2,
                   search_range: tuple[float, float] = (1e-3, 10.0),
                   rel_tol: float = 1e-3,
                   max_iter: int = 20) -> AlphaEstimate:
    """Alternate MAP segmentation with a golden-section search over log alpha.

    Each alternation holds the current segmentation fixed while searching
    alpha, then re-segments; the total log-likelihood never decreases.
    """
    lo, hi = math.log(search_range[0]), math.log(search_range[1])
    alpha = alpha0
    boundaries = map_segmentation(bags, BayesSegParams(k=k, alpha=alpha))
    ll = total_log_likelihood(bags, boundaries, alpha)
    converged = False
    for _ in range(max_iter):
        def fixed_seg_ll(log_a: float) -> float:
            return total_log_likelihood(bags, boundaries, math.exp(log_a))

        new_log_a = _golden_section(fixed_seg_ll, lo, hi)
        new_alpha = math.exp(new_log_a)
        if fixed_seg_ll(new_log_a) < ll:
            new_alpha = alpha  # keep current alpha if the search did not improve
        new_boundaries = map_segmentation(bags, BayesSegParams(k=k, alpha=new_alpha))
        new_ll = total_log_likelihood(bags, new_boundaries, new_alpha)
        if new_ll < ll:
            break
        moved = abs(new_alpha - alpha) / max(alpha, 1e-12)
        alpha, boundaries, ll = new_alpha, list(new_boundaries), new_ll
        if moved < rel_tol:
            converged = True
            break
    return AlphaEstimate(alpha=alpha, boundaries=tuple(boundaries),
                         log_likelihood=ll, converged=converged)


def segment(transcript: Transcript, params: BayesSegParams,
            stopwords: frozenset[str]) -> list[int]:
    """BayesSeg boundaries for one transcript, as sentence gap indices."""
    bags = build_bags(transcript, stopwords)
    if params.estimate_alpha:
        return list(estimate_alpha(bags, params.k, alpha0=params.alpha).boundaries)
    return map_segmentation(bags, params)
