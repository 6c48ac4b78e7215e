"""Boundary-pair comparison with near-miss handling, boundary similarity,
micro-averaging over boundary pairs, error-type counts, and chance-corrected
multi-annotator agreement.

All scores are reported as boundary SIMILARITY: 1 = perfect agreement,
0 = no agreement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import DegenerateDataError, ValidationError

DEFAULT_NT = 9


@dataclass(frozen=True)
class BoundaryComparison:
    """Classified pairing of two boundary sets under transposition window n_t."""

    matches: tuple[int, ...]
    near_misses: tuple[tuple[int, int, int], ...]  # (pos_a, pos_b, offset)
    misses_a: tuple[int, ...]
    misses_b: tuple[int, ...]
    n_t: int

    @property
    def total_distance(self) -> int:
        return sum(d for _, _, d in self.near_misses)

    @property
    def pair_count(self) -> int:
        return (len(self.matches) + len(self.near_misses)
                + len(self.misses_a) + len(self.misses_b))

    def observations(self) -> list[float]:
        """One score per classified boundary pair: 1, 1 - d/n_t, or 0."""
        return ([1.0] * len(self.matches)
                + [1.0 - d / self.n_t for _, _, d in self.near_misses]
                + [0.0] * (len(self.misses_a) + len(self.misses_b)))


def _check_boundaries(name: str, boundaries: Sequence[int]) -> list[int]:
    b = list(boundaries)
    for x, y in zip(b, b[1:]):
        if y <= x:
            raise ValidationError(
                f"{name} boundaries must be strictly increasing")
    return b


def compare_boundaries(a: Sequence[int], b: Sequence[int],
                       n_t: int = DEFAULT_NT) -> BoundaryComparison:
    """Minimal-cost classification of two boundary sets.

    Exact-position matches pair first; the sorted residual lists are paired
    by a non-crossing dynamic program minimizing (unpaired count, total
    transposition distance) lexicographically, with pairs at distance
    >= n_t forbidden.
    """
    if n_t < 1:
        raise ValidationError("n_t must be >= 1")
    a = _check_boundaries("a", a)
    b = _check_boundaries("b", b)
    exact = sorted(set(a) & set(b))
    ra = [x for x in a if x not in set(exact)]
    rb = [x for x in b if x not in set(exact)]
    m, n = len(ra), len(rb)
    big = (m + n + 1, 0)
    # cost[i][j]: best (unpaired, distance) for ra[:i] vs rb[:j]
    cost = [[big] * (n + 1) for _ in range(m + 1)]
    cost[0][0] = (0, 0)
    for j in range(1, n + 1):
        cost[0][j] = (j, 0)
    for i in range(1, m + 1):
        cost[i][0] = (i, 0)
        for j in range(1, n + 1):
            d = abs(ra[i - 1] - rb[j - 1])
            best = (cost[i - 1][j][0] + 1, cost[i - 1][j][1])
            skip_b = (cost[i][j - 1][0] + 1, cost[i][j - 1][1])
            if skip_b < best:
                best = skip_b
            if d < n_t:
                pair = (cost[i - 1][j - 1][0], cost[i - 1][j - 1][1] + d)
                if pair < best:
                    best = pair
            cost[i][j] = best
    # reconstruct, preferring pairing so near misses are listed explicitly
    near = []
    ma, mb = [], []
    i, j = m, n
    while i > 0 or j > 0:
        here = cost[i][j]
        if i > 0 and j > 0:
            d = abs(ra[i - 1] - rb[j - 1])
            if d < n_t and here == (cost[i - 1][j - 1][0],
                                    cost[i - 1][j - 1][1] + d):
                near.append((ra[i - 1], rb[j - 1], d))
                i -= 1
                j -= 1
                continue
        if i > 0 and here == (cost[i - 1][j][0] + 1, cost[i - 1][j][1]):
            ma.append(ra[i - 1])
            i -= 1
            continue
        mb.append(rb[j - 1])
        j -= 1
    return BoundaryComparison(
        matches=tuple(exact),
        near_misses=tuple(sorted(near)),
        misses_a=tuple(sorted(ma)),
        misses_b=tuple(sorted(mb)),
        n_t=n_t,
    )


def boundary_similarity(cmp: BoundaryComparison) -> float:
    """Normalized agreement over classified boundary pairs, in [0, 1].

    Two empty boundary sets compare as 1 by convention (full agreement on
    placing nothing); this case never occurs in real reports but is flagged
    there when it does.
    """
    obs = cmp.observations()
    if not obs:
        return 1.0
    return sum(obs) / len(obs)


def micro_average_pairs(comparisons: Iterable[BoundaryComparison]
                        ) -> tuple[float, float, int]:
    """Pool boundary-pair observations and return (mean, 95% CI half-width, n)."""
    pooled: list[float] = []
    for cmp in comparisons:
        pooled.extend(cmp.observations())
    n = len(pooled)
    if n == 0:
        raise DegenerateDataError("no boundary pairs to average")
    mean = sum(pooled) / n
    if n < 2:
        return mean, 0.0, n
    var = sum((x - mean) ** 2 for x in pooled) / (n - 1)
    half = 1.96 * math.sqrt(var / n)
    return mean, half, n


@dataclass(frozen=True)
class AgreementReport:
    micro_mean: float
    ci_half_width: float
    n: int
    actual_agreement: float
    expected_agreement: float
    pi_star: float
    n_t: int
    scaling: str = "linear (1 - d/n_t)"


def fleiss_pi_star(boundaries_by_transcript: Mapping[str, Mapping[str, Sequence[int]]],
                   potential_by_transcript: Mapping[str, int],
                   n_t: int = DEFAULT_NT,
                   per_annotator_rates: bool = False) -> AgreementReport:
    """Chance-corrected multi-annotator agreement over boundary pairs.

    Actual agreement is the micro-average over all annotator pairs on each
    shared transcript. Expected agreement is p^2 with p the pooled boundary
    placement rate; ``per_annotator_rates`` averages p_i * p_j over
    annotator pairs instead.
    """
    annotators = sorted({ann for per_t in boundaries_by_transcript.values()
                         for ann in per_t})
    if len(annotators) < 2:
        raise ValidationError("agreement requires at least 2 annotators")
    comparisons = []
    for tid in sorted(boundaries_by_transcript):
        per_t = boundaries_by_transcript[tid]
        for u, v in combinations(sorted(per_t), 2):
            comparisons.append(compare_boundaries(per_t[u], per_t[v], n_t))
    mean, half, n = micro_average_pairs(comparisons)

    placed: dict[str, int] = {ann: 0 for ann in annotators}
    potential: dict[str, int] = {ann: 0 for ann in annotators}
    for tid, per_t in boundaries_by_transcript.items():
        for ann, bounds in per_t.items():
            placed[ann] += len(bounds)
            potential[ann] += potential_by_transcript[tid]
    if per_annotator_rates:
        rates = {ann: placed[ann] / potential[ann] if potential[ann] else 0.0
                 for ann in annotators}
        pairs = list(combinations(annotators, 2))
        a_e = sum(rates[u] * rates[v] for u, v in pairs) / len(pairs)
    else:
        total_placed = sum(placed.values())
        total_potential = sum(potential.values())
        p = total_placed / total_potential if total_potential else 0.0
        a_e = p * p
    if a_e >= 1.0:
        raise DegenerateDataError(
            "expected agreement is 1 (a boundary at every gap by everyone); "
            "pi* is undefined")
    pi_star = (mean - a_e) / (1.0 - a_e)
    return AgreementReport(
        micro_mean=mean, ci_half_width=half, n=n,
        actual_agreement=mean, expected_agreement=a_e,
        pi_star=pi_star, n_t=n_t,
    )


def error_type_counts(hypothesis: Sequence[int],
                      references: Iterable[Sequence[int]],
                      n_t: int = DEFAULT_NT) -> dict[str, int]:
    """Match / near-miss / false-positive / false-negative counts, summed
    over references; hypothesis-only misses are false positives."""
    counts = {"matches": 0, "near_misses": 0,
              "false_positives": 0, "false_negatives": 0}
    for ref in references:
        cmp = compare_boundaries(hypothesis, ref, n_t)
        counts["matches"] += len(cmp.matches)
        counts["near_misses"] += len(cmp.near_misses)
        counts["false_positives"] += len(cmp.misses_a)
        counts["false_negatives"] += len(cmp.misses_b)
    return counts


@dataclass(frozen=True)
class Observation:
    """One boundary-pair observation; the unit of all micro-averages."""

    algorithm: str
    annotator: str
    transcript_id: str
    category: str  # match | near_miss | false_positive | false_negative
    offset: int
    score: float


@dataclass(frozen=True)
class EvalReport:
    algorithm: str
    n_t: int
    observations: tuple[Observation, ...]
    pooled_mean: float
    pooled_ci_half_width: float
    pooled_n: int
    per_annotator: dict = field(compare=False, default_factory=dict)
    per_transcript: dict = field(compare=False, default_factory=dict)
    error_counts: dict = field(compare=False, default_factory=dict)


def _summarize(scores: list[float]) -> tuple[float, float, int]:
    n = len(scores)
    mean = sum(scores) / n
    if n < 2:
        return mean, 0.0, n
    var = sum((x - mean) ** 2 for x in scores) / (n - 1)
    return mean, 1.96 * math.sqrt(var / n), n


def evaluate_segmenter(algorithm: str,
                       hypotheses: Mapping[str, Sequence[int]],
                       references: Mapping[str, Mapping[str, Sequence[int]]],
                       n_t: int = DEFAULT_NT) -> EvalReport:
    """Compare one algorithm's boundaries to every manual segmentation.

    ``hypotheses`` maps transcript id to boundary list; ``references`` maps
    transcript id to {annotator: boundaries}. Each classified boundary pair
    becomes one pooled observation.
    """
    missing = sorted(set(references) - set(hypotheses))
    if missing:
        raise ValidationError(
            f"missing hypotheses for transcripts: {', '.join(missing)}")
    observations: list[Observation] = []
    errors = {"matches": 0, "near_misses": 0,
              "false_positives": 0, "false_negatives": 0}
    for tid in sorted(references):
        hyp = hypotheses[tid]
        for ann in sorted(references[tid]):
            cmp = compare_boundaries(hyp, references[tid][ann], n_t)
            for pos in cmp.matches:
                observations.append(Observation(algorithm, ann, tid,
                                                "match", 0, 1.0))
            for pa, pb, d in cmp.near_misses:
                observations.append(Observation(algorithm, ann, tid,
                                                "near_miss", d, 1.0 - d / n_t))
            for pos in cmp.misses_a:
                observations.append(Observation(algorithm, ann, tid,
                                                "false_positive", 0, 0.0))
            for pos in cmp.misses_b:
                observations.append(Observation(algorithm, ann, tid,
                                                "false_negative", 0, 0.0))
            errors["matches"] += len(cmp.matches)
            errors["near_misses"] += len(cmp.near_misses)
            errors["false_positives"] += len(cmp.misses_a)
            errors["false_negatives"] += len(cmp.misses_b)
    if not observations:
        raise DegenerateDataError("no boundary pairs produced by evaluation")
    pooled_mean, pooled_half, pooled_n = _summarize(
        [o.score for o in observations])
    per_annotator = {}
    for ann in sorted({o.annotator for o in observations}):
        per_annotator[ann] = _summarize(
            [o.score for o in observations if o.annotator == ann])
    per_transcript = {}
    for tid in sorted({o.transcript_id for o in observations}):
        per_transcript[tid] = _summarize(
            [o.score for o in observations if o.transcript_id == tid])
    return EvalReport(
        algorithm=algorithm, n_t=n_t, observations=tuple(observations),
        pooled_mean=pooled_mean, pooled_ci_half_width=pooled_half,
        pooled_n=pooled_n, per_annotator=per_annotator,
        per_transcript=per_transcript, error_counts=errors,
    )
