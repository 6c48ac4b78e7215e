"""Transcript and segmentation data model, JSON file formats, and validation.

A transcript is an ordered list of speaker turns, each holding ordered
sentences. Boundaries live in the gaps between adjacent sentences of the
flattened sentence sequence: gap g separates sentence g-1 from sentence g,
so legal gap indices are 1..sentence_count-1.
"""

from __future__ import annotations

import json
import os
import statistics
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ParseError, ValidationError


@dataclass(frozen=True)
class Turn:
    """One speaker turn: a speaker label plus its sentences.

    ``tags`` optionally carries per-sentence POS tag lists (Penn Treebank
    labels), parallel to the tokenization of each sentence. Tags are consumed
    from input files, never computed here.
    """

    speaker: str
    sentences: tuple[str, ...]
    tags: tuple[tuple[str, ...], ...] | None = None


@dataclass(frozen=True)
class Transcript:
    id: str
    turns: tuple[Turn, ...]
    title: str | None = None
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def sentence_count(self) -> int:
        return sum(len(t.sentences) for t in self.turns)

    @property
    def potential_boundaries(self) -> int:
        return self.sentence_count - 1

    def sentences(self) -> list[str]:
        """Flattened sentences, 0-based and contiguous across turns."""
        out: list[str] = []
        for turn in self.turns:
            out.extend(turn.sentences)
        return out

    def sentence_tags(self) -> list[tuple[str, ...] | None]:
        """Flattened per-sentence tag lists; None where tags are absent."""
        out: list[tuple[str, ...] | None] = []
        for turn in self.turns:
            if turn.tags is None:
                out.extend([None] * len(turn.sentences))
            else:
                out.extend(turn.tags)
        return out


@dataclass(frozen=True)
class Segmentation:
    """A sorted set of boundary gap indices placed by one annotator or algorithm."""

    transcript_id: str
    annotator: str
    boundaries: tuple[int, ...]
    selected: tuple[tuple[int, int], ...] | None = None
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def segment_count(self) -> int:
        return len(self.boundaries) + 1


@dataclass(frozen=True)
class Corpus:
    transcripts: tuple[Transcript, ...]
    segmentations: tuple[Segmentation, ...]

    def transcript(self, transcript_id: str) -> Transcript:
        for t in self.transcripts:
            if t.id == transcript_id:
                return t
        raise KeyError(transcript_id)

    def segmentation(self, annotator: str, transcript_id: str) -> Segmentation:
        for s in self.segmentations:
            if s.annotator == annotator and s.transcript_id == transcript_id:
                return s
        raise KeyError((annotator, transcript_id))

    def annotators(self) -> list[str]:
        return sorted({s.annotator for s in self.segmentations})


@dataclass(frozen=True)
class LengthStatistics:
    mean: float
    stddev: float
    minimum: int
    maximum: int
    median: int
    per_transcript_median: dict[str, int]
    total_boundaries: int
    total_segments: int
    placement_rate: float


# ---------------------------------------------------------------------------
# Validation

def validate_transcript(t: Transcript) -> None:
    if not t.id:
        raise ValidationError("transcript id must be nonempty")
    if not t.turns:
        raise ValidationError("transcript has no turns", transcript_id=t.id)
    for i, turn in enumerate(t.turns):
        if not turn.sentences:
            raise ValidationError(
                f"turn {i} has no sentences", transcript_id=t.id)
        for j, sentence in enumerate(turn.sentences):
            if not sentence:
                raise ValidationError(
                    f"turn {i} sentence {j} is empty", transcript_id=t.id)
        if turn.tags is not None:
            from . import preprocess
            if len(turn.tags) != len(turn.sentences):
                raise ValidationError(
                    f"turn {i} has {len(turn.tags)} tag lists for "
                    f"{len(turn.sentences)} sentences", transcript_id=t.id)
            for j, (sentence, tags) in enumerate(zip(turn.sentences, turn.tags)):
                n_tokens = len(preprocess.tokenize(sentence))
                if len(tags) != n_tokens:
                    raise ValidationError(
                        f"turn {i} sentence {j}: {len(tags)} tags for "
                        f"{n_tokens} tokens", transcript_id=t.id)


def validate_segmentation(seg: Segmentation, t: Transcript) -> None:
    if seg.transcript_id != t.id:
        raise ValidationError(
            f"segmentation targets {seg.transcript_id!r}, not {t.id!r}",
            transcript_id=t.id, annotator=seg.annotator)
    n = t.sentence_count
    prev = 0
    for b in seg.boundaries:
        if not isinstance(b, int):
            raise ValidationError(
                f"boundary {b!r} is not an integer",
                transcript_id=t.id, annotator=seg.annotator)
        if b < 1 or b > n - 1:
            raise ValidationError(
                f"boundary {b} outside valid gap range [1, {n - 1}]",
                transcript_id=t.id, annotator=seg.annotator)
        if b <= prev:
            raise ValidationError(
                f"boundaries must be strictly increasing (saw {b} after {prev})",
                transcript_id=t.id, annotator=seg.annotator)
        prev = b
    if seg.selected is not None:
        cut_points = {0, n} | set(seg.boundaries)
        prev_end = 0
        for start, end in seg.selected:
            if not (0 <= start < end <= n):
                raise ValidationError(
                    f"selected range [{start}, {end}) is not a valid sentence range",
                    transcript_id=t.id, annotator=seg.annotator)
            if start < prev_end:
                raise ValidationError(
                    "extracts overlap",
                    transcript_id=t.id, annotator=seg.annotator)
            if start not in cut_points or end not in cut_points:
                raise ValidationError(
                    f"selected range [{start}, {end}) endpoints must coincide "
                    "with a boundary, 0, or the sentence count",
                    transcript_id=t.id, annotator=seg.annotator)
            prev_end = end


def validate_corpus(corpus: Corpus) -> None:
    seen_ids = set()
    for t in corpus.transcripts:
        if t.id in seen_ids:
            raise ValidationError("duplicate transcript id", transcript_id=t.id)
        seen_ids.add(t.id)
        validate_transcript(t)
    by_id = {t.id: t for t in corpus.transcripts}
    seen_pairs = set()
    for seg in corpus.segmentations:
        if seg.transcript_id not in by_id:
            raise ValidationError(
                "segmentation references unknown transcript",
                transcript_id=seg.transcript_id, annotator=seg.annotator)
        key = (seg.annotator, seg.transcript_id)
        if key in seen_pairs:
            raise ValidationError(
                "duplicate (annotator, transcript) segmentation",
                transcript_id=seg.transcript_id, annotator=seg.annotator)
        seen_pairs.add(key)
        validate_segmentation(seg, by_id[seg.transcript_id])


# ---------------------------------------------------------------------------
# Derived quantities

def segment_masses(seg: Segmentation, t: Transcript) -> list[int]:
    """Sentence count of each segment, in order; sums to t.sentence_count."""
    validate_segmentation(seg, t)
    edges = [0, *seg.boundaries, t.sentence_count]
    return [b - a for a, b in zip(edges, edges[1:])]


def _lower_median(values: list[int]) -> int:
    """Median with the even-count tie resolved to the lower middle value."""
    return statistics.median_low(values)


def length_statistics(corpus: Corpus, annotators: list[str] | None = None) -> LengthStatistics:
    """Segment-length summary over the corpus, optionally restricted to annotators."""
    segs = [s for s in corpus.segmentations
            if annotators is None or s.annotator in annotators]
    if not corpus.transcripts or not segs:
        raise ValidationError("length statistics require a nonempty corpus "
                              "with at least one segmentation")
    by_id = {t.id: t for t in corpus.transcripts}
    masses: list[int] = []
    per_transcript: dict[str, list[int]] = {}
    total_boundaries = 0
    potential = 0
    for seg in segs:
        t = by_id[seg.transcript_id]
        m = segment_masses(seg, t)
        masses.extend(m)
        per_transcript.setdefault(t.id, []).extend(m)
        total_boundaries += len(seg.boundaries)
        potential += t.potential_boundaries
    mean = sum(masses) / len(masses)
    stddev = statistics.stdev(masses) if len(masses) > 1 else 0.0
    return LengthStatistics(
        mean=mean,
        stddev=stddev,
        minimum=min(masses),
        maximum=max(masses),
        median=_lower_median(masses),
        per_transcript_median={tid: _lower_median(m)
                               for tid, m in sorted(per_transcript.items())},
        total_boundaries=total_boundaries,
        total_segments=len(masses),
        placement_rate=total_boundaries / potential if potential else 0.0,
    )


# ---------------------------------------------------------------------------
# File formats

_TRANSCRIPT_KEYS = {"id", "title", "turns"}
_SEGMENTATION_KEYS = {"transcript_id", "annotator", "boundaries", "selected"}


def _read_json(path: Path) -> dict:
    try:
        text = path.read_text(encoding="utf-8")
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(path, e.msg, offset=e.pos) from e
    except OSError as e:
        raise ParseError(path, str(e)) from e


def transcript_from_dict(doc: dict) -> Transcript:
    turns = []
    for raw in doc.get("turns", []):
        tags = raw.get("tags")
        turns.append(Turn(
            speaker=raw.get("speaker", ""),
            sentences=tuple(raw.get("sentences", [])),
            tags=tuple(tuple(ts) for ts in tags) if tags is not None else None,
        ))
    extra = {k: v for k, v in doc.items() if k not in _TRANSCRIPT_KEYS}
    return Transcript(id=doc.get("id", ""), title=doc.get("title"),
                      turns=tuple(turns), extra=extra)


def transcript_to_dict(t: Transcript, include_tags: bool = True) -> dict:
    doc: dict = {"id": t.id}
    if t.title is not None:
        doc["title"] = t.title
    doc["turns"] = []
    for turn in t.turns:
        raw: dict = {"speaker": turn.speaker, "sentences": list(turn.sentences)}
        if include_tags and turn.tags is not None:
            raw["tags"] = [list(ts) for ts in turn.tags]
        doc["turns"].append(raw)
    doc.update(t.extra)
    return doc


def segmentation_from_dict(doc: dict) -> Segmentation:
    selected = doc.get("selected")
    extra = {k: v for k, v in doc.items() if k not in _SEGMENTATION_KEYS}
    return Segmentation(
        transcript_id=doc.get("transcript_id", ""),
        annotator=doc.get("annotator", ""),
        boundaries=tuple(doc.get("boundaries", [])),
        selected=tuple((s, e) for s, e in selected) if selected is not None else None,
        extra=extra,
    )


def segmentation_to_dict(seg: Segmentation) -> dict:
    doc: dict = {
        "transcript_id": seg.transcript_id,
        "annotator": seg.annotator,
        "boundaries": list(seg.boundaries),
    }
    if seg.selected is not None:
        doc["selected"] = [list(r) for r in seg.selected]
    doc.update(seg.extra)
    return doc


def write_json_atomic(path: Path, doc: dict) -> None:
    """Write JSON via temp file + rename so readers never see partial files."""
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_corpus(path: str | Path) -> Corpus:
    """Load and fully validate a corpus directory.

    Layout: ``transcripts/<id>.json`` and
    ``segmentations/<annotator>/<transcript_id>.json``.
    """
    root = Path(path)
    tdir = root / "transcripts"
    transcripts = []
    if tdir.is_dir():
        for f in sorted(tdir.glob("*.json")):
            transcripts.append(transcript_from_dict(_read_json(f)))
    if not transcripts:
        raise ValidationError(f"no transcripts found under {root}")
    segmentations = []
    sdir = root / "segmentations"
    if sdir.is_dir():
        for annotator_dir in sorted(p for p in sdir.iterdir() if p.is_dir()):
            for f in sorted(annotator_dir.glob("*.json")):
                segmentations.append(segmentation_from_dict(_read_json(f)))
    corpus = Corpus(transcripts=tuple(transcripts),
                    segmentations=tuple(segmentations))
    validate_corpus(corpus)
    return corpus


def save_corpus(corpus: Corpus, path: str | Path) -> None:
    root = Path(path)
    for t in corpus.transcripts:
        write_json_atomic(root / "transcripts" / f"{t.id}.json",
                          transcript_to_dict(t))
    for seg in corpus.segmentations:
        write_json_atomic(
            root / "segmentations" / seg.annotator / f"{seg.transcript_id}.json",
            segmentation_to_dict(seg))
