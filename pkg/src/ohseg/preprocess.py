"""Deterministic text normalization: tokenization, stopword removal,
Porter stemming, and optional noun filtering from supplied POS tags.

Pipelines are fixed: the lexical-cohesion segmenter consumes
tokenize -> stopwords -> stem; the Bayesian segmenter additionally keeps
only nouns (tags starting with "NN"). Tags travel with the corpus files
and are never computed here.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from . import porter
from .corpus import Transcript
from .errors import ConfigurationError, ValidationError

stem = porter.stem

_APOSTROPHES = {"’": "'", "ʼ": "'"}
_TOKEN_RE = re.compile(r"[a-z0-9]+(?:'[a-z0-9]+)*")

DEFAULT_STOPWORD_FILE = "stopwords-choi.txt"


@dataclass(frozen=True)
class TokenizedSentence:
    """Tokens of one sentence after a recorded sequence of filters."""

    sentence_index: int
    tokens: tuple[str, ...]
    filters: tuple[str, ...]


def tokenize(sentence: str) -> list[str]:
    """Lowercase alphanumeric tokens; punctuation stripped, contractions kept."""
    text = sentence.lower()
    for fancy, plain in _APOSTROPHES.items():
        text = text.replace(fancy, plain)
    return _TOKEN_RE.findall(text)


def load_stopwords(path: str | Path | None = None) -> frozenset[str]:
    """Load the stopword list; the bundled file is the default."""
    try:
        text = _stopword_text(path)
    except (OSError, FileNotFoundError) as e:
        raise ConfigurationError(f"cannot read stopword list: {e}") from e
    words = set()
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.add(line)
    if not words:
        raise ConfigurationError("stopword list is empty")
    return frozenset(words)


def stopword_hash(path: str | Path | None = None) -> str:
    """SHA-256 of the stopword file, recorded in reports for provenance."""
    return hashlib.sha256(_stopword_text(path).encode("utf-8")).hexdigest()


def _stopword_text(path: str | Path | None) -> str:
    if path is not None:
        return Path(path).read_text(encoding="utf-8")
    ref = resources.files("ohseg").joinpath("data", DEFAULT_STOPWORD_FILE)
    return ref.read_text(encoding="utf-8")


def remove_stopwords(tokens: list[str], stopwords: frozenset[str]) -> list[str]:
    return [t for t in tokens if t not in stopwords]


def filter_nouns(tokens: list[str], tags: list[str] | None) -> list[str]:
    """Keep tokens whose Penn Treebank tag starts with NN.

    Missing or mismatched tags raise: the noun filter must never be
    silently skipped.
    """
    if tags is None:
        raise ValidationError("noun filtering requires POS tags, none supplied")
    if len(tags) != len(tokens):
        raise ValidationError(
            f"{len(tags)} tags for {len(tokens)} tokens")
    return [tok for tok, tag in zip(tokens, tags) if tag.startswith("NN")]


def lexical_pipeline(transcript: Transcript,
                     stopwords: frozenset[str]) -> list[TokenizedSentence]:
    """tokenize -> stopwords -> stem, per sentence."""
    out = []
    for idx, sentence in enumerate(transcript.sentences()):
        tokens = remove_stopwords(tokenize(sentence), stopwords)
        out.append(TokenizedSentence(
            sentence_index=idx,
            tokens=tuple(stem(t) for t in tokens),
            filters=("tokenize", "stopwords", "stem"),
        ))
    return out


def noun_pipeline(transcript: Transcript,
                  stopwords: frozenset[str]) -> list[TokenizedSentence]:
    """tokenize -> stopwords -> stem -> nouns, per sentence.

    Tags are aligned to the raw tokenization, so the stopword filter is
    applied to (token, tag) pairs to keep them parallel.
    """
    out = []
    all_tags = transcript.sentence_tags()
    for idx, sentence in enumerate(transcript.sentences()):
        tokens = tokenize(sentence)
        tags = all_tags[idx]
        if tags is None:
            raise ValidationError(
                f"sentence {idx} has no POS tags; the noun filter cannot run",
                transcript_id=transcript.id)
        if len(tags) != len(tokens):
            raise ValidationError(
                f"sentence {idx}: {len(tags)} tags for {len(tokens)} tokens",
                transcript_id=transcript.id)
        kept = [(t, g) for t, g in zip(tokens, tags) if t not in stopwords]
        stemmed = [porter.stem(t) for t, _ in kept]
        nouns = filter_nouns(stemmed, [g for _, g in kept])
        out.append(TokenizedSentence(
            sentence_index=idx,
            tokens=tuple(nouns),
            filters=("tokenize", "stopwords", "stem", "nouns"),
        ))
    return out
