import json
from pathlib import Path

import pytest

from ohseg import preprocess
from ohseg.corpus import Segmentation, Transcript, Turn


@pytest.fixture(scope="session")
def stopwords():
    return preprocess.load_stopwords()


def simple_transcript(tid="t1", n_sentences=5, speaker="INTERVIEWEE"):
    sentences = tuple(f"This is sentence number {i} of the interview."
                      for i in range(n_sentences))
    return Transcript(id=tid, turns=(Turn(speaker=speaker, sentences=sentences),))


def write_corpus_dir(root: Path, transcripts, segmentations):
    for doc in transcripts:
        p = root / "transcripts" / f"{doc['id']}.json"
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(json.dumps(doc) + "\n", encoding="utf-8")
    for doc in segmentations:
        p = (root / "segmentations" / doc["annotator"]
             / f"{doc['transcript_id']}.json")
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(json.dumps(doc) + "\n", encoding="utf-8")
    return root


def transcript_doc(tid="t1", n_sentences=5):
    return {
        "id": tid,
        "turns": [{
            "speaker": "INTERVIEWEE",
            "sentences": [f"This is sentence number {i} of the interview."
                          for i in range(n_sentences)],
        }],
    }


_TOPIC_NOUNS = [
    ["mill", "loom", "village", "cotton", "spindle", "weaver"],
    ["union", "strike", "wage", "picket", "organizer", "contract"],
    ["church", "choir", "sermon", "hymn", "preacher", "revival"],
]


def _topic_sentence(rng, topic):
    nouns = _TOPIC_NOUNS[topic]
    n1, n2, n3 = rng.sample(nouns, 3)
    text = f"The {n1} and the {n2} near the {n3}."
    tags = ["DT", "NN", "CC", "DT", "NN", "IN", "DT", "NN"]
    return text, tags


def demo_transcript_doc(rng, tid, topics=(0, 1, 2), sentences_per_topic=10):
    sentences, tags = [], []
    for topic in topics:
        for _ in range(sentences_per_topic):
            s, t = _topic_sentence(rng, topic)
            sentences.append(s)
            tags.append(t)
    half = len(sentences) // 2
    return {
        "id": tid,
        "title": f"Interview {tid}",
        "turns": [
            {"speaker": "INTERVIEWER", "sentences": sentences[:half],
             "tags": tags[:half]},
            {"speaker": "INTERVIEWEE", "sentences": sentences[half:],
             "tags": tags[half:]},
        ],
    }


def make_demo_corpus(root: Path, n_transcripts=3, seed=13):
    import random

    rng = random.Random(seed)
    transcripts, segmentations = [], []
    for i in range(n_transcripts):
        tid = f"iv{i:02d}"
        transcripts.append(demo_transcript_doc(rng, tid))
        n = 30
        segmentations.append({"transcript_id": tid, "annotator": "original",
                              "boundaries": [10, 20]})
        segmentations.append({"transcript_id": tid, "annotator": "ann-a",
                              "boundaries": sorted(rng.sample(range(8, 25), 2))})
        segmentations.append({"transcript_id": tid, "annotator": "ann-b",
                              "boundaries": sorted(rng.sample(range(5, n - 1), 3))})
    return write_corpus_dir(root, transcripts, segmentations)


@pytest.fixture
def demo_corpus_dir(tmp_path):
    return make_demo_corpus(tmp_path / "demo")


@pytest.fixture
def tiny_corpus_dir(tmp_path):
    return write_corpus_dir(
        tmp_path / "corpus",
        [transcript_doc("t1", 5)],
        [{"transcript_id": "t1", "annotator": "a", "boundaries": [2]}],
    )
