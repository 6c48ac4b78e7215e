import pytest
from hypothesis import given, strategies as st

from conftest import simple_transcript
from ohseg.corpus import Corpus, Segmentation, segment_masses
from ohseg.errors import ParameterError, ValidationError
from ohseg.segcore import (UniformParams, median_segment_length,
                           reference_segment_count, uniform_segment)


def test_uniform_basic():
    assert uniform_segment(10, 3) == [3, 6, 9]


def test_uniform_exact_multiple():
    assert uniform_segment(9, 3) == [3, 6]


def test_uniform_single_segment():
    assert uniform_segment(5, 10) == []


def test_uniform_params_validate():
    with pytest.raises(ParameterError):
        UniformParams(segment_length=0)


@given(st.integers(1, 500), st.integers(1, 60))
def test_uniform_masses(n, length):
    boundaries = uniform_segment(n, length)
    t = simple_transcript(n_sentences=n) if n >= 1 else None
    seg = Segmentation(transcript_id="t1", annotator="u",
                       boundaries=tuple(boundaries))
    masses = segment_masses(seg, t)
    assert all(m == length for m in masses[:-1])
    assert 1 <= masses[-1] <= length


def _corpus():
    t1 = simple_transcript("t1", 50)
    t2 = simple_transcript("t2", 30)
    segs = (
        Segmentation("t1", "original", (10, 40)),
        Segmentation("t2", "original", ()),
        Segmentation("t1", "a", (25,)),
    )
    return Corpus((t1, t2), segs)


def test_reference_segment_count():
    c = _corpus()
    assert reference_segment_count(c, "t1") == 3
    assert reference_segment_count(c, "t2") == 1


def test_reference_segment_count_missing():
    with pytest.raises(ValidationError):
        reference_segment_count(_corpus(), "t2", annotator="a")


def test_median_segment_length_matches_statistics():
    c = _corpus()
    # masses: t1/original [10,30,10], t2/original [30], t1/a [25,25]
    # sorted: 10,10,25,25,30,30 -> lower median 25
    assert median_segment_length(c) == 25


def test_median_segment_length_per_transcript():
    c = _corpus()
    # t1 masses: 10,30,10,25,25 -> median 25; t2: [30]
    assert median_segment_length(c, transcript_id="t1") == 25
    assert median_segment_length(c, transcript_id="t2") == 30
