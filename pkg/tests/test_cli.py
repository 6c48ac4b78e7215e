import json

from click.testing import CliRunner

from conftest import make_demo_corpus, transcript_doc, write_corpus_dir
from ohseg.cli import main
from ohseg.reports import read_observations_csv


def run(*args):
    return CliRunner().invoke(main, [str(a) for a in args])


def test_validate_clean(demo_corpus_dir):
    result = run("validate", "--corpus", demo_corpus_dir)
    assert result.exit_code == 0, result.output
    assert "ok: 3 transcript(s), 9 segmentation(s)" in result.output


def test_validate_broken_corpus(tmp_path):
    root = write_corpus_dir(
        tmp_path / "bad", [transcript_doc("t1", 5)],
        [{"transcript_id": "t1", "annotator": "a", "boundaries": [99]}])
    result = run("validate", "--corpus", root)
    assert result.exit_code == 1
    assert "error:" in result.output


def test_validate_missing_dir_usage_error(tmp_path):
    result = run("validate", "--corpus", tmp_path / "absent")
    assert result.exit_code == 2


def _segmentation_files(out_dir):
    return sorted((out_dir / "segmentations").rglob("*.json"))


def test_segment_uniform(demo_corpus_dir, tmp_path):
    out = tmp_path / "out"
    result = run("segment", "--corpus", demo_corpus_dir, "--out", out,
                 "--algo", "uniform", "--length", "10")
    assert result.exit_code == 0, result.output
    files = _segmentation_files(out)
    assert len(files) == 3
    doc = json.loads(files[0].read_text())
    assert doc["boundaries"] == [10, 20]
    assert doc["annotator"].startswith("uniform-")


def test_segment_uniform_median_default(demo_corpus_dir, tmp_path):
    out = tmp_path / "out"
    result = run("segment", "--corpus", demo_corpus_dir, "--out", out,
                 "--algo", "uniform")
    assert result.exit_code == 0, result.output
    assert len(_segmentation_files(out)) == 3


def test_segment_bayesseg(demo_corpus_dir, tmp_path):
    out = tmp_path / "out"
    result = run("segment", "--corpus", demo_corpus_dir, "--out", out,
                 "--algo", "bayesseg", "--k", "3")
    assert result.exit_code == 0, result.output
    files = _segmentation_files(out)
    assert len(files) == 3
    for f in files:
        doc = json.loads(f.read_text())
        assert len(doc["boundaries"]) == 2  # K=3 segments


def test_segment_bayesseg_k_from_reference(demo_corpus_dir, tmp_path):
    out = tmp_path / "out"
    result = run("segment", "--corpus", demo_corpus_dir, "--out", out,
                 "--algo", "bayesseg", "--k-from-reference", "original")
    assert result.exit_code == 0, result.output
    for f in _segmentation_files(out):
        assert len(json.loads(f.read_text())["boundaries"]) == 2


def test_segment_bayesseg_requires_k(demo_corpus_dir, tmp_path):
    result = run("segment", "--corpus", demo_corpus_dir,
                 "--out", tmp_path / "out", "--algo", "bayesseg")
    assert result.exit_code == 2


def test_segment_texttiling(demo_corpus_dir, tmp_path):
    out = tmp_path / "out"
    result = run("segment", "--corpus", demo_corpus_dir, "--out", out,
                 "--algo", "texttiling", "--w", "10", "--k", "4")
    assert result.exit_code == 0, result.output
    assert len(_segmentation_files(out)) == 3


def test_segment_too_short_reports_failure(tiny_corpus_dir, tmp_path):
    # texttiling at the default w=20 cannot tile a 5-sentence transcript
    result = run("segment", "--corpus", tiny_corpus_dir,
                 "--out", tmp_path / "out", "--algo", "texttiling")
    assert result.exit_code == 1
    assert "failed" in result.output
    assert "wrote 0 segmentation(s)" in result.output


def test_segment_parallel_matches_serial(demo_corpus_dir, tmp_path):
    serial, parallel = tmp_path / "s", tmp_path / "p"
    r1 = run("segment", "--corpus", demo_corpus_dir, "--out", serial,
             "--algo", "bayesseg", "--k", "3")
    r2 = run("--jobs", "4", "segment", "--corpus", demo_corpus_dir,
             "--out", parallel, "--algo", "bayesseg", "--k", "3")
    assert r1.exit_code == r2.exit_code == 0
    for fs, fp in zip(_segmentation_files(serial),
                      _segmentation_files(parallel)):
        assert json.loads(fs.read_text()) == json.loads(fp.read_text())


def _evaluated(tmp_path, n_transcripts=3):
    corpus = make_demo_corpus(tmp_path / "corpus", n_transcripts=n_transcripts)
    hyp = tmp_path / "hyp"
    for algo_args in (["--algo", "uniform", "--length", "10"],
                      ["--algo", "bayesseg", "--k", "3"]):
        r = run("segment", "--corpus", corpus, "--out", hyp, *algo_args)
        assert r.exit_code == 0, r.output
    out = tmp_path / "eval"
    r = run("evaluate", "--hypotheses", hyp, "--corpus", corpus, "--out", out)
    assert r.exit_code == 0, r.output
    return corpus, out, r


def test_evaluate_outputs(tmp_path):
    _, out, result = _evaluated(tmp_path)
    assert (out / "observations.csv").is_file()
    assert (out / "summary.json").is_file()
    assert (out / "segment-lengths.svg").is_file()
    assert (out / "error-counts.svg").is_file()
    assert "similarity" in result.output

    summary = json.loads((out / "summary.json").read_text())
    assert "manifest" in summary
    assert summary["manifest"]["parameters"]["n_t"] == 9
    assert len(summary["groups"]) == 2
    for algo, doc in summary["groups"].items():
        assert 0.0 <= doc["pooled_mean"] <= 1.0
        assert doc["pooled_n"] > 0

    observations = read_observations_csv(out / "observations.csv")
    assert {o.algorithm for o in observations} == set(summary["groups"])
    n = sum(d["pooled_n"] for d in summary["groups"].values())
    assert len(observations) == n


def test_evaluate_deterministic_outputs(tmp_path):
    _, out1, _ = _evaluated(tmp_path / "a")
    _, out2, _ = _evaluated(tmp_path / "b")
    assert (out1 / "observations.csv").read_text() == \
        (out2 / "observations.csv").read_text()
    s1 = json.loads((out1 / "summary.json").read_text())
    s2 = json.loads((out2 / "summary.json").read_text())
    s1["manifest"].pop("timestamp")
    s2["manifest"].pop("timestamp")
    s1["manifest"]["input_hashes"].pop("corpus")
    s2["manifest"]["input_hashes"].pop("corpus")
    s1["manifest"]["input_hashes"].pop("hypotheses")
    s2["manifest"]["input_hashes"].pop("hypotheses")
    assert s1 == s2


def test_agreement(demo_corpus_dir):
    result = run("agreement", "--corpus", demo_corpus_dir)
    assert result.exit_code == 0, result.output
    assert "micro-average:" in result.output
    assert "pi*" in result.output


def test_agreement_single_annotator(tmp_path):
    root = write_corpus_dir(
        tmp_path / "one", [transcript_doc("t1", 5)],
        [{"transcript_id": "t1", "annotator": "a", "boundaries": [2]}])
    result = run("agreement", "--corpus", root)
    assert result.exit_code == 1
    assert "2 annotators" in result.output


def test_stats_compare(tmp_path):
    _, out, _ = _evaluated(tmp_path)
    result = run("stats", "compare", "--groups", out / "observations.csv")
    assert result.exit_code == 0, result.output
    assert "Kruskal-Wallis: H=" in result.output
    assert " vs " in result.output


def test_stats_compare_permutation_seeded(tmp_path):
    _, out, _ = _evaluated(tmp_path)
    args = ("--seed", "7", "stats", "compare", "--groups",
            out / "observations.csv", "--mode", "permutation")
    r1, r2 = run(*args), run(*args)
    assert r1.exit_code == 0, r1.output
    assert r1.output == r2.output
