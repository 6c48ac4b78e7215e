"""Command-line entry point: validation, segmentation, evaluation,
agreement analysis, statistics, and the annotation service."""

from __future__ import annotations

import hashlib
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import click

from . import bayesseg, corpus as corpus_mod, metrics, preprocess, reports
from . import segcore, stats as stats_mod, texttiling
from .errors import OhsegError
from .manifest import RunManifest, hash_directory


def _fail(message: str, code: int = 1):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


@click.group()
@click.option("--nt", "n_t", type=int, default=9, show_default=True,
              help="Transposition spanning distance for near misses.")
@click.option("--jobs", type=int, default=1, show_default=True,
              help="Parallel workers for per-transcript batch work.")
@click.option("--seed", type=int, default=None, help="Seed for randomized modes.")
@click.pass_context
def main(ctx, n_t, jobs, seed):
    """Topic segmentation toolkit for oral history interview transcripts."""
    ctx.ensure_object(dict)
    ctx.obj.update(n_t=n_t, jobs=jobs, seed=seed)


@main.command()
@click.option("--corpus", "corpus_dir", required=True,
              type=click.Path(exists=True, file_okay=False))
def validate(corpus_dir):
    """Validate a corpus directory; exit 0 iff clean."""
    try:
        loaded = corpus_mod.load_corpus(corpus_dir)
    except OhsegError as e:
        _fail(str(e))
    click.echo(f"ok: {len(loaded.transcripts)} transcript(s), "
               f"{len(loaded.segmentations)} segmentation(s)")


def _param_digest(params: dict) -> str:
    blob = json.dumps(params, sort_keys=True).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()[:8]


@main.command()
@click.option("--corpus", "corpus_dir", required=True,
              type=click.Path(exists=True, file_okay=False))
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--algo", required=True,
              type=click.Choice(["texttiling", "bayesseg", "uniform"]))
@click.option("--w", type=int, default=20, show_default=True,
              help="[texttiling] token-sequence size.")
@click.option("--k", type=int, default=None,
              help="[texttiling] block size (default 10); "
                   "[bayesseg] desired segment count.")
@click.option("--smooth-rounds", type=int, default=1, show_default=True)
@click.option("--smooth-width", type=int, default=2, show_default=True)
@click.option("--threshold", default="liberal", show_default=True,
              help="[texttiling] 'liberal' (mean - stddev) or a numeric cutoff.")
@click.option("--alpha", type=float, default=0.2, show_default=True,
              help="[bayesseg] symmetric Dirichlet concentration.")
@click.option("--estimate-alpha", is_flag=True,
              help="[bayesseg] alternate alpha search with re-segmentation.")
@click.option("--k-from-reference", default=None, metavar="ANNOTATOR",
              help="[bayesseg] take K per transcript from this annotator.")
@click.option("--length", type=int, default=None,
              help="[uniform] segment length; default: median manual length.")
@click.option("--per-transcript-median", is_flag=True,
              help="[uniform] derive the median per transcript, not corpus-wide.")
@click.option("--stopwords", "stopword_path", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="Override the bundled stopword list.")
@click.pass_context
def segment(ctx, corpus_dir, out_dir, algo, w, k, smooth_rounds, smooth_width,
            threshold, alpha, estimate_alpha, k_from_reference, length,
            per_transcript_median, stopword_path):
    """Segment every transcript with one algorithm; one JSON file each."""
    try:
        loaded = corpus_mod.load_corpus(corpus_dir)
        stopwords = preprocess.load_stopwords(stopword_path)
    except OhsegError as e:
        _fail(str(e))

    if algo == "texttiling":
        cutoff = None if threshold == "liberal" else float(threshold)
        params_doc = {"algo": algo, "w": w, "k": k if k is not None else 10,
                      "smoothing_rounds": smooth_rounds,
                      "smoothing_width": smooth_width, "threshold": threshold}
        tt_params = texttiling.TextTilingParams(
            w=w, k=k if k is not None else 10,
            smoothing_rounds=smooth_rounds, smoothing_width=smooth_width,
            cutoff=cutoff)

        def run(t):
            return texttiling.segment(t, tt_params, stopwords)

    elif algo == "bayesseg":
        if k is None and k_from_reference is None:
            _fail("bayesseg needs --k or --k-from-reference", code=2)
        params_doc = {"algo": algo, "k": k, "alpha": alpha,
                      "estimate_alpha": estimate_alpha,
                      "k_from_reference": k_from_reference}

        def run(t):
            kk = (segcore.reference_segment_count(loaded, t.id, k_from_reference)
                  if k_from_reference else k)
            return bayesseg.segment(
                t, bayesseg.BayesSegParams(k=kk, alpha=alpha,
                                           estimate_alpha=estimate_alpha),
                stopwords)

    else:  # uniform
        params_doc = {"algo": algo, "length": length,
                      "per_transcript_median": per_transcript_median}

        def run(t):
            if length is not None:
                ln = length
            elif per_transcript_median:
                ln = segcore.median_segment_length(loaded, transcript_id=t.id)
            else:
                ln = segcore.median_segment_length(loaded)
            return segcore.uniform_segment(t.sentence_count, ln)

    annotator = f"{algo}-{_param_digest(params_doc)}"
    out_root = Path(out_dir)

    def run_one(t):
        try:
            return t.id, run(t), None
        except OhsegError as e:
            return t.id, None, str(e)

    if ctx.obj["jobs"] > 1:
        with ThreadPoolExecutor(max_workers=ctx.obj["jobs"]) as pool:
            results = list(pool.map(run_one, loaded.transcripts))
    else:
        results = [run_one(t) for t in loaded.transcripts]

    failures = []
    for tid, boundaries, err in results:
        if err is not None:
            failures.append((tid, err))
            continue
        seg = corpus_mod.Segmentation(
            transcript_id=tid, annotator=annotator,
            boundaries=tuple(boundaries))
        corpus_mod.write_json_atomic(
            out_root / "segmentations" / annotator / f"{tid}.json",
            corpus_mod.segmentation_to_dict(seg))
    ok = len(results) - len(failures)
    click.echo(f"{annotator}: wrote {ok} segmentation(s) to {out_root}")
    if failures:
        for tid, err in failures:
            click.echo(f"failed {tid}: {err}", err=True)
        sys.exit(1)


@main.command()
@click.option("--hypotheses", "hyp_dir", required=True,
              type=click.Path(exists=True, file_okay=False),
              help="Directory with segmentations/<algorithm>/<id>.json.")
@click.option("--corpus", "corpus_dir", required=True,
              type=click.Path(exists=True, file_okay=False),
              help="Corpus holding the manual reference segmentations.")
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.pass_context
def evaluate(ctx, hyp_dir, corpus_dir, out_dir):
    """Evaluate algorithm segmentations against all manual segmentations."""
    n_t = ctx.obj["n_t"]
    try:
        loaded = corpus_mod.load_corpus(corpus_dir)
    except OhsegError as e:
        _fail(str(e))
    hyp_root = Path(hyp_dir) / "segmentations"
    if not hyp_root.is_dir():
        hyp_root = Path(hyp_dir)
    algorithms = sorted(p.name for p in hyp_root.iterdir() if p.is_dir())
    if not algorithms:
        _fail(f"no hypothesis segmentations under {hyp_dir}")

    references: dict[str, dict[str, list[int]]] = {}
    for seg in loaded.segmentations:
        references.setdefault(seg.transcript_id, {})[seg.annotator] = \
            list(seg.boundaries)

    all_observations = []
    summaries = {}
    error_counts = {}
    try:
        for algo in algorithms:
            hyps = {}
            for f in sorted((hyp_root / algo).glob("*.json")):
                seg = corpus_mod.segmentation_from_dict(corpus_mod._read_json(f))
                hyps[seg.transcript_id] = list(seg.boundaries)
            report = metrics.evaluate_segmenter(algo, hyps, references, n_t=n_t)
            all_observations.extend(report.observations)
            summaries[algo] = {
                "pooled_mean": report.pooled_mean,
                "pooled_ci_half_width": report.pooled_ci_half_width,
                "pooled_n": report.pooled_n,
                "per_annotator": {a: list(v)
                                  for a, v in report.per_annotator.items()},
                "per_transcript": {t: list(v)
                                   for t, v in report.per_transcript.items()},
                "error_counts": report.error_counts,
            }
            error_counts[algo] = report.error_counts
    except OhsegError as e:
        _fail(str(e))

    run_manifest = RunManifest(
        command="evaluate",
        parameters={"n_t": n_t, "algorithms": algorithms,
                    "score": "boundary similarity (1 = perfect)",
                    "near_miss_scaling": "linear (1 - d/n_t)"},
        input_hashes={"corpus": hash_directory(corpus_dir),
                      "hypotheses": hash_directory(hyp_dir)},
        stopword_hash=preprocess.stopword_hash(),
        seed=ctx.obj["seed"],
    )
    out_root = Path(out_dir)
    out_root.mkdir(parents=True, exist_ok=True)
    reports.write_observations_csv(out_root / "observations.csv",
                                   all_observations)
    reports.write_json_summary(out_root / "summary.json",
                               {"groups": summaries}, run_manifest)
    lengths = corpus_mod.length_statistics(loaded)
    masses = []
    for seg in loaded.segmentations:
        masses.extend(corpus_mod.segment_masses(
            seg, loaded.transcript(seg.transcript_id)))
    (out_root / "segment-lengths.svg").write_text(
        reports.segment_length_histogram_svg(
            masses, timestamp=run_manifest.timestamp), encoding="utf-8")
    (out_root / "error-counts.svg").write_text(
        reports.error_counts_svg(error_counts,
                                 timestamp=run_manifest.timestamp),
        encoding="utf-8")
    for algo in algorithms:
        s = summaries[algo]
        click.echo(f"{algo}: similarity {s['pooled_mean']:.4f} "
                   f"± {s['pooled_ci_half_width']:.4f} (n={s['pooled_n']})")
    click.echo(f"manual segments: {lengths.total_segments}, "
               f"median length {lengths.median}")


@main.command()
@click.option("--corpus", "corpus_dir", required=True,
              type=click.Path(exists=True, file_okay=False))
@click.option("--per-annotator-rates", is_flag=True,
              help="Use per-annotator placement rates for expected agreement.")
@click.pass_context
def agreement(ctx, corpus_dir, per_annotator_rates):
    """Pairwise inter-annotator boundary similarity and Fleiss' pi*."""
    n_t = ctx.obj["n_t"]
    try:
        loaded = corpus_mod.load_corpus(corpus_dir)
    except OhsegError as e:
        _fail(str(e))
    if len(loaded.annotators()) < 2:
        _fail("agreement requires at least 2 annotators")
    by_transcript: dict[str, dict[str, list[int]]] = {}
    for seg in loaded.segmentations:
        by_transcript.setdefault(seg.transcript_id, {})[seg.annotator] = \
            list(seg.boundaries)
    potential = {t.id: t.potential_boundaries for t in loaded.transcripts}
    try:
        report = metrics.fleiss_pi_star(by_transcript, potential, n_t=n_t,
                                        per_annotator_rates=per_annotator_rates)
    except OhsegError as e:
        _fail(str(e))
    click.echo("boundary similarity (1 = perfect agreement), "
               f"near-miss scaling {report.scaling}, n_t={n_t}")
    click.echo(f"micro-average: {report.micro_mean:.4f} "
               f"± {report.ci_half_width:.4f} (95% CI, n={report.n})")
    click.echo(f"expected agreement A_e: {report.expected_agreement:.6f}")
    click.echo(f"Fleiss' pi*: {report.pi_star:.4f}")


@main.group()
def stats():
    """Statistical comparison of evaluation score groups."""


@stats.command()
@click.option("--groups", "csv_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="observations.csv emitted by `evaluate`.")
@click.option("--alpha", type=float, default=0.05, show_default=True)
@click.option("--mode", type=click.Choice(["asymptotic", "permutation"]),
              default="asymptotic", show_default=True)
@click.pass_context
def compare(ctx, csv_path, alpha, mode):
    """Kruskal-Wallis omnibus test plus DSCF pairwise comparisons."""
    observations = reports.read_observations_csv(csv_path)
    groups: dict[str, list[float]] = {}
    for o in observations:
        groups.setdefault(o.algorithm, []).append(o.score)
    try:
        kw = stats_mod.kruskal_wallis(groups)
        dscf = stats_mod.dscf_pairwise(groups, alpha=alpha, mode=mode,
                                       seed=ctx.obj["seed"])
    except OhsegError as e:
        _fail(str(e))
    click.echo(f"Kruskal-Wallis: H={kw.h:.4g}, df={kw.df}, p={kw.p_value:.4g}, "
               f"tie correction={kw.tie_correction:.6f}")
    for pair in dscf.pairs:
        verdict = "significant" if pair.significant else "not significant"
        detail = (f"q_crit={pair.critical:.3f}" if pair.critical is not None
                  else f"p={pair.p_value:.4g}")
        click.echo(f"{pair.group_a} vs {pair.group_b}: W*={pair.w_star:.4g} "
                   f"({verdict} at alpha={alpha}, {detail})")


@main.command()
@click.option("--corpus", "corpus_dir", required=True,
              type=click.Path(exists=True, file_okay=False))
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--static", "static_dir", default=None,
              type=click.Path(exists=True, file_okay=False),
              help="Directory with the built annotation UI.")
def serve(corpus_dir, port, host, static_dir):
    """Start the annotation service."""
    import uvicorn

    from .service import create_app

    try:
        app = create_app(corpus_dir, static_dir=static_dir)
    except OhsegError as e:
        _fail(str(e))
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
