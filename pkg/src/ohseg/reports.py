"""Report emission: per-observation CSV, JSON summaries, and the
segment-length histogram SVG. Figures are always derived from the emitted
CSV columns, never from internal state.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Iterable, Sequence

from .manifest import RunManifest
from .metrics import Observation

CSV_HEADER = ["algorithm", "annotator", "transcript", "category", "offset", "score"]


def write_observations_csv(path: str | Path,
                           observations: Iterable[Observation]) -> None:
    """One row per boundary-pair observation. Scores are boundary
    similarity values (1 = perfect agreement)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(CSV_HEADER)
        for o in observations:
            writer.writerow([o.algorithm, o.annotator, o.transcript_id,
                             o.category, o.offset, f"{o.score:.10g}"])


def read_observations_csv(path: str | Path) -> list[Observation]:
    observations = []
    with open(path, encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        for row in reader:
            observations.append(Observation(
                algorithm=row["algorithm"],
                annotator=row["annotator"],
                transcript_id=row["transcript"],
                category=row["category"],
                offset=int(row["offset"]),
                score=float(row["score"]),
            ))
    return observations


def write_json_summary(path: str | Path, payload: dict,
                       run_manifest: RunManifest) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    doc = dict(payload)
    doc["manifest"] = run_manifest.to_dict()
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n",
                    encoding="utf-8")


def segment_length_histogram_svg(masses: Sequence[int],
                                 bin_width: int = 10,
                                 width: int = 640,
                                 height: int = 360,
                                 timestamp: str | None = None) -> str:
    """Bar histogram of segment lengths in sentences, as a standalone SVG."""
    if not masses:
        raise ValueError("no segment lengths to plot")
    max_mass = max(masses)
    n_bins = max_mass // bin_width + 1
    counts = [0] * n_bins
    for m in masses:
        counts[m // bin_width] += 1
    peak = max(counts)
    margin = 40
    plot_w = width - 2 * margin
    plot_h = height - 2 * margin
    bar_w = plot_w / n_bins
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
    ]
    if timestamp:
        parts.append(f"<!-- generated {timestamp} -->")
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">')
    parts.append(
        f'<text x="{width / 2:.1f}" y="16" text-anchor="middle" '
        'font-family="sans-serif" font-size="13">'
        'Segment lengths (sentences)</text>')
    for i, count in enumerate(counts):
        if count == 0:
            continue
        bar_h = count / peak * plot_h
        x = margin + i * bar_w
        y = margin + plot_h - bar_h
        parts.append(
            f'<rect x="{x:.2f}" y="{y:.2f}" width="{bar_w:.2f}" '
            f'height="{bar_h:.2f}" fill="#4878a8" stroke="white" '
            'stroke-width="0.5"/>')
    # axes and extreme labels
    parts.append(
        f'<line x1="{margin}" y1="{margin + plot_h}" x2="{margin + plot_w}" '
        f'y2="{margin + plot_h}" stroke="black"/>')
    parts.append(
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" '
        f'y2="{margin + plot_h}" stroke="black"/>')
    parts.append(
        f'<text x="{margin}" y="{height - 8}" font-family="sans-serif" '
        'font-size="11">0</text>')
    parts.append(
        f'<text x="{margin + plot_w:.1f}" y="{height - 8}" text-anchor="end" '
        f'font-family="sans-serif" font-size="11">{n_bins * bin_width}</text>')
    parts.append(
        f'<text x="{margin - 6}" y="{margin + 4}" text-anchor="end" '
        f'font-family="sans-serif" font-size="11">{peak}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def error_counts_svg(counts_by_algorithm: dict[str, dict[str, int]],
                     width: int = 640, height: int = 360,
                     timestamp: str | None = None) -> str:
    """Grouped bars of match / near-miss / FP / FN counts per algorithm."""
    categories = ["matches", "near_misses", "false_positives", "false_negatives"]
    colors = {"matches": "#2e7d32", "near_misses": "#f9a825",
              "false_positives": "#c62828", "false_negatives": "#6a1b9a"}
    algorithms = sorted(counts_by_algorithm)
    peak = max((counts[c] for counts in counts_by_algorithm.values()
                for c in categories), default=0) or 1
    margin = 40
    plot_w = width - 2 * margin
    plot_h = height - 2 * margin
    group_w = plot_w / max(len(algorithms), 1)
    bar_w = group_w / (len(categories) + 1)
    parts = ['<?xml version="1.0" encoding="UTF-8"?>']
    if timestamp:
        parts.append(f"<!-- generated {timestamp} -->")
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">')
    parts.append(
        f'<text x="{width / 2:.1f}" y="16" text-anchor="middle" '
        'font-family="sans-serif" font-size="13">'
        'Boundary classification counts by segmenter</text>')
    for gi, algo in enumerate(algorithms):
        for ci, cat in enumerate(categories):
            count = counts_by_algorithm[algo].get(cat, 0)
            bar_h = count / peak * plot_h
            x = margin + gi * group_w + ci * bar_w
            y = margin + plot_h - bar_h
            parts.append(
                f'<rect x="{x:.2f}" y="{y:.2f}" width="{bar_w:.2f}" '
                f'height="{bar_h:.2f}" fill="{colors[cat]}"/>')
        parts.append(
            f'<text x="{margin + gi * group_w + group_w / 2:.1f}" '
            f'y="{height - 8}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{algo}</text>')
    parts.append(
        f'<line x1="{margin}" y1="{margin + plot_h}" x2="{margin + plot_w}" '
        f'y2="{margin + plot_h}" stroke="black"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
