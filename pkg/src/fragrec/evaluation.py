"""Evaluation against manual annotations: precision, recall, F-measure.

Annotated (tutorial, fragment, API) pairs are compared with the index's
verdicts. Filtered fragments and pairs the pipeline never scored count as
predicted-irrelevant. Metrics are percentages, computed per tutorial and
macro-averaged; any metric whose denominator is zero is defined as zero.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from .errors import AlignmentError, InputError
from .pipeline import RelevanceIndex
from .relevance import RelevanceRecord

ANNOTATION_HEADER = ["tutorial", "fragment_id", "api", "label"]
FRAGMENT_MAP_HEADER = ["tutorial", "source_fragment_id", "index_fragment_id"]


@dataclass(frozen=True)
class AnnotationRow:
    tutorial: str
    fragment_id: str
    api: str
    relevant: bool


@dataclass
class AnnotationSet:
    rows: list[AnnotationRow]

    def __len__(self) -> int:
        return len(self.rows)


def load_annotations(path: str | Path) -> AnnotationSet:
    """Read a ``tutorial,fragment_id,api,label`` CSV (UTF-8, with header)."""
    rows = []
    seen = set()
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip().lower() for h in header] != ANNOTATION_HEADER:
            raise InputError(
                f"annotations {path}: expected header {','.join(ANNOTATION_HEADER)}"
            )
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 4:
                raise InputError(f"annotations {path}:{lineno}: expected 4 columns")
            tutorial, fragment_id, api, label = (c.strip() for c in row)
            label = label.lower()
            if label not in ("relevant", "irrelevant"):
                raise InputError(
                    f"annotations {path}:{lineno}: label must be relevant or irrelevant"
                )
            key = (tutorial, fragment_id, api)
            if key in seen:
                raise InputError(f"annotations {path}:{lineno}: duplicate pair {key}")
            seen.add(key)
            rows.append(AnnotationRow(tutorial, fragment_id, api, label == "relevant"))
    return AnnotationSet(rows)


def load_fragment_map(path: str | Path) -> dict[tuple[str, str], int]:
    """Mapping from externally annotated fragment ids to index ordinals."""
    mapping = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip().lower() for h in header] != FRAGMENT_MAP_HEADER:
            raise InputError(
                f"fragment map {path}: expected header {','.join(FRAGMENT_MAP_HEADER)}"
            )
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 3:
                raise InputError(f"fragment map {path}:{lineno}: expected 3 columns")
            tutorial, source_id, index_id = (c.strip() for c in row)
            try:
                mapping[(tutorial, source_id)] = int(index_id)
            except ValueError as exc:
                raise InputError(
                    f"fragment map {path}:{lineno}: index_fragment_id must be an integer"
                ) from exc
    return mapping


@dataclass(frozen=True)
class TutorialMetrics:
    tp: int
    fp: int
    fn: int
    tn: int
    precision: float
    recall: float
    f_measure: float


@dataclass
class MetricsReport:
    per_tutorial: dict[str, TutorialMetrics]
    overall: TutorialMetrics
    unmatched: list[AnnotationRow]


def compute_metrics(tp: int, fp: int, fn: int, tn: int = 0) -> TutorialMetrics:
    """Precision/recall/F-measure percentages with zero-denominator = 0."""
    precision = 100.0 * tp / (tp + fp) if tp + fp else 0.0
    recall = 100.0 * tp / (tp + fn) if tp + fn else 0.0
    f_measure = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return TutorialMetrics(tp, fp, fn, tn, precision, recall, f_measure)


def _align(
    index: RelevanceIndex,
    annotations: AnnotationSet,
    fragment_map: dict[tuple[str, str], int] | None,
) -> tuple[list[tuple[AnnotationRow, int]], list[AnnotationRow]]:
    matched = []
    unmatched = []
    for row in annotations.rows:
        ordinal = None
        if fragment_map is not None:
            ordinal = fragment_map.get((row.tutorial, row.fragment_id))
        else:
            try:
                ordinal = int(row.fragment_id)
            except ValueError:
                ordinal = None
        if ordinal is None or not index.has_fragment(row.tutorial, ordinal):
            unmatched.append(row)
        else:
            matched.append((row, ordinal))
    if annotations.rows and len(unmatched) >= 0.5 * len(annotations.rows):
        raise AlignmentError(
            f"{len(unmatched)} of {len(annotations.rows)} annotation keys do not match "
            "the index segmentation; check the corpus or provide a fragment map"
        )
    return matched, unmatched


def _confusion(
    index: RelevanceIndex,
    annotations: AnnotationSet,
    fragment_map: dict[tuple[str, str], int] | None,
    predict: Callable[[RelevanceRecord | None, str], bool],
) -> tuple[dict[str, TutorialMetrics], TutorialMetrics, list[AnnotationRow]]:
    matched, unmatched = _align(index, annotations, fragment_map)
    counts: dict[str, list[int]] = {}
    for row, ordinal in matched:
        record = index.lookup(row.tutorial, ordinal, row.api)
        predicted = predict(record, row.tutorial)
        tally = counts.setdefault(row.tutorial, [0, 0, 0, 0])  # tp fp fn tn
        if predicted and row.relevant:
            tally[0] += 1
        elif predicted and not row.relevant:
            tally[1] += 1
        elif not predicted and row.relevant:
            tally[2] += 1
        else:
            tally[3] += 1
    per_tutorial = {
        tid: compute_metrics(*tally) for tid, tally in sorted(counts.items())
    }
    if per_tutorial:
        overall = TutorialMetrics(
            tp=sum(m.tp for m in per_tutorial.values()),
            fp=sum(m.fp for m in per_tutorial.values()),
            fn=sum(m.fn for m in per_tutorial.values()),
            tn=sum(m.tn for m in per_tutorial.values()),
            precision=sum(m.precision for m in per_tutorial.values()) / len(per_tutorial),
            recall=sum(m.recall for m in per_tutorial.values()) / len(per_tutorial),
            f_measure=sum(m.f_measure for m in per_tutorial.values()) / len(per_tutorial),
        )
    else:
        overall = compute_metrics(0, 0, 0, 0)
    return per_tutorial, overall, unmatched


def evaluate(
    index: RelevanceIndex,
    annotations: AnnotationSet,
    fragment_map: dict[tuple[str, str], int] | None = None,
) -> MetricsReport:
    """Score the index's verdicts against an annotation set.

    A pair with no record (API never discovered, or fragment filtered out
    without that API) is predicted irrelevant.
    """
    per_tutorial, overall, unmatched = _confusion(
        index,
        annotations,
        fragment_map,
        lambda record, _tid: bool(record and record.relevant),
    )
    return MetricsReport(per_tutorial=per_tutorial, overall=overall, unmatched=unmatched)


@dataclass(frozen=True)
class SweepPoint:
    threshold: float
    precision: float
    recall: float
    f_measure: float
    auto: bool


def _verdict_at(record: RelevanceRecord | None, threshold: float, score_mode: str) -> bool:
    if record is None or record.filtered_by or record.marginal_only:
        return False
    if score_mode == "topic":
        return record.topic_score_norm >= threshold
    if score_mode == "pagerank":
        return record.pagerank_score_norm >= threshold
    return (
        record.topic_score_norm >= threshold
        and record.pagerank_score_norm >= threshold
    )


def sweep_threshold(
    index: RelevanceIndex,
    annotations: AnnotationSet,
    step: float = 0.01,
    fragment_map: dict[tuple[str, str], int] | None = None,
) -> list[SweepPoint]:
    """Metrics across the threshold grid 0..1, plus the auto-threshold row.

    Verdicts are recomputed from the cached normalized scores in the
    index, so no pipeline stage reruns. The final row applies each
    tutorial's automatic threshold and reports their mean as its grid
    position, flagged ``auto``.
    """
    if step <= 0 or step > 1:
        raise InputError(f"sweep step must be in (0, 1], got {step}")
    score_mode = index.metadata["config"]["score_mode"]
    points = []
    i = 0
    while True:
        threshold = round(i * step, 10)
        if threshold > 1.0 + 1e-12:
            break
        threshold = min(threshold, 1.0)
        _, overall, _ = _confusion(
            index,
            annotations,
            fragment_map,
            lambda record, _tid, t=threshold: _verdict_at(record, t, score_mode),
        )
        points.append(
            SweepPoint(threshold, overall.precision, overall.recall, overall.f_measure, False)
        )
        if threshold >= 1.0:
            break
        i += 1
    tutorials_meta = index.metadata["tutorials"]
    auto_by_tutorial = {tid: meta["auto_threshold"] for tid, meta in tutorials_meta.items()}
    annotated = sorted({row.tutorial for row in annotations.rows} & set(auto_by_tutorial))
    if annotated:
        mean_auto = sum(auto_by_tutorial[tid] for tid in annotated) / len(annotated)
        _, overall, _ = _confusion(
            index,
            annotations,
            fragment_map,
            lambda record, tid: _verdict_at(
                record, auto_by_tutorial.get(tid, mean_auto), score_mode
            ),
        )
        points.append(
            SweepPoint(mean_auto, overall.precision, overall.recall, overall.f_measure, True)
        )
    return points
