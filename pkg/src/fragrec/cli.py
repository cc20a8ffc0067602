"""Command-line interface: analyze, recommend, eval."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import AlignmentError, InputError
from .evaluation import evaluate, load_annotations, load_fragment_map, sweep_threshold
from .filtering import load_indicator_phrases
from .pipeline import AnalyzeConfig, RelevanceIndex, analyze, recommend
from .relevance import SCORE_MODES, ThresholdConfig

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_ALIGNMENT_ERROR = 2


class _Parser(argparse.ArgumentParser):
    """Argparse with usage failures mapped to the input-error exit code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT_ERROR)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="fragrec",
        description="Discover and recommend tutorial fragments that explain APIs.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    analyze_p = sub.add_parser("analyze", help="build a relevance index from a corpus")
    analyze_p.add_argument("--corpus", required=True, help="directory of *.html tutorials")
    analyze_p.add_argument("--apis", required=True, help="API catalog file")
    analyze_p.add_argument("--out", required=True, help="output index JSON path")
    analyze_p.add_argument("--topics", type=int, default=None, help="topic count (default: auto)")
    analyze_p.add_argument("--seed", type=int, default=AnalyzeConfig.seed)
    analyze_p.add_argument("--damping", type=float, default=AnalyzeConfig.damping)
    analyze_p.add_argument("--threshold", default="auto", help="'auto' or a value in [0, 1]")
    analyze_p.add_argument("--no-filter", action="store_true", help="keep non-explanatory fragments")
    analyze_p.add_argument("--no-resolution", action="store_true", help="skip pronoun/variable substitution")
    analyze_p.add_argument("--scores", choices=SCORE_MODES, default="both")
    analyze_p.add_argument("--indicators", default=None, help="file of indicator phrases, one per line")
    analyze_p.add_argument("--dump-model", action="store_true", help="also write <out>.model.json")
    analyze_p.add_argument("--dump-graphs", action="store_true", help="also write <out>.graphs.json")

    rec_p = sub.add_parser("recommend", help="list relevant fragments for an API")
    rec_p.add_argument("--index", required=True)
    rec_p.add_argument("--api", required=True)
    rec_p.add_argument("--top", type=int, default=None)

    eval_p = sub.add_parser("eval", help="score an index against annotations")
    eval_p.add_argument("--index", required=True)
    eval_p.add_argument("--annotations", required=True)
    eval_p.add_argument("--sweep", action="store_true", help="emit a threshold-sweep CSV")
    eval_p.add_argument("--step", type=float, default=0.01)
    eval_p.add_argument("--fragment-map", default=None)
    return parser


def _cmd_analyze(args) -> int:
    indicators = None
    if args.indicators:
        indicators = load_indicator_phrases(args.indicators)
    try:
        threshold = ThresholdConfig.parse(args.threshold)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    config = AnalyzeConfig(
        topics=args.topics,
        seed=args.seed,
        damping=args.damping,
        threshold=threshold,
        use_filter=not args.no_filter,
        use_resolution=not args.no_resolution,
        score_mode=args.scores,
        indicator_phrases=indicators if indicators is not None else AnalyzeConfig.indicator_phrases,
    )
    index = analyze(
        args.corpus,
        args.apis,
        config,
        dump_model=args.dump_model,
        dump_graphs=args.dump_graphs,
    )
    index.save(args.out)
    out = Path(args.out)
    if args.dump_model:
        out.with_suffix(out.suffix + ".model.json").write_text(
            json.dumps(index.models, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    if args.dump_graphs:
        out.with_suffix(out.suffix + ".graphs.json").write_text(
            json.dumps(index.graphs, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    tutorials = index.metadata["tutorials"]
    print(f"indexed {len(tutorials)} tutorial(s), {len(index.records)} records -> {args.out}")
    for tid in sorted(tutorials):
        meta = tutorials[tid]
        print(
            f"  {tid}: {meta['fragment_count']} fragments, retained {meta['retained_count']}, "
            f"threshold {meta['threshold']:.4f} (auto {meta['auto_threshold']:.4f})"
        )
    return EXIT_OK


def _cmd_recommend(args) -> int:
    index = RelevanceIndex.load(args.index)
    hits, known = recommend(index, args.api, top_k=args.top)
    if not known:
        print(f"unknown API: {args.api}", file=sys.stderr)
        return EXIT_OK
    for rank, hit in enumerate(hits, start=1):
        print(f"#{rank} {hit.tutorial} fragment {hit.fragment} (score {hit.score:.4f})")
        print(hit.text)
        print()
    if not hits:
        print(f"no relevant fragments for {args.api}", file=sys.stderr)
    return EXIT_OK


def _cmd_eval(args) -> int:
    index = RelevanceIndex.load(args.index)
    annotations = load_annotations(args.annotations)
    fragment_map = load_fragment_map(args.fragment_map) if args.fragment_map else None
    if args.sweep:
        points = sweep_threshold(index, annotations, step=args.step, fragment_map=fragment_map)
        print("T,precision,recall,f_measure,auto")
        for p in points:
            print(
                f"{p.threshold:.6g},{p.precision:.4f},{p.recall:.4f},{p.f_measure:.4f},{int(p.auto)}"
            )
        return EXIT_OK
    report = evaluate(index, annotations, fragment_map=fragment_map)
    print("tutorial            TP  FP  FN  TN   precision  recall  f-measure")
    for tid, m in report.per_tutorial.items():
        print(
            f"{tid:<18s} {m.tp:3d} {m.fp:3d} {m.fn:3d} {m.tn:3d}   "
            f"{m.precision:8.2f} {m.recall:8.2f} {m.f_measure:8.2f}"
        )
    o = report.overall
    print(
        f"{'macro average':<18s} {o.tp:3d} {o.fp:3d} {o.fn:3d} {o.tn:3d}   "
        f"{o.precision:8.2f} {o.recall:8.2f} {o.f_measure:8.2f}"
    )
    if report.unmatched:
        print(f"warning: {len(report.unmatched)} annotation rows did not match the index", file=sys.stderr)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "analyze":
            return _cmd_analyze(args)
        if args.command == "recommend":
            return _cmd_recommend(args)
        if args.command == "eval":
            return _cmd_eval(args)
        parser.error(f"unknown command {args.command}")
    except AlignmentError as exc:
        print(f"fragrec: alignment error: {exc}", file=sys.stderr)
        return EXIT_ALIGNMENT_ERROR
    except InputError as exc:
        print(f"fragrec: error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except OSError as exc:
        print(f"fragrec: error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
