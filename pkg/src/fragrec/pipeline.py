"""End-to-end analysis: corpus in, persisted relevance index out.

The index is a plain JSON document holding every (fragment, API) record,
the fragment texts for display, and enough metadata (config snapshot,
seeds, thresholds) to re-run the analysis deterministically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import ApiCatalog, load_corpus, segment_tutorial
from .errors import InputError
from .filtering import DEFAULT_INDICATOR_PHRASES, RuleId, apply_filter
from .graphrank import (
    DEFAULT_DAMPING,
    build_similarity_graph,
    compute_pagerank,
    score_pagerank,
)
from .parsing import ParsedFragment, parse_fragment
from .relevance import (
    RelevanceRecord,
    ThresholdConfig,
    compute_threshold,
    identify_relevance,
)
from .topics import (
    DEFAULT_BETA,
    DEFAULT_ITERATIONS,
    build_documents,
    default_num_topics,
    fit_lda,
    score_topic,
)

SCHEMA_VERSION = 1
DEFAULT_SEED = 7


@dataclass(frozen=True)
class AnalyzeConfig:
    topics: int | None = None
    seed: int = DEFAULT_SEED
    damping: float = DEFAULT_DAMPING
    threshold: ThresholdConfig = field(default_factory=ThresholdConfig.auto)
    use_filter: bool = True
    use_resolution: bool = True
    score_mode: str = "both"
    alpha: float | None = None
    beta: float = DEFAULT_BETA
    iterations: int = DEFAULT_ITERATIONS
    indicator_phrases: tuple[str, ...] = DEFAULT_INDICATOR_PHRASES

    def to_dict(self) -> dict:
        return {
            "topics": self.topics,
            "seed": self.seed,
            "damping": self.damping,
            "threshold_mode": self.threshold.mode,
            "threshold_value": self.threshold.value,
            "use_filter": self.use_filter,
            "use_resolution": self.use_resolution,
            "score_mode": self.score_mode,
            "alpha": self.alpha,
            "beta": self.beta,
            "iterations": self.iterations,
            "indicator_phrases": list(self.indicator_phrases),
        }


def fragment_key(tutorial: str, ordinal: int) -> str:
    return f"{tutorial}:{ordinal}"


@dataclass
class RelevanceIndex:
    metadata: dict
    records: list[RelevanceRecord]
    fragments: dict[str, str]
    models: dict[str, dict] = field(default_factory=dict)
    graphs: dict[str, dict] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self._by_key = {
            (r.fragment_id[0], r.fragment_id[1], r.api): r for r in self.records
        }

    def lookup(self, tutorial: str, ordinal: int, api: str) -> RelevanceRecord | None:
        return self._by_key.get((tutorial, ordinal, api))

    def tutorials(self) -> list[str]:
        return sorted(self.metadata["tutorials"])

    def has_fragment(self, tutorial: str, ordinal: int) -> bool:
        return fragment_key(tutorial, ordinal) in self.fragments

    def apis(self) -> set[str]:
        return {r.api for r in self.records}

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "metadata": self.metadata,
            "fragments": self.fragments,
            "records": [
                {
                    "tutorial": r.fragment_id[0],
                    "fragment": r.fragment_id[1],
                    "api": r.api,
                    "topic_score": r.topic_score,
                    "pagerank_score": r.pagerank_score,
                    "topic_score_norm": r.topic_score_norm,
                    "pagerank_score_norm": r.pagerank_score_norm,
                    "marginal_only": r.marginal_only,
                    "relevant": r.relevant,
                    "filtered_by": sorted(rule.value for rule in r.filtered_by),
                }
                for r in self.records
            ],
        }

    def save(self, path: str | Path) -> None:
        Path(path).write_text(
            json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )

    @classmethod
    def load(cls, path: str | Path) -> "RelevanceIndex":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read index {path}: {exc}") from exc
        if data.get("schema_version") != SCHEMA_VERSION:
            raise InputError(f"unsupported index schema version in {path}")
        records = [
            RelevanceRecord(
                fragment_id=(row["tutorial"], row["fragment"]),
                api=row["api"],
                topic_score=row["topic_score"],
                pagerank_score=row["pagerank_score"],
                topic_score_norm=row["topic_score_norm"],
                pagerank_score_norm=row["pagerank_score_norm"],
                marginal_only=row["marginal_only"],
                relevant=row["relevant"],
                filtered_by=frozenset(RuleId(v) for v in row["filtered_by"]),
            )
            for row in data["records"]
        ]
        return cls(metadata=data["metadata"], records=records, fragments=data["fragments"])


def _analyze_tutorial(
    doc_id: str,
    parsed: list[ParsedFragment],
    catalog: ApiCatalog,
    config: AnalyzeConfig,
    dump_graphs: bool,
) -> tuple[list[RelevanceRecord], dict, dict[str, dict]]:
    verdicts = {}
    for pf in parsed:
        if config.use_filter:
            verdicts[pf.fragment.id] = apply_filter(pf, config.indicator_phrases)
        else:
            verdicts[pf.fragment.id] = None
    try:
        auto_threshold = compute_threshold(parsed, catalog)
    except ValueError as exc:
        raise InputError(f"tutorial {doc_id}: {exc}") from exc
    threshold = (
        auto_threshold if config.threshold.mode == "auto" else float(config.threshold.value)
    )

    retained = [
        pf for pf in parsed if verdicts[pf.fragment.id] is None or not verdicts[pf.fragment.id].filtered
    ]
    api_tokens = catalog.api_tokens()
    model = None
    num_topics = None
    if retained:
        _, vocab = build_documents(retained, api_tokens)
        if vocab:
            if config.topics is not None:
                num_topics = config.topics
            else:
                num_topics = min(default_num_topics(len(retained)), len(vocab))
            try:
                model = fit_lda(
                    retained,
                    num_topics,
                    seed=config.seed,
                    api_tokens=api_tokens,
                    iterations=config.iterations,
                    alpha=config.alpha,
                    beta=config.beta,
                )
            except ValueError as exc:
                raise InputError(f"tutorial {doc_id}: {exc}") from exc

    records: list[RelevanceRecord] = []
    graphs: dict[str, dict] = {}
    for pf in parsed:
        verdict = verdicts[pf.fragment.id]
        apis = sorted(pf.apis())
        if verdict is not None and verdict.filtered:
            for api in apis:
                containing = pf.sentences_with(api)
                records.append(
                    RelevanceRecord(
                        fragment_id=pf.fragment.id,
                        api=api,
                        topic_score=0.0,
                        pagerank_score=0.0,
                        topic_score_norm=0.0,
                        pagerank_score_norm=0.0,
                        marginal_only=bool(containing) and all(s.is_marginal for s in containing),
                        relevant=False,
                        filtered_by=verdict.fired_rules,
                    )
                )
            continue
        if not pf.sentences:
            continue
        graph = build_similarity_graph(pf.sentences, api_tokens)
        ranks = compute_pagerank(graph, damping=config.damping)
        if dump_graphs:
            graphs[fragment_key(*pf.fragment.id)] = {
                "ordinals": graph.ordinals,
                "similarity": graph.weights.tolist(),
                "pagerank": [ranks.pr[o] for o in graph.ordinals],
                "converged": ranks.converged,
            }
        scores = {}
        for api in apis:
            topic = score_topic(api, pf.fragment.id, model) if model is not None else 0.0
            scores[api] = (topic, score_pagerank(api, pf, ranks))
        records.extend(identify_relevance(pf, scores, threshold, config.score_mode))

    meta = {
        "threshold": threshold,
        "auto_threshold": auto_threshold,
        "num_topics": num_topics,
        "fragment_count": len(parsed),
        "retained_count": len(retained),
    }
    model_dump = model.to_dict() if model is not None else None
    return records, meta, {"model": model_dump, "graphs": graphs}


def analyze(
    corpus_dir: str | Path,
    catalog_path: str | Path,
    config: AnalyzeConfig | None = None,
    dump_model: bool = False,
    dump_graphs: bool = False,
) -> RelevanceIndex:
    """Run the full discovery pipeline over a corpus directory."""
    config = config or AnalyzeConfig()
    docs, catalog = load_corpus(corpus_dir, catalog_path)
    docs = sorted(docs, key=lambda d: d.id)
    all_records: list[RelevanceRecord] = []
    fragments_text: dict[str, str] = {}
    tutorials_meta: dict[str, dict] = {}
    models: dict[str, dict] = {}
    graphs: dict[str, dict] = {}
    for doc in docs:
        fragments = segment_tutorial(doc)
        parsed = [
            parse_fragment(f, catalog, resolve=config.use_resolution) for f in fragments
        ]
        for pf in parsed:
            fragments_text[fragment_key(*pf.fragment.id)] = pf.fragment.plain_text()
        records, meta, dumps = _analyze_tutorial(doc.id, parsed, catalog, config, dump_graphs)
        all_records.extend(records)
        tutorials_meta[doc.id] = meta
        if dump_model and dumps["model"] is not None:
            models[doc.id] = dumps["model"]
        graphs.update(dumps["graphs"])
    metadata = {
        "corpus_dir": str(corpus_dir),
        "catalog_path": str(catalog_path),
        "config": config.to_dict(),
        "tutorials": tutorials_meta,
    }
    return RelevanceIndex(
        metadata=metadata,
        records=all_records,
        fragments=fragments_text,
        models=models,
        graphs=graphs,
    )


@dataclass(frozen=True)
class RecommendHit:
    tutorial: str
    fragment: int
    score: float
    text: str


def recommend(
    index: RelevanceIndex,
    api: str,
    top_k: int | None = None,
) -> tuple[list[RecommendHit], bool]:
    """Relevant fragments for an API, best first.

    Ranking is by the sum of the two normalized scores, ties broken by
    fragment order. The boolean is False when the API never occurs in the
    index at all (the "unknown API" case).
    """
    known = any(r.api == api for r in index.records)
    order = {key: i for i, key in enumerate(index.fragments)}
    hits = []
    for r in index.records:
        if r.api != api or not r.relevant:
            continue
        key = fragment_key(*r.fragment_id)
        hits.append(
            (
                -(r.topic_score_norm + r.pagerank_score_norm),
                order.get(key, len(order)),
                RecommendHit(
                    tutorial=r.fragment_id[0],
                    fragment=r.fragment_id[1],
                    score=r.topic_score_norm + r.pagerank_score_norm,
                    text=index.fragments.get(key, ""),
                ),
            )
        )
    hits.sort(key=lambda h: (h[0], h[1]))
    results = [h[2] for h in hits]
    if top_k is not None:
        results = results[:top_k]
    return results, known
