"""Sentence-graph scoring of (API, fragment) pairs.

Each fragment gets a directed graph over its sentences: vertices are
sentence ordinals, and two opposite edges connect every pair of sentences
with nonzero TF-IDF cosine similarity, weighted by that similarity.
Weighted PageRank then measures how central each sentence is, and the
correlation score of an API is the fraction of total PageRank mass held
by the sentences containing it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .parsing import ParsedFragment, Sentence
from .textutil import content_tokens

DEFAULT_DAMPING = 0.85
DEFAULT_TOLERANCE = 1e-8
DEFAULT_MAX_ITER = 200


@dataclass
class SentenceGraph:
    """Similarity graph over one fragment's sentences.

    ``weights[i, j]`` is the cosine similarity between sentences with
    ordinals ``ordinals[i]`` and ``ordinals[j]``; the diagonal is zero and
    the matrix is symmetric. Edges exist exactly where weights are nonzero.
    """

    ordinals: list[int]
    weights: np.ndarray

    def similarity(self, a: int, b: int) -> float:
        return float(self.weights[self.ordinals.index(a), self.ordinals.index(b)])


@dataclass
class PageRankVector:
    pr: dict[int, float]
    damping: float
    tolerance: float
    iterations: int
    converged: bool

    def total(self) -> float:
        return sum(self.pr.values())


def _tfidf_matrix(token_lists: list[list[str]]) -> np.ndarray:
    """Dense TF-IDF matrix over the fragment's own sentences.

    IDF uses the fragment's sentences as the collection (ln(N / df)), so a
    term present in every sentence carries no weight: the graph is a local
    structure and should not import corpus-level statistics.
    """
    n = len(token_lists)
    vocab: dict[str, int] = {}
    for tokens in token_lists:
        for tok in tokens:
            if tok not in vocab:
                vocab[tok] = len(vocab)
    tf = np.zeros((n, len(vocab) or 1))
    for i, tokens in enumerate(token_lists):
        for tok in tokens:
            tf[i, vocab[tok]] += 1.0
    df = (tf > 0).sum(axis=0)
    idf = np.log(n / np.maximum(df, 1))
    return tf * idf


def build_similarity_graph(
    sentences: list[Sentence],
    api_tokens: frozenset[str] = frozenset(),
) -> SentenceGraph:
    """TF-IDF cosine similarity graph over a fragment's sentences."""
    if not sentences:
        raise ValueError("cannot build a graph over zero sentences")
    token_lists = [content_tokens(s.text, api_tokens) for s in sentences]
    vectors = _tfidf_matrix(token_lists)
    norms = np.linalg.norm(vectors, axis=1)
    safe = np.where(norms > 0, norms, 1.0)
    unit = vectors / safe[:, None]
    sim = unit @ unit.T
    np.fill_diagonal(sim, 0.0)
    sim[sim < 0] = 0.0
    return SentenceGraph(ordinals=[s.ordinal for s in sentences], weights=sim)


def compute_pagerank(
    graph: SentenceGraph,
    damping: float = DEFAULT_DAMPING,
    tolerance: float = DEFAULT_TOLERANCE,
    max_iterations: int = DEFAULT_MAX_ITER,
) -> PageRankVector:
    """Weighted PageRank with the sum-preserving scaling.

    Values start at 1 and update as

        pr(v) <- (1 - d) + d * sum over incoming u of
                 pr(u) * w(u, v) / (total outgoing weight of u)

    so on a graph without isolated vertices the values sum to the vertex
    count. Isolated vertices settle at ``1 - d``. If the change between
    sweeps never drops below the tolerance, the last iterate is returned
    with ``converged=False``.
    """
    weights = graph.weights
    n = weights.shape[0]
    out = weights.sum(axis=1)
    pr = np.ones(n)
    converged = False
    iterations = 0
    for iterations in range(1, max_iterations + 1):
        contrib = np.divide(pr, out, out=np.zeros_like(pr), where=out > 0)
        updated = (1.0 - damping) + damping * (weights.T @ contrib)
        if np.abs(updated - pr).max() < tolerance:
            pr = updated
            converged = True
            break
        pr = updated
    return PageRankVector(
        pr={o: float(v) for o, v in zip(graph.ordinals, pr)},
        damping=damping,
        tolerance=tolerance,
        iterations=iterations,
        converged=converged,
    )


def score_pagerank(api: str, pf: ParsedFragment, ranks: PageRankVector) -> float:
    """Share of PageRank mass in the sentences containing the API.

    Membership uses post-substitution API sets, so sentences whose pronoun
    or variable resolved to the API count. An API absent from the fragment
    scores zero.
    """
    total = ranks.total()
    if total <= 0:
        return 0.0
    held = sum(ranks.pr[s.ordinal] for s in pf.sentences if api in s.apis)
    return held / total
