"""Topic-model scoring of (API, fragment) pairs.

Retained fragments of one tutorial form the corpus; each fragment is one
document. A latent Dirichlet allocation model fitted by collapsed Gibbs
sampling yields a topic mixture per fragment and a term distribution per
topic, and the correlation score of an API with a fragment is the
expected probability of the API token under the fragment's mixture:

    score = sum over topics t of P(api | t) * P(t | fragment)
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .parsing import ParsedFragment
from .textutil import content_tokens

DEFAULT_BETA = 0.01
DEFAULT_ITERATIONS = 1000
MIN_AUTO_TOPICS = 5


def build_documents(
    fragments: list[ParsedFragment],
    api_tokens: frozenset[str],
) -> tuple[list[list[str]], dict[str, int]]:
    """Bag-of-words documents plus the shared term index.

    Prose and code sentences both contribute tokens (post-substitution, so
    resolved pronouns and variables count toward their APIs). Stop words
    and digit-only tokens are dropped; API tokens always survive.
    """
    docs = []
    vocab: dict[str, int] = {}
    for pf in fragments:
        tokens: list[str] = []
        for sent in pf.sentences:
            tokens.extend(content_tokens(sent.text, api_tokens))
        for tok in tokens:
            if tok not in vocab:
                vocab[tok] = len(vocab)
        docs.append(tokens)
    return docs, vocab


@dataclass
class TopicModel:
    num_topics: int
    vocabulary: dict[str, int]
    fragment_ids: list[tuple[str, int]]
    fragment_topic: np.ndarray  # (num fragments, num topics), rows sum to 1
    topic_term: np.ndarray  # (num topics, vocabulary size), rows sum to 1
    seed: int
    alpha: float
    beta: float
    iterations: int

    def mixture(self, fragment_id: tuple[str, int]) -> np.ndarray:
        idx = self.fragment_ids.index(fragment_id)
        return self.fragment_topic[idx]

    def to_dict(self) -> dict:
        return {
            "num_topics": self.num_topics,
            "seed": self.seed,
            "alpha": self.alpha,
            "beta": self.beta,
            "iterations": self.iterations,
            "vocabulary": sorted(self.vocabulary, key=self.vocabulary.get),
            "fragment_ids": [list(fid) for fid in self.fragment_ids],
            "fragment_topic": self.fragment_topic.tolist(),
            "topic_term": self.topic_term.tolist(),
        }


def default_num_topics(fragment_count: int) -> int:
    """Auto topic count: at least five, scaling with corpus size."""
    return max(MIN_AUTO_TOPICS, fragment_count // 5)


def fit_lda(
    fragments: list[ParsedFragment],
    num_topics: int,
    seed: int,
    api_tokens: frozenset[str] = frozenset(),
    iterations: int = DEFAULT_ITERATIONS,
    alpha: float | None = None,
    beta: float = DEFAULT_BETA,
) -> TopicModel:
    """Fit a topic model over retained fragments by collapsed Gibbs sampling.

    Deterministic given (fragments, num_topics, seed, iterations, alpha,
    beta): the sampler walks documents and token positions in a fixed
    order and draws from a single seeded generator.
    """
    if not fragments:
        raise ValueError("cannot fit a topic model over zero fragments")
    if num_topics < 1:
        raise ValueError("num_topics must be >= 1")
    docs, vocab = build_documents(fragments, api_tokens)
    if not vocab:
        raise ValueError("empty vocabulary: no content tokens in any fragment")
    if num_topics > len(vocab):
        raise ValueError(f"num_topics {num_topics} exceeds vocabulary size {len(vocab)}")
    if alpha is None:
        alpha = 50.0 / num_topics

    rng = np.random.default_rng(seed)
    n_docs = len(docs)
    n_terms = len(vocab)
    doc_ids = [[vocab[t] for t in doc] for doc in docs]

    # Counts live in plain lists: the per-token conditional touches only
    # num_topics cells, where list indexing beats array dispatch by ~10x.
    doc_topic = [[0] * num_topics for _ in range(n_docs)]
    term_topic = [[0] * num_topics for _ in range(n_terms)]
    topic_total = [0] * num_topics
    assignments = []
    for d, ids in enumerate(doc_ids):
        z = [int(k) for k in rng.integers(0, num_topics, size=len(ids))]
        assignments.append(z)
        for w, k in zip(ids, z):
            doc_topic[d][k] += 1
            term_topic[w][k] += 1
            topic_total[k] += 1

    beta_total = beta * n_terms
    topics = range(num_topics)
    random = rng.random
    for _ in range(iterations):
        for d, ids in enumerate(doc_ids):
            z = assignments[d]
            dt = doc_topic[d]
            for i, w in enumerate(ids):
                k = z[i]
                dt[k] -= 1
                tt = term_topic[w]
                tt[k] -= 1
                topic_total[k] -= 1
                total = 0.0
                cumulative = []
                for j in topics:
                    total += (dt[j] + alpha) * (tt[j] + beta) / (topic_total[j] + beta_total)
                    cumulative.append(total)
                u = random() * total
                k = 0
                while cumulative[k] < u and k < num_topics - 1:
                    k += 1
                z[i] = k
                dt[k] += 1
                tt[k] += 1
                topic_total[k] += 1

    doc_topic_arr = np.array(doc_topic, dtype=np.float64)
    term_topic_arr = np.array(term_topic, dtype=np.float64).T
    topic_total_arr = np.array(topic_total, dtype=np.float64)
    doc_lengths = doc_topic_arr.sum(axis=1, keepdims=True)
    theta = (doc_topic_arr + alpha) / (doc_lengths + num_topics * alpha)
    phi = (term_topic_arr + beta) / (topic_total_arr[:, None] + beta_total)
    return TopicModel(
        num_topics=num_topics,
        vocabulary=vocab,
        fragment_ids=[pf.fragment.id for pf in fragments],
        fragment_topic=theta,
        topic_term=phi,
        seed=seed,
        alpha=alpha,
        beta=beta,
        iterations=iterations,
    )


def score_topic(api: str, fragment_id: tuple[str, int], model: TopicModel) -> float:
    """Expected probability of the API token under the fragment's mixture.

    An API whose token never made it into the vocabulary scores zero; an
    unknown fragment is an error.
    """
    if fragment_id not in model.fragment_ids:
        raise KeyError(f"fragment {fragment_id} not in topic model")
    term = api.lower()
    idx = model.vocabulary.get(term)
    if idx is None:
        return 0.0
    mixture = model.mixture(fragment_id)
    return float(mixture @ model.topic_term[:, idx])
