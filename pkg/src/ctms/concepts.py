"""Grouping web lists into concepts.

Lists extracted by different wrappers may realize different meanings of
the seed.  Two lists are similar when they share member terms (a list
wholly contained in another signals a sub-concept and counts as fully
similar on the content side) and when the text surrounding them on their
pages is about the same topic.  Greedy average-linkage agglomeration over
that similarity, followed by support and seed filters, yields the
concepts.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .expansion import WebList
from .text import tokenize


class BackgroundCorpus:
    """Document-frequency statistics over the pages fetched in one run."""

    def __init__(self, documents: Iterable[tuple[str, str]]):
        self._doc_freq: Counter[str] = Counter()
        self.size = 0
        for _doc_id, body in documents:
            self.size += 1
            self._doc_freq.update(set(tokenize(body)))

    def idf(self, word: str) -> float:
        """log(|B| / (df + 1)), clamped at zero.

        The +1 smoothing makes the ratio dip below 1 for ubiquitous words;
        negative weights would break the [0, 1] range of cosine scores, so
        they clamp to zero instead.
        """
        if self.size == 0:
            return 0.0
        value = math.log(self.size / (self._doc_freq[word] + 1))
        return value if value > 0.0 else 0.0


@dataclass(frozen=True)
class ContextVector:
    """Sparse tf-idf vector over a web list's context window."""

    weights: Mapping[str, float]

    @property
    def norm(self) -> float:
        return math.sqrt(sum(w * w for w in self.weights.values()))


def context_vector(weblist: WebList, background: BackgroundCorpus) -> ContextVector:
    if background.size == 0:
        raise ValueError("background corpus must be non-empty")
    tf = Counter(tokenize(weblist.context))
    weights = {}
    for word, count in tf.items():
        w = count * background.idf(word)
        if w > 0.0:
            weights[word] = w
    return ContextVector(weights=weights)


def _cosine(a: ContextVector, b: ContextVector) -> float:
    na, nb = a.norm, b.norm
    if na == 0.0 or nb == 0.0:
        return 0.0
    small, large = (a.weights, b.weights) if len(a.weights) <= len(b.weights) else (b.weights, a.weights)
    dot = sum(w * large.get(word, 0.0) for word, w in small.items())
    value = dot / (na * nb)
    return min(1.0, max(0.0, value))


def list_similarity(
    a_terms: Iterable[str],
    a_vec: ContextVector,
    b_terms: Iterable[str],
    b_vec: ContextVector,
    lam: float = 0.5,
) -> float:
    """Blend of content overlap and context cosine, in [0, 1].

    Content part is |a∩b| / min(|a|, |b|): containment scores 1 so that a
    sub-concept list merges with its parent.  A zero-norm context vector
    contributes 0 on the context side.
    """
    if not 0.0 <= lam <= 1.0:
        raise ValueError("lam must lie in [0, 1]")
    sa, sb = set(a_terms), set(b_terms)
    if not sa or not sb:
        raise ValueError("term lists must be non-empty")
    content = len(sa & sb) / min(len(sa), len(sb))
    return lam * content + (1.0 - lam) * _cosine(a_vec, b_vec)


@dataclass(frozen=True)
class ConceptCluster:
    """A group of web lists assumed to share one meaning of the seed."""

    id: str
    lists: tuple[str, ...]  # weblist ids, sorted
    member_terms: frozenset[str]
    contains_seed: bool


def cluster_weblists(
    weblists: Sequence[WebList],
    vectors: Mapping[str, ContextVector],
    seed: str,
    threshold: float = 0.65,
    lam: float = 0.5,
) -> list[ConceptCluster]:
    """Greedy average-linkage agglomeration down to the similarity threshold.

    Clusters merge while the best average pairwise similarity between two
    clusters is at least `threshold`.  Ties break on the lexicographically
    smallest (cluster id, cluster id) pair; a cluster's id is the smallest
    member weblist id, so the procedure is deterministic for a fixed input.
    """
    if not weblists:
        raise ValueError("weblists must be non-empty")
    by_id = {wl.id: wl for wl in weblists}
    ids = sorted(by_id)

    sim: dict[tuple[str, str], float] = {}
    for i, a in enumerate(ids):
        for b in ids[i + 1 :]:
            sim[(a, b)] = list_similarity(
                by_id[a].terms, vectors[a], by_id[b].terms, vectors[b], lam
            )

    def pair_sim(a: str, b: str) -> float:
        return sim[(a, b)] if a < b else sim[(b, a)]

    clusters: list[list[str]] = [[i] for i in ids]
    while len(clusters) > 1:
        best_score = -1.0
        best_pair: tuple[int, int] | None = None
        for i in range(len(clusters)):
            for j in range(i + 1, len(clusters)):
                total = sum(pair_sim(a, b) for a in clusters[i] for b in clusters[j])
                score = total / (len(clusters[i]) * len(clusters[j]))
                key = (clusters[i][0], clusters[j][0])
                if score > best_score or (
                    score == best_score
                    and best_pair is not None
                    and key < (clusters[best_pair[0]][0], clusters[best_pair[1]][0])
                ):
                    best_score = score
                    best_pair = (i, j)
        if best_pair is None or best_score < threshold:
            break
        i, j = best_pair
        merged = sorted(clusters[i] + clusters[j])
        clusters = [c for k, c in enumerate(clusters) if k not in (i, j)]
        clusters.append(merged)
        clusters.sort(key=lambda c: c[0])

    out = []
    for members in clusters:
        terms = frozenset(t for wid in members for t in by_id[wid].terms)
        out.append(
            ConceptCluster(
                id=members[0],
                lists=tuple(members),
                member_terms=terms,
                contains_seed=seed in terms,
            )
        )
    out.sort(key=lambda c: c.id)
    return out


def filter_clusters(
    clusters: Iterable[ConceptCluster],
    seed: str,
    total_lists: int,
    min_support: float = 0.05,
) -> list[ConceptCluster]:
    """Drop clusters without the seed or with fewer than support·|L| lists.

    Survivors are ordered by descending list count (ties on cluster id),
    which is the presentation order of the final concepts.
    """
    # Tiny epsilon so binary-fraction noise in support*total cannot drop a
    # cluster sitting exactly on the boundary (the boundary itself is kept).
    floor = min_support * total_lists - 1e-9
    kept = [
        c
        for c in clusters
        if c.contains_seed and len(c.lists) >= floor
    ]
    kept.sort(key=lambda c: (-len(c.lists), c.id))
    return kept
