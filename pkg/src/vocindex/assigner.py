"""Assignment: score and rank descriptors for a new document.

Every lemma of the document that appears in a descriptor's associate
list contributes its document frequency times the associate's weight to
that descriptor's score. Scores are raw sums on an arbitrary scale;
only their ranking carries meaning. Because descriptor ids are
language-neutral, two documents in different languages can be compared
through their assigned descriptor sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .associates import AssociateStore
from .errors import BothEmptyError, EmptyDocumentError, UnknownLanguageError
from .textpipe import FrequencyTable
from .thesaurus import Thesaurus

DEFAULT_TOP_N = 25

SIMILARITY_METRICS = ("jaccard", "cosine")


class RankedDescriptor(NamedTuple):
    descriptor: str
    score: float
    rank: int


@dataclass(frozen=True)
class Assignment:
    """Ranked (descriptor, score) list for one document.

    Scores are non-increasing with rank; ties break by descriptor id
    ascending; zero-score descriptors are never included.
    """

    doc_id: str
    language: str
    ranked: tuple[RankedDescriptor, ...]

    def descriptor_ids(self) -> list[str]:
        return [entry.descriptor for entry in self.ranked]

    def top(self, k: int) -> tuple[RankedDescriptor, ...]:
        return tuple(entry for entry in self.ranked if entry.rank <= k)

    def __len__(self) -> int:
        return len(self.ranked)


def assign(
    doc_table: FrequencyTable,
    store: AssociateStore,
    language: str,
    top_n: int | None = DEFAULT_TOP_N,
    doc_id: str = "",
    normalize: bool = False,
) -> Assignment:
    """Score every descriptor whose associates occur in the document.

    ``normalize=True`` rescales scores to a per-1000-token basis so
    documents of different lengths become comparable; the ranking is
    unaffected.
    """
    if doc_table.total < 1:
        raise EmptyDocumentError(f"document {doc_id!r} has no countable tokens")
    if language not in store.languages:
        raise UnknownLanguageError(
            f"store has no associate lists for language {language!r}"
        )
    if top_n is not None and top_n < 1:
        raise ValueError(f"top_n must be >= 1 or None, got {top_n}")
    index = store.lemma_index(language)
    scores: dict[str, float] = {}
    # lemma order fixed by sorting so equal tables always sum identically
    for lemma, freq in sorted(doc_table.items()):
        for descriptor, weight in index.get(lemma, ()):
            scores[descriptor] = scores.get(descriptor, 0.0) + freq * weight
    if normalize:
        factor = 1000.0 / doc_table.total
        scores = {descriptor: score * factor for descriptor, score in scores.items()}
    ordered = sorted(scores.items(), key=lambda item: (-item[1], item[0]))
    if top_n is not None:
        ordered = ordered[:top_n]
    ranked = tuple(
        RankedDescriptor(descriptor, score, rank)
        for rank, (descriptor, score) in enumerate(ordered, start=1)
        if score > 0.0
    )
    return Assignment(doc_id=doc_id, language=language, ranked=ranked)


def display(
    assignment: Assignment, thesaurus: Thesaurus, target_lang: str
) -> list[tuple[int, float, str]]:
    """Render the ranking as (rank, score, label) rows in any language.

    Order and scores are untouched; only the labels change with the
    target language.
    """
    if target_lang not in thesaurus.languages:
        raise UnknownLanguageError(f"unknown language: {target_lang}")
    return [
        (entry.rank, entry.score, thesaurus.label(entry.descriptor, target_lang))
        for entry in assignment.ranked
    ]


@dataclass(frozen=True)
class SimilarityScore:
    """Similarity of two documents via their top-k descriptor sets."""

    value: float
    k: int


def similarity(
    a: Assignment, b: Assignment, k: int, metric: str = "jaccard"
) -> SimilarityScore:
    """Compare two assignments by their top-k descriptors.

    ``jaccard`` works on the descriptor id sets; ``cosine`` on the score
    vectors over the union of both top-k sets, each normalized to unit
    length. The assignments may come from documents in different
    languages. Never consults labels, so the result cannot depend on
    any display language.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if metric not in SIMILARITY_METRICS:
        raise ValueError(
            f"unknown metric {metric!r}, expected one of {SIMILARITY_METRICS}"
        )
    top_a = {entry.descriptor: entry.score for entry in a.top(k)}
    top_b = {entry.descriptor: entry.score for entry in b.top(k)}
    if not top_a and not top_b:
        raise BothEmptyError(
            f"documents {a.doc_id!r} and {b.doc_id!r} both have empty top-{k} sets"
        )
    if metric == "jaccard":
        intersection = len(top_a.keys() & top_b.keys())
        union = len(top_a.keys() | top_b.keys())
        return SimilarityScore(value=intersection / union, k=k)
    norm_a = math.sqrt(sum(score * score for score in top_a.values()))
    norm_b = math.sqrt(sum(score * score for score in top_b.values()))
    if norm_a == 0.0 or norm_b == 0.0:
        return SimilarityScore(value=0.0, k=k)
    dot = sum(score * top_b.get(descriptor, 0.0) for descriptor, score in top_a.items())
    return SimilarityScore(value=dot / (norm_a * norm_b), k=k)
