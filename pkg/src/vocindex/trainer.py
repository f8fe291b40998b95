"""Training: turn a manually indexed corpus into an associate store.

For every descriptor, all training documents carrying it are merged
into one mega-document, and that mega-document's keyness-ranked
keywords against a reference corpus become the descriptor's associate
list. By default the reference corpus is the whole training collection
of the same language, which keeps domain-wide vocabulary out of the
lists without stopword surgery.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .associates import (
    AssociateList,
    AssociateStore,
    LanguageReport,
    StoreHeader,
)
from .errors import EmptyCorpusError, UnknownDescriptorError
from .keyness import DEFAULT_METHOD, extract_keywords, keyness_function
from .textpipe import FrequencyTable, merge_tables
from .thesaurus import Thesaurus

#: Reference-corpus modes: the whole same-language collection, the
#: merge of the subcorpora a descriptor's documents came from, or an
#: externally supplied table.
REFERENCE_MODES = ("collection", "subcorpus", "external")

DEFAULT_MIN_TOKENS = 1000
DEFAULT_MAX_LIST_LEN = 500


@dataclass(frozen=True)
class TrainingDocument:
    """One manually indexed document, already reduced to a lemma table."""

    doc_id: str
    language: str
    lemma_table: FrequencyTable
    gold_descriptors: frozenset[str]
    subcorpus: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "gold_descriptors", frozenset(self.gold_descriptors))
        if not self.gold_descriptors:
            raise ValueError(f"document {self.doc_id!r} has no gold descriptors")


@dataclass(frozen=True)
class TrainerConfig:
    """Knobs of the training run.

    ``min_tokens`` is the smallest mega-document worth training on,
    roughly two to three pages of text. ``max_list_len`` caps each
    associate list (None means unlimited). ``reference`` picks the
    reference-corpus mode; ``external_reference`` must be set when it
    is ``"external"``.
    """

    method: str = DEFAULT_METHOD
    min_tokens: int = DEFAULT_MIN_TOKENS
    max_list_len: int | None = DEFAULT_MAX_LIST_LEN
    min_doc_freq: int = 1
    reference: str = "collection"
    external_reference: FrequencyTable | None = None

    def __post_init__(self):
        keyness_function(self.method)
        if self.min_tokens < 0:
            raise ValueError(f"min_tokens must be >= 0, got {self.min_tokens}")
        if self.max_list_len is not None and self.max_list_len < 1:
            raise ValueError(f"max_list_len must be >= 1 or None, got {self.max_list_len}")
        if self.reference not in REFERENCE_MODES:
            raise ValueError(
                f"unknown reference mode {self.reference!r}, expected one of {REFERENCE_MODES}"
            )
        if self.reference == "external" and self.external_reference is None:
            raise ValueError("reference='external' requires external_reference")


def build_mega_document(
    corpus: Sequence[TrainingDocument], descriptor_id: str
) -> FrequencyTable:
    """Merge the tables of exactly the documents indexed with the descriptor."""
    languages = {doc.language for doc in corpus}
    if len(languages) > 1:
        raise ValueError(
            f"corpus mixes languages {sorted(languages)}; train groups by language first"
        )
    return merge_tables(
        doc.lemma_table for doc in corpus if descriptor_id in doc.gold_descriptors
    )


def build_reference(
    corpus: Sequence[TrainingDocument],
    external: FrequencyTable | None = None,
) -> FrequencyTable:
    """The reference table: an external one verbatim, else the whole collection."""
    if external is not None:
        return external
    if not corpus:
        raise EmptyCorpusError("cannot build a reference table from an empty corpus")
    return merge_tables(doc.lemma_table for doc in corpus)


def _subcorpus_tables(docs: Sequence[TrainingDocument]) -> dict[str | None, FrequencyTable]:
    by_tag: dict[str | None, list[FrequencyTable]] = {}
    for doc in docs:
        by_tag.setdefault(doc.subcorpus, []).append(doc.lemma_table)
    return {tag: merge_tables(tables) for tag, tables in by_tag.items()}


def train(
    corpus: Iterable[TrainingDocument],
    thesaurus: Thesaurus | None,
    config: TrainerConfig = TrainerConfig(),
) -> AssociateStore:
    """Build the associate store from a manually indexed corpus.

    Each language trains independently. Descriptors whose mega-document
    falls below ``config.min_tokens`` are skipped and listed in the
    per-language report; the store header records the trained/skipped
    counts. Re-running on identical inputs reproduces the store exactly.

    ``thesaurus`` validates gold descriptor ids and sizes the report;
    pass None to train against the label set of the corpus alone.
    """
    corpus = list(corpus)
    if not corpus:
        raise EmptyCorpusError("training corpus is empty")
    if thesaurus is not None:
        for doc in corpus:
            for descriptor_id in sorted(doc.gold_descriptors):
                if descriptor_id not in thesaurus:
                    raise UnknownDescriptorError(
                        f"document {doc.doc_id!r} is indexed with unknown "
                        f"descriptor {descriptor_id}"
                    )

    by_language: dict[str, list[TrainingDocument]] = {}
    for doc in corpus:
        by_language.setdefault(doc.language, []).append(doc)

    lists: dict[str, dict[str, AssociateList]] = {}
    report: dict[str, LanguageReport] = {}
    for language in sorted(by_language):
        docs = by_language[language]
        collection = build_reference(
            docs, config.external_reference if config.reference == "external" else None
        )
        tag_tables = _subcorpus_tables(docs) if config.reference == "subcorpus" else None

        descriptor_ids = sorted(set().union(*(doc.gold_descriptors for doc in docs)))
        trained: dict[str, AssociateList] = {}
        skipped: list[str] = []
        for descriptor_id in descriptor_ids:
            selected = [doc for doc in docs if descriptor_id in doc.gold_descriptors]
            mega = merge_tables(doc.lemma_table for doc in selected)
            if mega.total < config.min_tokens or mega.total == 0:
                skipped.append(descriptor_id)
                continue
            if tag_tables is not None:
                tags = sorted({doc.subcorpus for doc in selected}, key=lambda t: (t is None, t))
                reference = merge_tables(tag_tables[tag] for tag in tags)
            else:
                reference = collection
            keywords = extract_keywords(
                mega,
                reference,
                method=config.method,
                limit=config.max_list_len,
                min_doc_freq=config.min_doc_freq,
            )
            trained[descriptor_id] = AssociateList(
                descriptor=descriptor_id,
                language=language,
                entries=tuple((kw.lemma, kw.keyness) for kw in keywords),
                training_tokens=mega.total,
            )
        lists[language] = trained
        total = len(thesaurus) if thesaurus is not None else len(descriptor_ids)
        report[language] = LanguageReport(
            trained=len(trained), skipped=tuple(skipped), total_descriptors=total
        )

    parameters = {
        "min_tokens": str(config.min_tokens),
        "max_list_len": "none" if config.max_list_len is None else str(config.max_list_len),
        "min_doc_freq": str(config.min_doc_freq),
        "reference": config.reference,
        "languages": ",".join(sorted(lists)),
    }
    for language, lang_report in sorted(report.items()):
        parameters[f"trained.{language}"] = str(lang_report.trained)
        parameters[f"skipped.{language}"] = str(len(lang_report.skipped))

    created_from = {
        "collection": "whole training collection",
        "subcorpus": "per-subcorpus merges of the training collection",
        "external": "external reference table",
    }[config.reference]
    header = StoreHeader(
        method=config.method, created_from=created_from, parameters=parameters
    )
    return AssociateStore(lists, header=header, report=report)
