"""In-memory model of a trained associate store.

The store is the whole trained artifact: for every language and every
descriptor that had enough training material, a ranked list of
(lemma, weight) pairs. Assignment needs nothing else, so a store can be
saved once and reused without the training corpus.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from types import MappingProxyType

from .errors import UnknownLanguageError

#: Store format versions this code can read.
SUPPORTED_FORMAT_VERSIONS = (1,)
CURRENT_FORMAT_VERSION = 1


@dataclass(frozen=True)
class StoreHeader:
    """Versioned store metadata.

    ``parameters`` holds every key=value setting beyond the fixed
    fields; unknown keys survive a load/save round trip untouched.
    """

    format_version: int = CURRENT_FORMAT_VERSION
    method: str = "loglik"
    created_from: str = ""
    parameters: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "parameters", dict(self.parameters))

    def __eq__(self, other) -> bool:
        if not isinstance(other, StoreHeader):
            return NotImplemented
        return (
            self.format_version == other.format_version
            and self.method == other.method
            and self.created_from == other.created_from
            and dict(self.parameters) == dict(other.parameters)
        )


@dataclass(frozen=True)
class LanguageReport:
    """Per-language training outcome: how many descriptors got a list."""

    trained: int
    skipped: tuple[str, ...]
    total_descriptors: int

    def summary(self) -> str:
        return f"{self.trained} of {self.total_descriptors}"


@dataclass(frozen=True)
class AssociateList:
    """Ranked associates of one descriptor in one language.

    Entries are (lemma, weight) pairs sorted by weight descending,
    lemma ascending on ties; every weight is strictly positive.
    """

    descriptor: str
    language: str
    entries: tuple[tuple[str, float], ...]
    training_tokens: int = 0

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        for lemma, weight in self.entries:
            if weight <= 0:
                raise ValueError(
                    f"non-positive weight {weight!r} for lemma {lemma!r} "
                    f"in descriptor {self.descriptor}"
                )
        keys = [(-weight, lemma) for lemma, weight in self.entries]
        if keys != sorted(keys):
            raise ValueError(
                f"associate entries for {self.descriptor} are not sorted "
                "by weight descending, lemma ascending"
            )

    def weight(self, lemma: str) -> float:
        for entry_lemma, weight in self.entries:
            if entry_lemma == lemma:
                return weight
        return 0.0

    def __len__(self) -> int:
        return len(self.entries)


class AssociateStore:
    """All associate lists, keyed by language then descriptor id.

    Immutable after construction; an inverted lemma index per language
    is built eagerly so lookups are safe to share across threads.
    """

    def __init__(
        self,
        lists: Mapping[str, Mapping[str, AssociateList]],
        header: StoreHeader | None = None,
        report: Mapping[str, LanguageReport] | None = None,
    ):
        store: dict[str, dict[str, AssociateList]] = {}
        for language in sorted(lists):
            per_desc: dict[str, AssociateList] = {}
            for descriptor in sorted(lists[language]):
                assoc = lists[language][descriptor]
                if assoc.language != language or assoc.descriptor != descriptor:
                    raise ValueError(
                        f"associate list keyed as ({language}, {descriptor}) "
                        f"describes ({assoc.language}, {assoc.descriptor})"
                    )
                per_desc[descriptor] = assoc
            store[language] = per_desc
        self._lists = store
        self.header = header if header is not None else StoreHeader()
        self.report = dict(report) if report else {}
        self._index = {
            language: self._build_index(per_desc)
            for language, per_desc in store.items()
        }

    @staticmethod
    def _build_index(per_desc: Mapping[str, AssociateList]):
        index: dict[str, list[tuple[str, float]]] = {}
        for descriptor, assoc in per_desc.items():
            for lemma, weight in assoc.entries:
                index.setdefault(lemma, []).append((descriptor, weight))
        return {lemma: tuple(pairs) for lemma, pairs in index.items()}

    @property
    def languages(self) -> tuple[str, ...]:
        return tuple(self._lists)

    def lists(self, language: str) -> Mapping[str, AssociateList]:
        try:
            return MappingProxyType(self._lists[language])
        except KeyError:
            raise UnknownLanguageError(
                f"store has no associate lists for language {language!r}"
            ) from None

    def get(self, language: str, descriptor: str) -> AssociateList | None:
        return self._lists.get(language, {}).get(descriptor)

    def lemma_index(self, language: str) -> Mapping[str, tuple[tuple[str, float], ...]]:
        """Inverted index: lemma -> ((descriptor, weight), ...)."""
        try:
            return MappingProxyType(self._index[language])
        except KeyError:
            raise UnknownLanguageError(
                f"store has no associate lists for language {language!r}"
            ) from None

    def descriptor_count(self, language: str) -> int:
        return len(self.lists(language))

    def __eq__(self, other) -> bool:
        if not isinstance(other, AssociateStore):
            return NotImplemented
        return self._lists == other._lists and self.header == other.header

    def __repr__(self) -> str:
        sizes = ", ".join(
            f"{language}:{len(per_desc)}" for language, per_desc in self._lists.items()
        )
        return f"AssociateStore({sizes or 'empty'})"
