"""Text normalization pipeline: multiword marking, tokenization,
lemmatization, stopword filtering, and lemma frequency tables.

All functions here are pure and all container types are immutable after
construction, so everything is safe to share across threads.
"""

from __future__ import annotations

import re
from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from types import MappingProxyType

from sklearn.base import BaseEstimator, TransformerMixin

# Letters, digits and underscore are word characters; a hyphen joins two
# word runs only when flanked by them (intra-word hyphen).
_TOKEN_RE = re.compile(r"\w+(?:-\w+)*", re.UNICODE)
_WS_TOKEN_RE = re.compile(r"\S+")


class LemmaMap:
    """Surface form to dictionary form mapping with identity fallback.

    Forms absent from the map lemmatize to themselves, so lookup is total.
    Both sides are lowercased; the token stream is lowercase already.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping[str, str] | None = None):
        self._entries = {
            surface.lower(): lemma.lower() for surface, lemma in (entries or {}).items()
        }

    def lemma_of(self, surface: str) -> str:
        return self._entries.get(surface, surface)

    @property
    def entries(self) -> Mapping[str, str]:
        return MappingProxyType(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, LemmaMap) and self._entries == other._entries


class StopList:
    """Set of lemmas excluded from frequency tables.

    Membership is exact string equality on lowercase lemmas.
    """

    __slots__ = ("_lemmas",)

    def __init__(self, lemmas: Iterable[str] = ()):
        self._lemmas = frozenset(lemma.lower() for lemma in lemmas)

    def __contains__(self, lemma: str) -> bool:
        return lemma in self._lemmas

    def __len__(self) -> int:
        return len(self._lemmas)

    def __iter__(self):
        return iter(sorted(self._lemmas))

    def __eq__(self, other) -> bool:
        return isinstance(other, StopList) and self._lemmas == other._lemmas


class MultiwordList:
    """Ordered list of multi-word expressions to mark up in running text.

    Expressions are space-separated word sequences of at least two words;
    duplicates (after case folding and whitespace normalization) are
    rejected. Matching is greedy longest-match, scanning left to right.
    """

    __slots__ = ("_expressions", "_by_first")

    def __init__(self, expressions: Iterable[str] = ()):
        seen: dict[tuple[str, ...], None] = {}
        for raw in expressions:
            words = tuple(raw.lower().split())
            if len(words) < 2:
                raise ValueError(
                    f"multiword expression needs at least two words: {raw!r}"
                )
            if words in seen:
                raise ValueError(f"duplicate multiword expression: {raw!r}")
            seen[words] = None
        self._expressions = tuple(seen)
        by_first: dict[str, list[tuple[str, ...]]] = {}
        for words in self._expressions:
            by_first.setdefault(words[0], []).append(words)
        for variants in by_first.values():
            variants.sort(key=len, reverse=True)
        self._by_first = by_first

    @property
    def expressions(self) -> tuple[str, ...]:
        return tuple(" ".join(words) for words in self._expressions)

    def __len__(self) -> int:
        return len(self._expressions)

    def __bool__(self) -> bool:
        return bool(self._expressions)

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiwordList) and self._expressions == other._expressions

    def _candidates(self, first_word: str) -> list[tuple[str, ...]]:
        return self._by_first.get(first_word, [])


_EMPTY_STOPLIST = StopList()
_EMPTY_LEMMA_MAP = LemmaMap()
_EMPTY_MULTIWORDS = MultiwordList()


class FrequencyTable:
    """Immutable lemma -> count map plus the total token count.

    Zero counts are never stored; ``total`` always equals the sum of the
    stored counts.
    """

    __slots__ = ("_counts", "total")

    def __init__(self, counts: Mapping[str, int] | None = None):
        clean: dict[str, int] = {}
        for lemma, count in (counts or {}).items():
            if count < 0:
                raise ValueError(f"negative count for lemma {lemma!r}: {count}")
            if count:
                clean[lemma] = int(count)
        self._counts = clean
        self.total = sum(clean.values())

    @property
    def counts(self) -> Mapping[str, int]:
        return MappingProxyType(self._counts)

    def get(self, lemma: str, default: int = 0) -> int:
        return self._counts.get(lemma, default)

    def items(self):
        return self._counts.items()

    def __contains__(self, lemma: str) -> bool:
        return lemma in self._counts

    def __len__(self) -> int:
        return len(self._counts)

    def __eq__(self, other) -> bool:
        return isinstance(other, FrequencyTable) and self._counts == other._counts

    def __repr__(self) -> str:
        return f"FrequencyTable({len(self._counts)} lemmas, total={self.total})"


def mark_multiwords(text: str, multiwords: MultiwordList | None) -> str:
    """Rewrite every listed expression with underscores joining its words.

    Matching is case-insensitive and whitespace-normalized; at each
    position the longest listed expression wins and scanning resumes
    after it. Text outside matches, including its whitespace, is
    returned unchanged, so the function is idempotent.
    """
    if not multiwords:
        return text
    tokens = list(_WS_TOKEN_RE.finditer(text))
    folded = [m.group().lower() for m in tokens]
    parts: list[str] = []
    last_end = 0
    i = 0
    while i < len(tokens):
        matched = 0
        for words in multiwords._candidates(folded[i]):
            n = len(words)
            if i + n <= len(tokens) and tuple(folded[i : i + n]) == words:
                matched = n
                break
        if matched:
            start = tokens[i].start()
            end = tokens[i + matched - 1].end()
            parts.append(text[last_end:start])
            parts.append("_".join(m.group() for m in tokens[i : i + matched]))
            last_end = end
            i += matched
        else:
            i += 1
    parts.append(text[last_end:])
    return "".join(parts)


def tokenize(text: str) -> list[str]:
    """Split text into lowercase tokens.

    Splits on whitespace and punctuation; underscores and intra-word
    hyphens count as word characters. Pure punctuation disappears, so
    every returned token is non-empty and whitespace-free.
    """
    return [match.group().lower() for match in _TOKEN_RE.finditer(text)]


def lemmatize(tokens: Sequence[str], lemma_map: LemmaMap | None = None) -> list[str]:
    """Replace each token by its dictionary form, identity on a miss."""
    if lemma_map is None:
        return list(tokens)
    return [lemma_map.lemma_of(token) for token in tokens]


def build_table(lemmas: Iterable[str], stoplist: StopList | None = None) -> FrequencyTable:
    """Count non-stopword lemmas; the total excludes removed stopwords."""
    if stoplist is None:
        stoplist = _EMPTY_STOPLIST
    counts = Counter(lemma for lemma in lemmas if lemma not in stoplist)
    return FrequencyTable(counts)


def merge_tables(tables: Iterable[FrequencyTable]) -> FrequencyTable:
    """Pointwise sum of counts; the total is the sum of the inputs' totals."""
    merged: Counter[str] = Counter()
    for table in tables:
        merged.update(table._counts)
    return FrequencyTable(merged)


class TextPipeline(BaseEstimator, TransformerMixin):
    """Stateless transformer from raw text to lemma frequency tables.

    Chains multiword marking, tokenization, lemmatization and stopword
    filtering. ``None`` resources mean empty ones, so the default
    pipeline just tokenizes and counts. Composes with downstream
    estimators via :class:`sklearn.pipeline.Pipeline`.
    """

    def __init__(
        self,
        lemma_map: LemmaMap | None = None,
        stoplist: StopList | None = None,
        multiwords: MultiwordList | None = None,
    ):
        self.lemma_map = lemma_map
        self.stoplist = stoplist
        self.multiwords = multiwords

    def fit(self, X=None, y=None):
        """No-op; the pipeline holds no fitted state."""
        return self

    def process(self, text: str) -> FrequencyTable:
        """Run one document through the full pipeline."""
        if not isinstance(text, str):
            raise TypeError(f"expected str, got {type(text).__name__}")
        marked = mark_multiwords(text, self.multiwords or _EMPTY_MULTIWORDS)
        tokens = tokenize(marked)
        lemmas = lemmatize(tokens, self.lemma_map or _EMPTY_LEMMA_MAP)
        return build_table(lemmas, self.stoplist or _EMPTY_STOPLIST)

    def transform(self, X: Iterable[str]) -> list[FrequencyTable]:
        return [self.process(text) for text in X]
