"""Keyness statistics: how much more often a lemma occurs in a document
than its share of a reference corpus predicts.

Two rankings are offered over the same 2x2 contingency layout (lemma
count vs corpus size, document vs reference):

* ``log_likelihood`` -- the two-term G2 statistic
  ``2 * (a*ln(a/E1) + b*ln(b/E2))`` with expected counts
  ``E1 = c*(a+b)/(c+d)`` and ``E2 = d*(a+b)/(c+d)``, where a zero count
  contributes zero. This is the default: it behaves better on
  low-frequency words.
* ``chi_square`` -- Pearson's chi-square over the full 2x2 table
  ``[[a, c-a], [b, d-b]]`` without continuity correction.

Both are exactly zero when observed equals expected (``a*d == b*c``)
and strictly positive otherwise. Scores have no absolute meaning; they
are only compared with each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import EmptyCorpusError, EmptyDocumentError, InvalidCellError
from .textpipe import FrequencyTable

#: Ranking methods accepted everywhere a ``method`` argument appears.
METHODS = ("loglik", "chisq")
DEFAULT_METHOD = "loglik"


@dataclass(frozen=True)
class ContingencyCell:
    """Counts feeding one keyness computation.

    ``a`` occurrences of the lemma in the document of ``c`` tokens;
    ``b`` occurrences in the reference corpus of ``d`` tokens.
    """

    a: int
    c: int
    b: int
    d: int

    def __post_init__(self):
        if self.c < 1 or self.d < 1:
            raise InvalidCellError(
                f"corpus sizes must be >= 1, got c={self.c}, d={self.d}"
            )
        if not 0 <= self.a <= self.c:
            raise InvalidCellError(f"need 0 <= a <= c, got a={self.a}, c={self.c}")
        if not 0 <= self.b <= self.d:
            raise InvalidCellError(f"need 0 <= b <= d, got b={self.b}, d={self.d}")


@dataclass(frozen=True)
class Keyword:
    """One ranked keyword: its lemma, keyness score and document frequency."""

    lemma: str
    keyness: float
    doc_freq: int


def log_likelihood(cell: ContingencyCell) -> float:
    """Two-term G2 keyness of a cell. Zero when proportions are equal."""
    a, c, b, d = cell.a, cell.c, cell.b, cell.d
    if a + b < 1:
        raise InvalidCellError("log-likelihood needs a + b >= 1")
    if a * d == b * c:
        return 0.0
    scale = (a + b) / (c + d)
    e1 = c * scale
    e2 = d * scale
    stat = 0.0
    if a:
        stat += a * math.log(a / e1)
    if b:
        stat += b * math.log(b / e2)
    # mathematically >= 0; guard against rounding just below zero
    return max(0.0, 2.0 * stat)


def chi_square(cell: ContingencyCell) -> float:
    """Pearson chi-square of the 2x2 table, no continuity correction."""
    a, c, b, d = cell.a, cell.c, cell.b, cell.d
    if a * d == b * c:
        return 0.0
    n = c + d
    observed = ((a, c - a), (b, d - b))
    col_totals = (a + b, n - a - b)
    row_totals = (c, d)
    stat = 0.0
    for i in range(2):
        for j in range(2):
            expected = row_totals[i] * col_totals[j] / n
            if expected:
                diff = observed[i][j] - expected
                stat += diff * diff / expected
    return max(0.0, stat)


_METHOD_FUNCS = {"loglik": log_likelihood, "chisq": chi_square}


def keyness_function(method: str):
    """Resolve a method name to its statistic function."""
    try:
        return _METHOD_FUNCS[method]
    except KeyError:
        raise ValueError(
            f"unknown keyness method {method!r}, expected one of {METHODS}"
        ) from None


def extract_keywords(
    doc: FrequencyTable,
    ref: FrequencyTable,
    method: str = DEFAULT_METHOD,
    limit: int | None = None,
    min_doc_freq: int = 1,
) -> list[Keyword]:
    """Ranked keywords of ``doc`` relative to the reference table.

    Only over-represented lemmas qualify (document proportion strictly
    above the reference proportion). Sorted by keyness descending,
    lemma ascending on ties; truncated to ``limit`` when given.
    """
    if doc.total < 1:
        raise EmptyDocumentError("cannot extract keywords from an empty document")
    if ref.total < 1:
        raise EmptyCorpusError("reference table is empty")
    if limit is not None and limit < 1:
        raise ValueError(f"limit must be positive, got {limit}")
    stat = keyness_function(method)
    c, d = doc.total, ref.total
    keywords = []
    for lemma, a in doc.items():
        if a < min_doc_freq:
            continue
        b = ref.get(lemma)
        # over-representation test a/c > b/d, kept in integers
        if a * d <= b * c:
            continue
        keywords.append(Keyword(lemma, stat(ContingencyCell(a, c, b, d)), a))
    keywords.sort(key=lambda kw: (-kw.keyness, kw.lemma))
    if limit is not None:
        del keywords[limit:]
    return keywords
