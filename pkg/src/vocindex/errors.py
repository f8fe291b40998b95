"""Exception hierarchy shared by all vocindex modules."""


class VocindexError(Exception):
    """Base class for all errors raised by this package."""


class InvalidCellError(VocindexError, ValueError):
    """A contingency cell violates its count invariants."""


class EmptyDocumentError(VocindexError, ValueError):
    """An operation that needs at least one token received an empty document."""


class EmptyCorpusError(VocindexError, ValueError):
    """A training or reference corpus contains no usable material."""


class UnknownDescriptorError(VocindexError, LookupError):
    """A descriptor id is not present in the thesaurus or store."""


class UnknownLanguageError(VocindexError, LookupError):
    """A language code is not covered by the thesaurus or store."""


class BothEmptyError(VocindexError, ValueError):
    """Similarity is undefined: both truncated descriptor sets are empty."""


class FormatError(VocindexError, ValueError):
    """A data file does not match its expected line format.

    Carries the offending path and 1-based line number so callers can
    point users at the exact spot.
    """

    def __init__(self, message: str, path=None, line_no: int | None = None):
        self.path = path
        self.line_no = line_no
        prefix = ""
        if path is not None:
            prefix = f"{path}:"
            if line_no is not None:
                prefix += f"{line_no}:"
            prefix += " "
        super().__init__(prefix + message)


class ThesaurusValidationError(VocindexError, ValueError):
    """A thesaurus parsed but violates structural invariants.

    ``violations`` lists every broken reciprocity, asymmetric relation,
    cycle, or missing label found in one pass.
    """

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        count = len(self.violations)
        lines = "\n".join(f"  - {v}" for v in self.violations)
        super().__init__(f"{count} validation error(s):\n{lines}")


class StoreVersionError(VocindexError, ValueError):
    """An associate store was written with an unsupported format version."""
