"""Multilingual controlled-vocabulary model.

A thesaurus is a set of descriptors, each carrying exactly one label
per supported language plus hierarchical (broader/narrower), associative
(related) and synonym (use-for) links. The hierarchy must be acyclic
and reciprocal; related-term links must be symmetric. All of that is
checked at load time so queries never have to re-validate.

File format, one record per line, eight tab-separated sections::

    ID<TAB>FIELD<TAB>MICROTHESAURUS<TAB>BT:id,id<TAB>NT:id,id<TAB>RT:id,id<TAB>LABEL:lang=text;lang=text<TAB>UF:lang=syn|syn;lang=syn

Empty relation lists are written as ``BT:`` etc. Blank lines are
skipped. Commas separate ids, semicolons separate languages, pipes
separate synonyms of one language.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field as dataclass_field
from pathlib import Path

from .errors import (
    FormatError,
    ThesaurusValidationError,
    UnknownDescriptorError,
    UnknownLanguageError,
)

DEFAULT_MAX_DEPTH = 8

_SECTION_PREFIXES = ("BT:", "NT:", "RT:", "LABEL:", "UF:")


@dataclass(frozen=True)
class Descriptor:
    """One controlled-vocabulary entry with its labels and relations."""

    id: str
    field: str = ""
    microthesaurus: str = ""
    broader: frozenset[str] = dataclass_field(default_factory=frozenset)
    narrower: frozenset[str] = dataclass_field(default_factory=frozenset)
    related: frozenset[str] = dataclass_field(default_factory=frozenset)
    labels: Mapping[str, str] = dataclass_field(default_factory=dict)
    use_for: Mapping[str, tuple[str, ...]] = dataclass_field(default_factory=dict)


class Thesaurus:
    """Validated, immutable descriptor collection with structure queries."""

    def __init__(self, descriptors: Iterable[Descriptor], max_depth: int = DEFAULT_MAX_DEPTH):
        if max_depth < 1:
            raise ValueError(f"max_depth must be >= 1, got {max_depth}")
        by_id: dict[str, Descriptor] = {}
        for desc in descriptors:
            if desc.id in by_id:
                raise ThesaurusValidationError([f"duplicate descriptor id: {desc.id}"])
            by_id[desc.id] = desc
        self._descriptors = by_id
        self.max_depth = max_depth

        languages: list[str] = []
        fields: set[str] = set()
        microthesauri: set[str] = set()
        for desc in by_id.values():
            for lang in desc.labels:
                if lang not in languages:
                    languages.append(lang)
            if desc.field:
                fields.add(desc.field)
            if desc.microthesaurus:
                microthesauri.add(desc.microthesaurus)
        self.languages: tuple[str, ...] = tuple(languages)
        self.fields: frozenset[str] = frozenset(fields)
        self.microthesauri: frozenset[str] = frozenset(microthesauri)

        violations = self._validate()
        if violations:
            raise ThesaurusValidationError(violations)
        self.warnings: tuple[str, ...] = tuple(self._collect_warnings())

    # -- queries ---------------------------------------------------------

    @property
    def descriptors(self) -> Mapping[str, Descriptor]:
        return self._descriptors

    def __len__(self) -> int:
        return len(self._descriptors)

    def __contains__(self, descriptor_id: str) -> bool:
        return descriptor_id in self._descriptors

    def descriptor(self, descriptor_id: str) -> Descriptor:
        try:
            return self._descriptors[descriptor_id]
        except KeyError:
            raise UnknownDescriptorError(f"unknown descriptor id: {descriptor_id}") from None

    def label(self, descriptor_id: str, lang: str) -> str:
        """The unique label of a descriptor in one language."""
        desc = self.descriptor(descriptor_id)
        if lang not in self.languages:
            raise UnknownLanguageError(f"unknown language: {lang}")
        return desc.labels[lang]

    def neighbors(self, descriptor_id: str) -> set[str]:
        """Related terms plus broader and narrower terms one level away."""
        desc = self.descriptor(descriptor_id)
        result = set(desc.related) | set(desc.broader) | set(desc.narrower)
        result.discard(descriptor_id)
        return result

    # -- validation ------------------------------------------------------

    def _validate(self) -> list[str]:
        violations: list[str] = []
        by_id = self._descriptors

        for desc in by_id.values():
            for rel_name, targets in (
                ("BT", desc.broader),
                ("NT", desc.narrower),
                ("RT", desc.related),
            ):
                for target in sorted(targets):
                    if target == desc.id:
                        violations.append(
                            f"self-reference: {desc.id} lists itself as {rel_name}"
                        )
                    elif target not in by_id:
                        violations.append(
                            f"unknown descriptor referenced: {target} ({rel_name} of {desc.id})"
                        )
            for lang in self.languages:
                if lang not in desc.labels:
                    violations.append(
                        f"missing label: {desc.id} has no label for language {lang!r}"
                    )

        for desc in by_id.values():
            for target in sorted(desc.broader):
                other = by_id.get(target)
                if other is not None and desc.id not in other.narrower:
                    violations.append(
                        f"BT/NT reciprocity violated: {desc.id} lists BT {target} "
                        f"but {target} does not list NT {desc.id}"
                    )
            for target in sorted(desc.narrower):
                other = by_id.get(target)
                if other is not None and desc.id not in other.broader:
                    violations.append(
                        f"BT/NT reciprocity violated: {desc.id} lists NT {target} "
                        f"but {target} does not list BT {desc.id}"
                    )
            for target in sorted(desc.related):
                other = by_id.get(target)
                if other is not None and desc.id not in other.related:
                    violations.append(
                        f"RT asymmetry: {desc.id} lists RT {target} "
                        f"but {target} does not list RT {desc.id}"
                    )

        cycles = self._find_broader_cycles()
        violations.extend(f"BT cycle: {' -> '.join(cycle)}" for cycle in cycles)
        if not cycles:
            violations.extend(self._check_depth())
        return violations

    def _find_broader_cycles(self) -> list[list[str]]:
        by_id = self._descriptors
        WHITE, GRAY, BLACK = 0, 1, 2
        color = dict.fromkeys(by_id, WHITE)
        cycles: list[list[str]] = []

        def visit(start: str):
            stack = [(start, iter(sorted(by_id[start].broader)))]
            color[start] = GRAY
            path = [start]
            while stack:
                node, edges = stack[-1]
                advanced = False
                for target in edges:
                    if target not in by_id or target == node:
                        continue
                    if color[target] == GRAY:
                        cycle = path[path.index(target) :] + [target]
                        cycles.append(cycle)
                    elif color[target] == WHITE:
                        color[target] = GRAY
                        path.append(target)
                        stack.append((target, iter(sorted(by_id[target].broader))))
                        advanced = True
                        break
                if not advanced:
                    color[node] = BLACK
                    path.pop()
                    stack.pop()

        for start in sorted(by_id):
            if color[start] == WHITE:
                visit(start)
        return cycles

    def _check_depth(self) -> list[str]:
        # level 1 = top of the hierarchy; only valid once acyclicity holds
        by_id = self._descriptors
        levels: dict[str, int] = {}

        def level(node: str) -> int:
            cached = levels.get(node)
            if cached is not None:
                return cached
            parents = [p for p in by_id[node].broader if p in by_id and p != node]
            value = 1 + max((level(p) for p in parents), default=0)
            levels[node] = value
            return value

        violations = []
        for node in sorted(by_id):
            depth = level(node)
            if depth > self.max_depth:
                violations.append(
                    f"hierarchy depth {depth} exceeds maximum {self.max_depth} at {node}"
                )
        return violations

    def _collect_warnings(self) -> list[str]:
        # homograph labels are tolerated in real thesauri, so warn only
        warnings = []
        for lang in self.languages:
            seen: dict[str, list[str]] = {}
            for desc in self._descriptors.values():
                seen.setdefault(desc.labels[lang], []).append(desc.id)
            for text, ids in sorted(seen.items()):
                if len(ids) > 1:
                    warnings.append(
                        f"duplicate label in language {lang!r}: {text!r} used by "
                        + ", ".join(sorted(ids))
                    )
        return warnings


def _parse_id_list(section: str, prefix: str, path, line_no: int) -> frozenset[str]:
    if not section.startswith(prefix):
        raise FormatError(
            f"expected section starting with {prefix!r}, got {section!r}",
            path=path,
            line_no=line_no,
        )
    body = section[len(prefix) :]
    ids = [part for part in body.split(",") if part]
    return frozenset(ids)


def _parse_lang_pairs(body: str, path, line_no: int) -> list[tuple[str, str]]:
    pairs = []
    for chunk in body.split(";"):
        if not chunk:
            continue
        lang, sep, text = chunk.partition("=")
        if not sep or not lang:
            raise FormatError(
                f"expected lang=text, got {chunk!r}", path=path, line_no=line_no
            )
        pairs.append((lang, text))
    return pairs


def _parse_line(line: str, path, line_no: int) -> Descriptor:
    sections = line.split("\t")
    if len(sections) != 8:
        raise FormatError(
            f"expected 8 tab-separated sections, got {len(sections)}",
            path=path,
            line_no=line_no,
        )
    desc_id, field, micro = sections[0], sections[1], sections[2]
    if not desc_id or any(ch.isspace() for ch in desc_id) or "," in desc_id:
        raise FormatError(
            f"invalid descriptor id: {desc_id!r}", path=path, line_no=line_no
        )
    broader = _parse_id_list(sections[3], "BT:", path, line_no)
    narrower = _parse_id_list(sections[4], "NT:", path, line_no)
    related = _parse_id_list(sections[5], "RT:", path, line_no)

    if not sections[6].startswith("LABEL:"):
        raise FormatError(
            f"expected section starting with 'LABEL:', got {sections[6]!r}",
            path=path,
            line_no=line_no,
        )
    labels: dict[str, str] = {}
    for lang, text in _parse_lang_pairs(sections[6][len("LABEL:") :], path, line_no):
        if lang in labels:
            raise FormatError(
                f"duplicate label language {lang!r} for {desc_id}",
                path=path,
                line_no=line_no,
            )
        if not text:
            raise FormatError(
                f"empty label for language {lang!r} of {desc_id}",
                path=path,
                line_no=line_no,
            )
        labels[lang] = text

    if not sections[7].startswith("UF:"):
        raise FormatError(
            f"expected section starting with 'UF:', got {sections[7]!r}",
            path=path,
            line_no=line_no,
        )
    use_for: dict[str, tuple[str, ...]] = {}
    for lang, text in _parse_lang_pairs(sections[7][len("UF:") :], path, line_no):
        synonyms = tuple(s for s in text.split("|") if s)
        if lang in use_for:
            raise FormatError(
                f"duplicate use-for language {lang!r} for {desc_id}",
                path=path,
                line_no=line_no,
            )
        use_for[lang] = synonyms

    return Descriptor(
        id=desc_id,
        field=field,
        microthesaurus=micro,
        broader=broader,
        narrower=narrower,
        related=related,
        labels=labels,
        use_for=use_for,
    )


def load(path, max_depth: int = DEFAULT_MAX_DEPTH) -> Thesaurus:
    """Parse and validate a thesaurus file.

    Raises :class:`FormatError` with the offending line number on a
    malformed record, and :class:`ThesaurusValidationError` listing
    every structural violation found.
    """
    path = Path(path)
    descriptors = []
    seen: dict[str, int] = {}
    with path.open(encoding="utf-8") as handle:
        for line_no, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip():
                continue
            desc = _parse_line(line, path, line_no)
            if desc.id in seen:
                raise FormatError(
                    f"duplicate descriptor id {desc.id} (first seen on line {seen[desc.id]})",
                    path=path,
                    line_no=line_no,
                )
            seen[desc.id] = line_no
            descriptors.append(desc)
    return Thesaurus(descriptors, max_depth=max_depth)
