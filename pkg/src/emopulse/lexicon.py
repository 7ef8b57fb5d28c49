"""Linguistic resources and the multi-pattern longest-match scanner.

Three resource kinds feed the analyzer: an emotion lexicon (term, label,
weight), an emoticon table (surface literal, label, weight) and a negator
list. Lexicon and emoticon files share one TSV grammar:

    term<TAB>emotion[<TAB>weight]

UTF-8, LF line endings, `#`-prefixed comment lines and blank lines are
skipped. The negator list is one term per line with the same comment rule.

Matching over text is forward maximum matching by codepoint: scanning left
to right, the longest vocabulary term starting at the current position is
taken; positions where nothing matches become single-codepoint fillers.
Pure-ASCII terms match case-insensitively (informal Latin slang and
smileys vary in case); everything else matches exactly.
"""
from __future__ import annotations

import io
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, NamedTuple, Optional, Union

from .model import Emotion, parse_emotion

Source = Union[str, Path, IO[bytes], IO[str]]


class ResourceFormatError(ValueError):
    """A resource file line that violates the format, with its line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class LexiconEntry:
    term: str
    emotion: Emotion
    weight: float = 1.0


@dataclass(frozen=True)
class EmoticonEntry:
    literal: str
    emotion: Emotion
    weight: float = 1.0


class Term(NamedTuple):
    """One vocabulary item for the matcher.

    `emotion` is None for negators; emotion terms carry a label and a
    positive weight.
    """

    text: str
    emotion: Optional[Emotion]
    weight: float = 1.0

    @property
    def is_negator(self) -> bool:
        return self.emotion is None


class Segment(NamedTuple):
    """A half-open codepoint span of the input.

    `term` is the matched vocabulary item, or None for a single-codepoint
    filler. Segments tile the input: contiguous, non-overlapping, covering
    every codepoint.
    """

    start: int
    end: int
    term: Optional[Term]

    @property
    def is_match(self) -> bool:
        return self.term is not None


def _iter_lines(source: Source):
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as handle:
            yield from enumerate(handle, start=1)
        return
    if isinstance(source, io.TextIOBase):
        yield from enumerate(source, start=1)
        return
    # binary stream
    for line_no, raw in enumerate(source, start=1):
        yield line_no, raw.decode("utf-8")


def _parse_tsv_entries(source: Source, what: str):
    """Shared TSV grammar for lexicon and emoticon files."""
    seen: set[tuple[str, Emotion]] = set()
    for line_no, raw in _iter_lines(source):
        line = raw.rstrip("\n").rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) not in (2, 3):
            raise ResourceFormatError(
                line_no, f"expected 2 or 3 tab-separated fields, got {len(fields)}"
            )
        term = fields[0]
        if not term or "\t" in term:
            raise ResourceFormatError(line_no, f"empty {what}")
        try:
            emotion = parse_emotion(fields[1])
        except ValueError as exc:
            raise ResourceFormatError(line_no, str(exc)) from None
        if emotion is Emotion.NEUTRAL:
            raise ResourceFormatError(
                line_no, f"{what} {term!r} cannot carry the neutral label"
            )
        weight = 1.0
        if len(fields) == 3:
            try:
                weight = float(fields[2])
            except ValueError:
                raise ResourceFormatError(
                    line_no, f"malformed weight {fields[2]!r}"
                ) from None
            if not weight > 0:
                raise ResourceFormatError(line_no, f"non-positive weight {weight}")
        key = (term, emotion)
        if key in seen:
            raise ResourceFormatError(
                line_no, f"duplicate {what} {term!r} for {emotion.value}"
            )
        seen.add(key)
        yield term, emotion, weight


def load_lexicon(source: Source) -> list[LexiconEntry]:
    """Load emotion lexicon TSV. One entry per data line."""
    return [
        LexiconEntry(term, emotion, weight)
        for term, emotion, weight in _parse_tsv_entries(source, "term")
    ]


def load_emoticons(source: Source) -> list[EmoticonEntry]:
    """Load emoticon TSV. Same grammar, literal in place of term."""
    return [
        EmoticonEntry(literal, emotion, weight)
        for literal, emotion, weight in _parse_tsv_entries(source, "literal")
    ]


def load_negators(source: Source) -> frozenset[str]:
    """Load the negator list: one term per line, de-duplicated."""
    terms = set()
    for _line_no, raw in _iter_lines(source):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        terms.add(line)
    return frozenset(terms)


def dump_lexicon(entries: Iterable[LexiconEntry]) -> str:
    """Serialize entries back to the TSV grammar (round-trips with load)."""
    return "".join(
        f"{e.term}\t{e.emotion.value}\t{e.weight:g}\n" for e in entries
    )


def dump_emoticons(entries: Iterable[EmoticonEntry]) -> str:
    return "".join(
        f"{e.literal}\t{e.emotion.value}\t{e.weight:g}\n" for e in entries
    )


def _canonical(text: str) -> str:
    """The key under which a term matches: lowercased when pure ASCII."""
    return text.lower() if text.isascii() else text


class Matcher:
    """Compiled, immutable longest-match scanner over a fixed vocabulary.

    Construction is a pure function of the vocabulary, so two matchers
    built from the same terms segment every text identically. An empty
    vocabulary is allowed and matches nothing.

    Internals: `_buckets` maps a term's first codepoint to a tuple of
    candidates `(length, probe, folded, term)` sorted by length
    descending. For ASCII-insensitive terms `folded` is True and `probe`
    is the lowercased term, compared against the lowercased slice;
    otherwise the slice is compared to `probe` exactly. ASCII terms whose
    first codepoint is cased appear under both case variants so a single
    bucket lookup per position suffices. The analyzer's hot loops walk
    these buckets directly.
    """

    __slots__ = ("_buckets", "_size")

    def __init__(self, terms: Iterable[Term]):
        by_key: dict[str, Term] = {}
        for term in terms:
            if not term.text:
                raise ValueError("matcher terms must be non-empty")
            key = _canonical(term.text)
            if key in by_key:
                raise ValueError(
                    f"conflicting vocabulary entries for {term.text!r}"
                )
            by_key[key] = term

        buckets: dict[str, list[tuple[int, str, bool, Term]]] = {}
        for key, term in by_key.items():
            folded = term.text.isascii()
            probe = key if folded else term.text
            candidate = (len(probe), probe, folded, term)
            first = term.text[0]
            chars = {first}
            if folded:
                chars.update((first.lower(), first.upper()))
            for char in chars:
                buckets.setdefault(char, []).append(candidate)
        self._buckets = {
            char: tuple(sorted(cands, key=lambda c: -c[0]))
            for char, cands in buckets.items()
        }
        self._size = len(by_key)

    def __len__(self) -> int:
        return self._size

    def segment(self, text: str) -> list[Segment]:
        """Tile `text` into matched terms and single-codepoint fillers.

        Forward maximum matching: at each position the longest matching
        vocabulary term wins; otherwise a one-codepoint filler is emitted
        and the scan advances by one.
        """
        out: list[Segment] = []
        append = out.append
        get = self._buckets.get
        n = len(text)
        i = 0
        while i < n:
            candidates = get(text[i])
            if candidates is not None:
                for length, probe, folded, term in candidates:
                    j = i + length
                    if j > n:
                        continue
                    piece = text[i:j]
                    if (piece.lower() if folded else piece) == probe:
                        append(Segment(i, j, term))
                        i = j
                        break
                else:
                    append(Segment(i, i + 1, None))
                    i += 1
            else:
                append(Segment(i, i + 1, None))
                i += 1
        return out


def build_matcher(terms: Iterable[Term]) -> Matcher:
    """Compile a vocabulary of emotion terms and negators into a Matcher."""
    return Matcher(terms)


def lexicon_terms(
    entries: Iterable[LexiconEntry], negators: Iterable[str] = ()
) -> list[Term]:
    """Combine lexicon entries and negator terms into matcher vocabulary."""
    vocabulary = [Term(e.term, e.emotion, e.weight) for e in entries]
    vocabulary.extend(Term(t, None) for t in negators)
    return vocabulary


def emoticon_terms(entries: Iterable[EmoticonEntry]) -> list[Term]:
    return [Term(e.literal, e.emotion, e.weight) for e in entries]
