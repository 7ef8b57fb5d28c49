"""Rule-based emotion analysis: emoticons + lexicon + shifting rules.

A text is labeled in three steps. First every emoticon literal is pulled
out of the text, each adding its weight to a frequency vector; what is
left over is the residual text. Second the residual is scanned against
the emotion lexicon under the negation rule: a matched emotion term
contributes its weight unless an odd number of negator terms sit shortly
before it in the same clause, in which case its contribution is cancelled
outright (never flipped to another emotion). Stacked negators cancel each
other pairwise, so a doubly negated term counts again. Third the two
vectors are summed and the label is the argmax, falling back to neutral
when every weight is zero.

The scanning loops here are fused versions of `Matcher.segment` plus a
segment walk: they visit positions with identical longest-match decisions
but skip building segment objects. Equivalence against the segment-based
definition is held by tests.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources as importlib_resources
from pathlib import Path
from typing import Iterable, Optional, Union

from .lexicon import (
    EmoticonEntry,
    LexiconEntry,
    Matcher,
    Source,
    build_matcher,
    emoticon_terms,
    lexicon_terms,
    load_emoticons,
    load_lexicon,
    load_negators,
)
from .model import EMOTION_INDEX, Emotion, EmotionVector, argmax_label

#: Codepoints that end a clause and with it any pending negation.
DEFAULT_CLAUSE_BREAKERS = frozenset("，。！？；,.!?;…\n")


@dataclass(frozen=True)
class RuleConfig:
    """Parameters of the emotion-shifting rules.

    `negation_window` is the maximum number of segments (matched terms or
    single-codepoint fillers) allowed between a negator and the emotion
    term it governs. `clause_breakers` terminate negation scope.
    """

    negation_window: int = 3
    clause_breakers: frozenset[str] = DEFAULT_CLAUSE_BREAKERS

    def __post_init__(self) -> None:
        if self.negation_window < 0:
            raise ValueError("negation_window must be >= 0")
        if not self.clause_breakers:
            raise ValueError("clause_breakers must be non-empty")


@dataclass(frozen=True)
class AnalyzerResources:
    """Immutable bundle of compiled resources the analyzer runs on.

    Safe to share between any number of workers; classification never
    mutates it.
    """

    matcher: Matcher
    emoticons: Matcher
    rules: RuleConfig = field(default_factory=RuleConfig)

    @classmethod
    def from_entries(
        cls,
        lexicon_entries: Iterable[LexiconEntry],
        emoticon_entries: Iterable[EmoticonEntry] = (),
        negators: Iterable[str] = (),
        rules: Optional[RuleConfig] = None,
    ) -> "AnalyzerResources":
        return cls(
            matcher=build_matcher(lexicon_terms(lexicon_entries, negators)),
            emoticons=build_matcher(emoticon_terms(emoticon_entries)),
            rules=rules or RuleConfig(),
        )


def load_resources(
    lexicon_source: Source,
    emoticon_source: Optional[Source] = None,
    negator_source: Optional[Source] = None,
    rules: Optional[RuleConfig] = None,
) -> AnalyzerResources:
    """Load and compile resources from TSV / list files."""
    entries = load_lexicon(lexicon_source)
    emoticons = load_emoticons(emoticon_source) if emoticon_source is not None else []
    negators = load_negators(negator_source) if negator_source is not None else frozenset()
    return AnalyzerResources.from_entries(entries, emoticons, negators, rules)


def bundled_resource_path(name: str) -> Path:
    """Path of one of the demo resource files shipped with the package."""
    return Path(str(importlib_resources.files("emopulse").joinpath("data", name)))


def default_resources(rules: Optional[RuleConfig] = None) -> AnalyzerResources:
    """Compile the bundled demo lexicon, emoticons and negators."""
    return load_resources(
        bundled_resource_path("lexicon.tsv"),
        bundled_resource_path("emoticons.tsv"),
        bundled_resource_path("negators.txt"),
        rules,
    )


def _scan_emoticons(text: str, table: Matcher) -> tuple[str, list[float]]:
    """Longest-match emoticon removal. Returns (residual, weight slots)."""
    counts = [0.0] * 5
    get = table._buckets.get
    n = len(text)
    parts: list[str] = []
    last = 0
    i = 0
    while i < n:
        candidates = get(text[i])
        if candidates is None:
            i += 1
            continue
        for length, probe, folded, term in candidates:
            j = i + length
            if j > n:
                continue
            piece = text[i:j]
            if (piece.lower() if folded else piece) == probe:
                counts[EMOTION_INDEX[term.emotion]] += term.weight
                if last < i:
                    parts.append(text[last:i])
                last = j
                i = j
                break
        else:
            i += 1
    if last == 0:
        return text, counts
    if last < n:
        parts.append(text[last:])
    return "".join(parts), counts


def _score_residual(
    text: str, matcher: Matcher, rules: RuleConfig
) -> list[float]:
    """Lexicon scan with clause-scoped, parity-cancelling negation."""
    counts = [0.0] * 5
    get = matcher._buckets.get
    breakers = rules.clause_breakers
    window = rules.negation_window
    negator_positions: list[int] = []
    index = 0  # running segment index; fillers and matches each count once
    n = len(text)
    i = 0
    while i < n:
        char = text[i]
        candidates = get(char)
        matched = None
        if candidates is not None:
            for length, probe, folded, term in candidates:
                j = i + length
                if j > n:
                    continue
                piece = text[i:j]
                if (piece.lower() if folded else piece) == probe:
                    matched = term
                    i = j
                    break
        if matched is None:
            if char in breakers:
                negator_positions.clear()
            index += 1
            i += 1
            continue
        if matched.emotion is None:
            negator_positions.append(index)
        else:
            # Keep only negators whose gap to this term fits the window.
            cutoff = index - window - 1
            while negator_positions and negator_positions[0] < cutoff:
                negator_positions.pop(0)
            if len(negator_positions) % 2 == 0:
                counts[EMOTION_INDEX[matched.emotion]] += matched.weight
        index += 1
    return counts


def extract_emoticons(text: str, table: Matcher) -> tuple[str, EmotionVector]:
    """Strip emoticon literals from `text`, counting their weights.

    Longest literal wins at each position; unmatched codepoints pass
    through into the residual unchanged.
    """
    residual, counts = _scan_emoticons(text, table)
    return residual, EmotionVector(*counts)


def score_text(residual: str, res: AnalyzerResources) -> EmotionVector:
    """Score residual text against the lexicon under the negation rule."""
    return EmotionVector(*_score_residual(residual, res.matcher, res.rules))


def classify(text: str, res: AnalyzerResources) -> tuple[Emotion, EmotionVector]:
    """Label a text: emoticon weights plus lexicon weights, argmax label.

    Returns (label, vector); the label is neutral exactly when the vector
    is all zero.
    """
    residual, emoticon_counts = _scan_emoticons(text, res.emoticons)
    text_counts = _score_residual(residual, res.matcher, res.rules)
    vector = EmotionVector(
        *(a + b for a, b in zip(text_counts, emoticon_counts))
    )
    return argmax_label(vector), vector
