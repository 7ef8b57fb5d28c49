"""Annotation sampling and precision scoring for the analyzer's output.

The protocol matches how a rule tagger gets audited in production: pull a
fixed-size random sample of predictions per day and per emotional label,
have annotators confirm or reject the predicted labels, then report
per-class precision and its unweighted (macro) mean. Neutral predictions
are never sampled and never scored; recall is out of scope because
annotators only ever see predicted-positive tweets.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, NamedTuple, Optional, Union

from .model import EMOTIONAL_LABELS, Emotion, parse_emotion


class Prediction(NamedTuple):
    id: str
    day: str  # YYYY-MM-DD in the display offset
    label: Emotion


@dataclass(frozen=True)
class GoldRecord:
    id: str
    gold: Emotion


class GoldIdNotPredicted(ValueError):
    """A gold id with no matching prediction; the inputs do not line up."""

    def __init__(self, record_id: str):
        super().__init__(f"gold id not present in predictions: {record_id!r}")
        self.record_id = record_id


@dataclass(frozen=True)
class PrecisionReport:
    """Per-class precision over the five emotional labels.

    A class with zero predictions has precision None and is excluded from
    the macro mean, which is itself None when no class is defined.
    """

    per_class: dict[Emotion, Optional[float]]
    support: dict[Emotion, int]
    macro: Optional[float]

    def as_dict(self) -> dict:
        return {
            "per_class": {
                e.value: self.per_class[e] for e in EMOTIONAL_LABELS
            },
            "support": {e.value: self.support[e] for e in EMOTIONAL_LABELS},
            "macro": self.macro,
            "note": "precision only; annotators verify predicted labels, so recall is undefined",
        }


def _stratum_rng(seed: int, day: str, label: Emotion) -> random.Random:
    # String seeding keeps each stratum's draw independent of how other
    # strata interleave in the stream.
    return random.Random(f"{seed}|{day}|{label.value}")


def sample_for_annotation(
    predictions: Iterable[Prediction],
    per_class: int = 500,
    seed: int = 0,
) -> list[Prediction]:
    """Uniform sample without replacement per (day, emotional label) stratum.

    Single-pass reservoir sampling; each stratum yields
    min(per_class, stratum size) items. Deterministic given the seed and
    the stream order. Neutral predictions are skipped.
    """
    if per_class <= 0:
        raise ValueError("per_class must be positive")
    reservoirs: dict[tuple[str, Emotion], list[Prediction]] = {}
    counters: dict[tuple[str, Emotion], int] = {}
    rngs: dict[tuple[str, Emotion], random.Random] = {}
    for prediction in predictions:
        if prediction.label is Emotion.NEUTRAL:
            continue
        key = (prediction.day, prediction.label)
        reservoir = reservoirs.get(key)
        if reservoir is None:
            reservoir = reservoirs[key] = []
            counters[key] = 0
            rngs[key] = _stratum_rng(seed, prediction.day, prediction.label)
        seen = counters[key]
        if seen < per_class:
            reservoir.append(prediction)
        else:
            slot = rngs[key].randint(0, seen)
            if slot < per_class:
                reservoir[slot] = prediction
        counters[key] = seen + 1

    ordered_keys = sorted(
        reservoirs, key=lambda k: (k[0], EMOTIONAL_LABELS.index(k[1]))
    )
    out: list[Prediction] = []
    for key in ordered_keys:
        out.extend(reservoirs[key])
    return out


def precision_report(
    gold: Iterable[GoldRecord],
    predictions: Iterable[tuple[str, Emotion]],
) -> PrecisionReport:
    """Per-class and macro precision of predictions against gold labels.

    Only ids present in the gold list are scored. Every gold id must have
    a prediction, otherwise GoldIdNotPredicted is raised.
    """
    predicted: dict[str, Emotion] = {}
    for record_id, label in predictions:
        predicted[record_id] = label

    support = {e: 0 for e in EMOTIONAL_LABELS}
    correct = {e: 0 for e in EMOTIONAL_LABELS}
    for record in gold:
        label = predicted.get(record.id)
        if label is None:
            raise GoldIdNotPredicted(record.id)
        if label is Emotion.NEUTRAL:
            continue
        support[label] += 1
        if record.gold is label:
            correct[label] += 1

    per_class: dict[Emotion, Optional[float]] = {
        e: (correct[e] / support[e] if support[e] else None)
        for e in EMOTIONAL_LABELS
    }
    defined = [p for p in per_class.values() if p is not None]
    macro = sum(defined) / len(defined) if defined else None
    return PrecisionReport(per_class=per_class, support=support, macro=macro)


# -- JSONL loaders used by the CLI and tests ------------------------------


def read_gold(source: Union[str, Path, IO[str]]) -> list[GoldRecord]:
    """Gold JSONL: {"id": ..., "gold": ...} per line."""
    records = []
    for line_no, line in _lines(source):
        obj = _parse_object(line, line_no)
        records.append(
            GoldRecord(id=_req_str(obj, "id", line_no), gold=_label(obj, "gold", line_no))
        )
    return records


def read_predictions(source: Union[str, Path, IO[str]]) -> list[Prediction]:
    """Prediction JSONL: {"id": ..., "label": ..., "day": "YYYY-MM-DD"}."""
    records = []
    for line_no, line in _lines(source):
        obj = _parse_object(line, line_no)
        records.append(
            Prediction(
                id=_req_str(obj, "id", line_no),
                day=_req_str(obj, "day", line_no),
                label=_label(obj, "label", line_no),
            )
        )
    return records


def _lines(source):
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as handle:
            for line_no, line in enumerate(handle, start=1):
                if line.strip():
                    yield line_no, line
    else:
        for line_no, line in enumerate(source, start=1):
            if line.strip():
                yield line_no, line


def _parse_object(line: str, line_no: int) -> dict:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ValueError(f"line {line_no}: malformed json: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise ValueError(f"line {line_no}: not a JSON object")
    return obj


def _req_str(obj: dict, name: str, line_no: int) -> str:
    value = obj.get(name)
    if not isinstance(value, str) or not value:
        raise ValueError(f"line {line_no}: missing field {name}")
    return value


def _label(obj: dict, name: str, line_no: int) -> Emotion:
    try:
        return parse_emotion(_req_str(obj, name, line_no))
    except ValueError as exc:
        raise ValueError(f"line {line_no}: {exc}") from None
