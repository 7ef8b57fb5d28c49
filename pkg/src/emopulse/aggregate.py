"""Hourly per-region emotion counts and the statistics derived from them.

Classified tweets are accumulated into (region, hour) buckets, where the
hour is computed in a configurable fixed UTC offset (default +08:00) so
that "8 o'clock" means local wall-clock time. Everything a consumer sees
derives from those buckets:

  * daily happiness score: 100 * happy / (the five emotional counts) over
    a region-day, undefined when the day has no emotional tweets;
  * alarm: a defined score strictly below the threshold (default 35);
  * national average: unweighted mean of defined scores over the 34
    province-level regions (abroad/other are reported but never averaged);
  * global rank: provinces with defined scores, best first;
  * hourly ratios: per-hour distribution over the five emotional labels;
  * corpus stats: per-region share of traffic plus overall label mix.

Neutral tweets participate in totals and stats but never in scores,
ranks or ratios.
"""
from __future__ import annotations

import re
import struct
import threading
import zlib
from dataclasses import dataclass
from datetime import date as Date
from typing import NamedTuple, Optional

from .model import (
    EMOTIONAL_LABELS,
    PROVINCES,
    ClassifiedTweet,
    Emotion,
    Region,
    parse_region,
)

DEFAULT_UTC_OFFSET_SECONDS = 8 * 3600
DEFAULT_ALARM_THRESHOLD = 35.0

_EPOCH = Date(1970, 1, 1)
_ALL_LABELS = EMOTIONAL_LABELS + (Emotion.NEUTRAL,)
_LABEL_SLOT = {label: i for i, label in enumerate(_ALL_LABELS)}
_NEUTRAL_SLOT = _LABEL_SLOT[Emotion.NEUTRAL]

_SNAPSHOT_MAGIC = b"EMOPULSE.SNAP.1\n"
_OFFSET_RE = re.compile(r"^([+-])(\d{2}):(\d{2})$")


class SnapshotError(ValueError):
    """A snapshot that cannot be restored (truncated, corrupted, foreign)."""


def parse_utc_offset(text: str) -> int:
    """Parse a `+HH:MM` / `-HH:MM` display offset into seconds."""
    match = _OFFSET_RE.match(text)
    if not match:
        raise ValueError(f"bad UTC offset {text!r}, expected +HH:MM")
    sign, hours, minutes = match.groups()
    seconds = int(hours) * 3600 + int(minutes) * 60
    if seconds > 14 * 3600 or int(minutes) >= 60:
        raise ValueError(f"UTC offset {text!r} out of range")
    return -seconds if sign == "-" else seconds


def format_utc_offset(seconds: int) -> str:
    sign = "-" if seconds < 0 else "+"
    seconds = abs(seconds)
    return f"{sign}{seconds // 3600:02d}:{seconds % 3600 // 60:02d}"


class BucketCounts(NamedTuple):
    happy: int = 0
    sad: int = 0
    angry: int = 0
    surprise: int = 0
    fear: int = 0
    neutral: int = 0

    @property
    def total(self) -> int:
        return sum(self)

    @property
    def emotional(self) -> int:
        return self.total - self.neutral


@dataclass(frozen=True)
class DailyScore:
    region: Region
    date: Date
    score: Optional[float]  # None when the day has no emotional tweets
    alarm: bool


@dataclass(frozen=True)
class RankEntry:
    region: Region
    score: float
    delta: float  # score minus the national average


@dataclass(frozen=True)
class CorpusStats:
    total: int
    region_share: dict[Region, float]
    label_distribution: dict[Emotion, float]


def _day_index(day: Date) -> int:
    return (day - _EPOCH).days


class EmotionStore:
    """Thread-safe (region, hour) bucket accumulator and query engine.

    record() may be called concurrently with queries; one lock serializes
    bucket updates, so readers always observe whole increments.
    """

    def __init__(
        self,
        utc_offset_seconds: int = DEFAULT_UTC_OFFSET_SECONDS,
        alarm_threshold: float = DEFAULT_ALARM_THRESHOLD,
    ):
        self.utc_offset_seconds = utc_offset_seconds
        self.alarm_threshold = alarm_threshold
        self._buckets: dict[tuple[Region, int], list[int]] = {}
        self._lock = threading.Lock()

    # -- accumulation ---------------------------------------------------

    def hour_index(self, created_at: int) -> int:
        """Hours since epoch of a UTC timestamp, in the display offset."""
        local = created_at + self.utc_offset_seconds
        if local < 0:
            raise ValueError(f"timestamp {created_at} precedes the epoch locally")
        return local // 3600

    def record(self, classified: ClassifiedTweet) -> None:
        """Add one classified tweet to its (region, hour) bucket."""
        key = (classified.region, self.hour_index(classified.tweet.created_at))
        slot = _LABEL_SLOT[classified.label]
        with self._lock:
            counts = self._buckets.get(key)
            if counts is None:
                counts = self._buckets[key] = [0] * 6
            counts[slot] += 1

    def bucket(self, region: Region, hour: int) -> BucketCounts:
        with self._lock:
            counts = self._buckets.get((region, hour))
            return BucketCounts(*counts) if counts else BucketCounts()

    def __len__(self) -> int:
        with self._lock:
            return len(self._buckets)

    # -- day-level queries ----------------------------------------------

    def _day_totals(self, region: Region, day: Date) -> list[int]:
        base = _day_index(day) * 24
        totals = [0] * 6
        with self._lock:
            for hour in range(base, base + 24):
                counts = self._buckets.get((region, hour))
                if counts:
                    for i, c in enumerate(counts):
                        totals[i] += c
        return totals

    def daily_score(self, region: Region, day: Date) -> DailyScore:
        """Happiness score of a region-day, with its alarm flag."""
        totals = self._day_totals(region, day)
        emotional = sum(totals[:5])
        if emotional == 0:
            return DailyScore(region, day, None, False)
        score = 100.0 * totals[0] / emotional
        return DailyScore(region, day, score, score < self.alarm_threshold)

    def national_average(self, day: Date) -> Optional[float]:
        """Unweighted mean of defined province scores; None if none defined."""
        scores = [
            s.score
            for s in (self.daily_score(p, day) for p in PROVINCES)
            if s.score is not None
        ]
        if not scores:
            return None
        return sum(scores) / len(scores)

    def global_rank(self, day: Date) -> list[RankEntry]:
        """Defined-score provinces, best score first, ties by region code."""
        scored = [
            (p, s.score)
            for p, s in ((p, self.daily_score(p, day)) for p in PROVINCES)
            if s.score is not None
        ]
        if not scored:
            return []
        average = sum(score for _, score in scored) / len(scored)
        scored.sort(key=lambda item: (-item[1], item[0].value))
        return [RankEntry(p, score, score - average) for p, score in scored]

    def hourly_ratios(
        self, region: Region, day: Date
    ) -> list[Optional[tuple[float, float, float, float, float]]]:
        """24 rows of five-emotion ratios; a row is None when the hour has
        no emotional tweets."""
        base = _day_index(day) * 24
        rows: list[Optional[tuple[float, float, float, float, float]]] = []
        with self._lock:
            for hour in range(base, base + 24):
                counts = self._buckets.get((region, hour))
                emotional = sum(counts[:5]) if counts else 0
                if emotional == 0:
                    rows.append(None)
                else:
                    rows.append(tuple(c / emotional for c in counts[:5]))
        return rows

    def corpus_stats(self, start: Date, end: Date) -> CorpusStats:
        """Traffic share per region and overall label mix, inclusive dates."""
        if start > end:
            raise ValueError(f"empty date range: {start} > {end}")
        first = _day_index(start) * 24
        last = (_day_index(end) + 1) * 24
        region_counts: dict[Region, int] = {}
        label_counts = [0] * 6
        with self._lock:
            for (region, hour), counts in self._buckets.items():
                if first <= hour < last:
                    bucket_total = sum(counts)
                    region_counts[region] = region_counts.get(region, 0) + bucket_total
                    for i, c in enumerate(counts):
                        label_counts[i] += c
        total = sum(label_counts)
        if total == 0:
            return CorpusStats(0, {}, {})
        return CorpusStats(
            total=total,
            region_share={r: c / total for r, c in sorted(region_counts.items())},
            label_distribution={
                label: label_counts[i] / total for i, label in enumerate(_ALL_LABELS)
            },
        )

    # -- persistence ------------------------------------------------------

    def snapshot(self) -> bytes:
        """Serialize every bucket; restore() reproduces the counts exactly.

        Length-prefixed binary with a trailing CRC32; bucket order is
        canonical, so equal stores snapshot to identical bytes.
        """
        with self._lock:
            items = sorted(
                self._buckets.items(), key=lambda kv: (kv[0][0].value, kv[0][1])
            )
            blob = bytearray(_SNAPSHOT_MAGIC)
            blob += struct.pack("<I", len(items))
            for (region, hour), counts in items:
                raw = region.value.encode("ascii")
                blob += struct.pack("<B", len(raw))
                blob += raw
                blob += struct.pack("<Q", hour)
                blob += struct.pack("<6Q", *counts)
        blob += struct.pack("<I", zlib.crc32(bytes(blob)))
        return bytes(blob)

    @classmethod
    def restore(
        cls,
        data: bytes,
        utc_offset_seconds: int = DEFAULT_UTC_OFFSET_SECONDS,
        alarm_threshold: float = DEFAULT_ALARM_THRESHOLD,
    ) -> "EmotionStore":
        """Rebuild a store from snapshot bytes. Raises SnapshotError."""
        if len(data) < len(_SNAPSHOT_MAGIC) + 8 or not data.startswith(_SNAPSHOT_MAGIC):
            raise SnapshotError("corrupt snapshot: bad header")
        body, (crc,) = data[:-4], struct.unpack("<I", data[-4:])
        if zlib.crc32(body) != crc:
            raise SnapshotError("corrupt snapshot: checksum mismatch")
        offset = len(_SNAPSHOT_MAGIC)
        (count,) = struct.unpack_from("<I", body, offset)
        offset += 4
        store = cls(utc_offset_seconds, alarm_threshold)
        try:
            for _ in range(count):
                (code_len,) = struct.unpack_from("<B", body, offset)
                offset += 1
                try:
                    code = body[offset : offset + code_len].decode("ascii")
                except UnicodeDecodeError:
                    raise SnapshotError("corrupt snapshot: bad region encoding") from None
                if len(code) != code_len:
                    raise SnapshotError("corrupt snapshot: truncated")
                offset += code_len
                (hour,) = struct.unpack_from("<Q", body, offset)
                offset += 8
                counts = list(struct.unpack_from("<6Q", body, offset))
                offset += 48
                try:
                    region = parse_region(code)
                except ValueError as exc:
                    raise SnapshotError(f"corrupt snapshot: {exc}") from None
                store._buckets[(region, hour)] = counts
        except struct.error:
            raise SnapshotError("corrupt snapshot: truncated") from None
        if offset != len(body):
            raise SnapshotError("corrupt snapshot: trailing bytes")
        return store
