"""Record replay and live ingestion: parse, de-duplicate, resolve, classify.

Input records are JSONL: one object per line with fields `id`, `text`,
`created_at` (integer epoch seconds UTC), `user_region` and optional
`geo_region`. Records replace a live crawl, so the pipeline keeps the
crawler's contracts: duplicates are dropped on tweet id, each tweet is
mapped to exactly one of the 36 regions, and replay can be throttled to a
target average rate.

Invalid records are counted and skipped, never fatal; a replay summary
always reconciles as read = duplicates + rejected + classified.
"""
from __future__ import annotations

import json
import struct
import threading
import time
import zlib
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Iterator, Optional, Protocol, Union

from .analyzer import AnalyzerResources, classify
from .model import ClassifiedTweet, Region, Tweet, parse_region


class RecordError(ValueError):
    """A single bad input line; replay counts these as rejected."""


class ReplaySourceError(OSError):
    """The record source failed mid-replay. Carries the partial summary."""

    def __init__(self, message: str, summary: "ReplaySummary"):
        super().__init__(message)
        self.summary = summary


def parse_record(line: str) -> Tweet:
    """Parse one JSONL record into a validated Tweet.

    Unknown extra fields are ignored. Raises RecordError on malformed
    JSON, missing or empty required fields, unknown region codes and bad
    timestamps.
    """
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise RecordError(f"malformed json: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise RecordError("record is not a JSON object")

    for name in ("id", "text", "created_at", "user_region"):
        if name not in obj:
            raise RecordError(f"missing field: {name}")
    tweet_id = obj["id"]
    if not isinstance(tweet_id, str) or not tweet_id:
        raise RecordError("missing field: id")
    text = obj["text"]
    if not isinstance(text, str):
        raise RecordError("field text must be a string")
    created_at = obj["created_at"]
    if isinstance(created_at, bool) or not isinstance(created_at, int) or created_at < 0:
        raise RecordError(f"bad timestamp: {created_at!r}")

    def region_field(name: str) -> Region:
        value = obj[name]
        if not isinstance(value, str):
            raise RecordError(f"field {name} must be a region code string")
        try:
            return parse_region(value)
        except ValueError:
            raise RecordError(f"unknown region in {name}: {value!r}") from None

    user_region = region_field("user_region")
    geo_region = region_field("geo_region") if obj.get("geo_region") is not None else None
    return Tweet(
        id=tweet_id,
        text=text,
        created_at=created_at,
        user_region=user_region,
        geo_region=geo_region,
    )


def assign_region(tweet: Tweet) -> Region:
    """The tweet's posting location when tagged, else where the user registered."""
    return tweet.geo_region if tweet.geo_region is not None else tweet.user_region


class DedupStore:
    """Bounded set of recently seen tweet ids.

    `check(id)` atomically records an unseen id and reports whether it was
    fresh. When the store is full the least-recently-inserted id is
    evicted, so ancient ids can reappear as fresh; capacity bounds memory
    the way a firehose dedup must.
    """

    def __init__(self, capacity: int = 10_000_000):
        if capacity <= 0:
            raise ValueError("capacity must be positive")
        self.capacity = capacity
        self._seen: dict[str, None] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._seen)

    def check(self, tweet_id: str) -> bool:
        """True (and the id is recorded) iff the id was not present."""
        with self._lock:
            if tweet_id in self._seen:
                return False
            self._seen[tweet_id] = None
            if len(self._seen) > self.capacity:
                del self._seen[next(iter(self._seen))]
            return True

    def snapshot_ids(self) -> bytes:
        """Serialize the seen ids, preserving insertion order."""
        with self._lock:
            ids = list(self._seen)
        blob = bytearray(b"EMOPULSE.DEDUP.1")
        blob += struct.pack("<II", self.capacity, len(ids))
        for tweet_id in ids:
            raw = tweet_id.encode("utf-8")
            blob += struct.pack("<H", len(raw))
            blob += raw
        blob += struct.pack("<I", zlib.crc32(bytes(blob)))
        return bytes(blob)

    @classmethod
    def restore_ids(cls, data: bytes) -> "DedupStore":
        magic = b"EMOPULSE.DEDUP.1"
        if len(data) < len(magic) + 12 or not data.startswith(magic):
            raise ValueError("corrupt dedup snapshot: bad header")
        body, (crc,) = data[:-4], struct.unpack("<I", data[-4:])
        if zlib.crc32(body) != crc:
            raise ValueError("corrupt dedup snapshot: checksum mismatch")
        offset = len(magic)
        capacity, count = struct.unpack_from("<II", body, offset)
        offset += 8
        store = cls(capacity=capacity)
        for _ in range(count):
            if offset + 2 > len(body):
                raise ValueError("corrupt dedup snapshot: truncated")
            (length,) = struct.unpack_from("<H", body, offset)
            offset += 2
            raw = body[offset : offset + length]
            if len(raw) != length:
                raise ValueError("corrupt dedup snapshot: truncated")
            offset += length
            try:
                store._seen[raw.decode("utf-8")] = None
            except UnicodeDecodeError:
                raise ValueError("corrupt dedup snapshot: bad id encoding") from None
        if offset != len(body):
            raise ValueError("corrupt dedup snapshot: trailing bytes")
        return store


class RecordSink(Protocol):
    def record(self, classified: ClassifiedTweet) -> None: ...


@dataclass(frozen=True)
class ReplayPlan:
    """A record source plus an optional tweets-per-second ceiling."""

    source: Union[str, Path, IO[str], Iterable[str]]
    rate: Optional[float] = None

    def __post_init__(self) -> None:
        if self.rate is not None and not self.rate > 0:
            raise ValueError("rate must be > 0 when set")


@dataclass
class ReplaySummary:
    read: int = 0
    duplicates: int = 0
    rejected: int = 0
    classified: int = 0

    def as_dict(self) -> dict[str, int]:
        return {
            "read": self.read,
            "duplicates": self.duplicates,
            "rejected": self.rejected,
            "classified": self.classified,
        }


def _iter_source(source) -> Iterator[str]:
    if isinstance(source, (str, Path)):
        # undecodable bytes become replacement chars, fail JSON parsing and
        # count as rejected records instead of killing the replay
        with open(source, "r", encoding="utf-8", errors="replace") as handle:
            yield from handle
    else:
        yield from source


def replay(
    plan: ReplayPlan,
    resources: AnalyzerResources,
    sink: RecordSink,
    dedup: Optional[DedupStore] = None,
    *,
    clock=time.monotonic,
    sleep=time.sleep,
) -> ReplaySummary:
    """Feed every fresh valid record through the analyzer into the sink.

    Whitespace-only lines are skipped; every other line counts as read and
    lands in exactly one of duplicates, rejected or classified. With a
    rate set, processing record n completes no earlier than n/rate seconds
    after the start, which keeps the average rate at or under the ceiling.
    """
    dedup = dedup if dedup is not None else DedupStore()
    summary = ReplaySummary()
    start = clock()
    lines = _iter_source(plan.source)
    while True:
        try:
            line = next(lines)
        except StopIteration:
            break
        except OSError as exc:
            raise ReplaySourceError(f"record source failed: {exc}", summary) from exc
        if not line.strip():
            continue
        summary.read += 1
        if plan.rate is not None:
            deadline = start + summary.read / plan.rate
            delay = deadline - clock()
            if delay > 0:
                sleep(delay)
        try:
            tweet = parse_record(line)
        except RecordError:
            summary.rejected += 1
            continue
        if not dedup.check(tweet.id):
            summary.duplicates += 1
            continue
        label, vector = classify(tweet.text, resources)
        sink.record(
            ClassifiedTweet(
                tweet=tweet, label=label, vector=vector, region=assign_region(tweet)
            )
        )
        summary.classified += 1
    return summary
