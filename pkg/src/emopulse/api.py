"""HTTP service exposing the map, ranker, hourly and stats views.

All endpoints sit under /api/v1 and return JSON; numbers are never
recomputed here, every figure in a payload is the aggregate store's own
answer. Undefined values serialize as null, never 0. The ingest endpoint
accepts JSONL tweet records (application/x-ndjson) and runs the same
dedup/classify/record pipeline as file replay.

Map coloring ships server-side as `color_bucket`: 0 is the gray sentinel
(alarm raised, or no data), 1 through 5 are deepening blues assigned by
score quintile among the day's defined scores.
"""
from __future__ import annotations

import re
from bisect import bisect_left
from datetime import date as Date
from typing import Optional

from fastapi import FastAPI, Query, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .aggregate import EmotionStore
from .analyzer import AnalyzerResources
from .ingest import DedupStore, ReplayPlan, replay
from .model import Region

DEFAULT_MAX_INGEST_BYTES = 8 * 1024 * 1024

_DATE_RE = re.compile(r"^\d{4}-\d{2}-\d{2}$")


def _parse_date(value: Optional[str]) -> Optional[Date]:
    if value is None or not _DATE_RE.match(value):
        return None
    try:
        return Date.fromisoformat(value)
    except ValueError:
        return None


def _error(status: int, code: str, **extra) -> JSONResponse:
    return JSONResponse({"error": code, **extra}, status_code=status)


def color_buckets(
    scores: dict[Region, Optional[float]], alarms: dict[Region, bool]
) -> dict[Region, int]:
    """Bucket 0 for gray (alarm or undefined), else quintile 1..5.

    Higher scores land in higher buckets and equal scores share one, so
    the coloring is monotone in the score.
    """
    defined = sorted(s for s in scores.values() if s is not None)
    n = len(defined)
    buckets = {}
    for region, score in scores.items():
        if score is None or alarms[region]:
            buckets[region] = 0
        else:
            below = bisect_left(defined, score)
            buckets[region] = 1 + min(4, 5 * below // n)
    return buckets


def create_app(
    store: EmotionStore,
    resources: AnalyzerResources,
    dedup: Optional[DedupStore] = None,
    max_ingest_bytes: int = DEFAULT_MAX_INGEST_BYTES,
    lifespan=None,
) -> FastAPI:
    dedup = dedup if dedup is not None else DedupStore()
    app = FastAPI(title="emopulse", docs_url=None, redoc_url=None, lifespan=lifespan)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    app.state.store = store
    app.state.resources = resources
    app.state.dedup = dedup

    @app.get("/api/v1/summary")
    def summary(date: Optional[str] = Query(None)):
        day = _parse_date(date)
        if day is None:
            return _error(400, "bad-date")
        scores = {}
        alarms = {}
        for region in Region:
            daily = store.daily_score(region, day)
            scores[region] = daily.score
            alarms[region] = daily.alarm
        ranks = {
            entry.region: position
            for position, entry in enumerate(store.global_rank(day), start=1)
        }
        buckets = color_buckets(scores, alarms)
        return {
            "date": day.isoformat(),
            "national_average": store.national_average(day),
            "provinces": [
                {
                    "region": region.value,
                    "score": scores[region],
                    "alarm": alarms[region],
                    "rank": ranks.get(region),
                    "color_bucket": buckets[region],
                }
                for region in Region
            ],
        }

    @app.get("/api/v1/rank")
    def rank(date: Optional[str] = Query(None)):
        day = _parse_date(date)
        if day is None:
            return _error(400, "bad-date")
        return [
            {"region": e.region.value, "score": e.score, "delta": e.delta}
            for e in store.global_rank(day)
        ]

    @app.get("/api/v1/region/{code}/hourly")
    def hourly(code: str, date: Optional[str] = Query(None)):
        try:
            region = Region(code)
        except ValueError:
            return _error(404, "unknown-region", region=code)
        day = _parse_date(date)
        if day is None:
            return _error(400, "bad-date")
        rows = store.hourly_ratios(region, day)
        return {
            "region": region.value,
            "date": day.isoformat(),
            "hours": [
                {"hour": hour, "ratios": list(row) if row is not None else None}
                for hour, row in enumerate(rows)
            ],
        }

    @app.get("/api/v1/stats")
    def stats(
        from_date: Optional[str] = Query(None, alias="from"),
        to_date: Optional[str] = Query(None, alias="to"),
    ):
        start, end = _parse_date(from_date), _parse_date(to_date)
        if start is None or end is None or start > end:
            return _error(400, "bad-range")
        report = store.corpus_stats(start, end)
        return {
            "from": start.isoformat(),
            "to": end.isoformat(),
            "total": report.total,
            "region_share": {r.value: s for r, s in report.region_share.items()},
            "label_distribution": {
                e.value: s for e, s in report.label_distribution.items()
            },
        }

    @app.post("/api/v1/ingest")
    async def ingest(request: Request):
        body = await request.body()
        if len(body) > max_ingest_bytes:
            return _error(413, "too-large", limit=max_ingest_bytes)
        lines = body.decode("utf-8", errors="replace").splitlines()
        summary = replay(ReplayPlan(source=lines), resources, store, dedup)
        if summary.read > 0 and summary.rejected == summary.read:
            return JSONResponse(summary.as_dict(), status_code=400)
        return summary.as_dict()

    return app
