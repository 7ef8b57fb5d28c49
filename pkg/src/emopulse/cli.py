"""Operator command line: classify, replay, serve, eval, sample.

Exit codes are stable for scripting: 0 success, 1 runtime or I/O failure,
2 configuration or validation failure. Flags win over the optional JSON
config file; the config file wins over built-in defaults.
"""
from __future__ import annotations

import argparse
import json
import socket
import struct
import sys
from pathlib import Path
from typing import Optional

from .aggregate import (
    DEFAULT_ALARM_THRESHOLD,
    DEFAULT_UTC_OFFSET_SECONDS,
    EmotionStore,
    SnapshotError,
    format_utc_offset,
    parse_utc_offset,
)
from .analyzer import (
    AnalyzerResources,
    RuleConfig,
    bundled_resource_path,
    classify,
)
from .evalkit import (
    GoldIdNotPredicted,
    precision_report,
    read_gold,
    read_predictions,
    sample_for_annotation,
)
from .ingest import DedupStore, ReplayPlan, ReplaySourceError, replay
from .lexicon import ResourceFormatError
from .model import EmotionVector

_STATE_MAGIC = b"EMOPULSE.STATE.1"

_DEFAULTS = {
    "lexicon": None,  # None selects the bundled demo resources
    "emoticons": None,
    "negators": None,
    "negation_window": 3,
    "alarm_threshold": DEFAULT_ALARM_THRESHOLD,
    "utc_offset": format_utc_offset(DEFAULT_UTC_OFFSET_SECONDS),
    "addr": "127.0.0.1:8080",
    "state": None,
    "rate": None,
}


class CliError(Exception):
    def __init__(self, message: str, code: int = 2):
        super().__init__(message)
        self.code = code


def _load_config_file(path: Optional[str]) -> dict:
    if path is None:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as handle:
            config = json.load(handle)
    except OSError as exc:
        raise CliError(f"cannot read config {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise CliError(f"config {path}: line {exc.lineno}: {exc.msg}") from None
    if not isinstance(config, dict):
        raise CliError(f"config {path}: expected a JSON object")
    unknown = set(config) - set(_DEFAULTS)
    if unknown:
        raise CliError(f"config {path}: unknown keys {sorted(unknown)}")
    return config


def _setting(args: argparse.Namespace, config: dict, key: str):
    value = getattr(args, key, None)
    if value is not None:
        return value
    if key in config:
        return config[key]
    return _DEFAULTS[key]


def _build_resources(args: argparse.Namespace, config: dict) -> AnalyzerResources:
    lexicon = _setting(args, config, "lexicon") or bundled_resource_path("lexicon.tsv")
    emoticons = _setting(args, config, "emoticons") or bundled_resource_path("emoticons.tsv")
    negators = _setting(args, config, "negators") or bundled_resource_path("negators.txt")
    window = int(_setting(args, config, "negation_window"))
    try:
        rules = RuleConfig(negation_window=window)
    except ValueError as exc:
        raise CliError(str(exc)) from None

    def load(path, loader):
        if not Path(path).exists():
            raise CliError(f"resource file not found: {path}")
        try:
            return loader(path)
        except ResourceFormatError as exc:
            # exc already names the line; prefix the offending file
            raise CliError(f"{path}: {exc}") from None
        except UnicodeDecodeError as exc:
            raise CliError(f"{path}: not valid UTF-8 ({exc.reason})") from None
        except OSError as exc:
            raise CliError(f"cannot read {path}: {exc}") from None

    from .lexicon import load_emoticons, load_lexicon, load_negators

    return AnalyzerResources.from_entries(
        load(lexicon, load_lexicon),
        load(emoticons, load_emoticons),
        load(negators, load_negators),
        rules,
    )


def _build_store(args: argparse.Namespace, config: dict) -> EmotionStore:
    try:
        offset = parse_utc_offset(str(_setting(args, config, "utc_offset")))
    except ValueError as exc:
        raise CliError(str(exc)) from None
    threshold = float(_setting(args, config, "alarm_threshold"))
    return EmotionStore(utc_offset_seconds=offset, alarm_threshold=threshold)


# -- composite state file (aggregate snapshot + dedup ids) -----------------


def save_state(path: str, store: EmotionStore, dedup: DedupStore) -> None:
    agg = store.snapshot()
    ids = dedup.snapshot_ids()
    blob = _STATE_MAGIC + struct.pack("<Q", len(agg)) + agg
    blob += struct.pack("<Q", len(ids)) + ids
    tmp = Path(str(path) + ".tmp")
    tmp.write_bytes(blob)
    tmp.replace(path)


def load_state(
    path: str, utc_offset_seconds: int, alarm_threshold: float
) -> tuple[EmotionStore, DedupStore]:
    data = Path(path).read_bytes()
    if not data.startswith(_STATE_MAGIC):
        raise SnapshotError("corrupt state file: bad header")
    offset = len(_STATE_MAGIC)
    try:
        (agg_len,) = struct.unpack_from("<Q", data, offset)
        offset += 8
        agg = data[offset : offset + agg_len]
        offset += agg_len
        (ids_len,) = struct.unpack_from("<Q", data, offset)
        offset += 8
        ids = data[offset : offset + ids_len]
    except struct.error:
        raise SnapshotError("corrupt state file: truncated") from None
    if len(agg) != agg_len or len(ids) != ids_len or offset + ids_len != len(data):
        raise SnapshotError("corrupt state file: truncated")
    store = EmotionStore.restore(
        agg, utc_offset_seconds=utc_offset_seconds, alarm_threshold=alarm_threshold
    )
    try:
        dedup = DedupStore.restore_ids(ids)
    except ValueError as exc:
        raise SnapshotError(str(exc)) from None
    return store, dedup


def _restore_or_fresh(
    state_path: Optional[str], store: EmotionStore
) -> tuple[EmotionStore, DedupStore]:
    if state_path and Path(state_path).exists():
        return load_state(
            state_path, store.utc_offset_seconds, store.alarm_threshold
        )
    return store, DedupStore()


# -- subcommands -----------------------------------------------------------


def _format_vector(vector: EmotionVector) -> str:
    return ":".join(f"{w:g}" for w in vector.as_tuple())


def cmd_classify(args: argparse.Namespace, config: dict) -> int:
    resources = _build_resources(args, config)
    texts = args.text if args.text else (line.rstrip("\n") for line in sys.stdin)
    for text in texts:
        label, vector = classify(text, resources)
        print(f"{label.value}\t{_format_vector(vector)}")
    return 0


def cmd_replay(args: argparse.Namespace, config: dict) -> int:
    resources = _build_resources(args, config)
    state_path = _setting(args, config, "state")
    store, dedup = _restore_or_fresh(state_path, _build_store(args, config))
    rate = _setting(args, config, "rate")
    plan = ReplayPlan(source=args.input, rate=float(rate) if rate is not None else None)
    try:
        summary = replay(plan, resources, store, dedup)
    except ReplaySourceError as exc:
        print(json.dumps(exc.summary.as_dict()))
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(json.dumps(summary.as_dict()))
    if state_path:
        save_state(state_path, store, dedup)
    return 0


def cmd_serve(args: argparse.Namespace, config: dict) -> int:
    import uvicorn

    from .api import create_app

    resources = _build_resources(args, config)
    state_path = _setting(args, config, "state")
    store, dedup = _restore_or_fresh(state_path, _build_store(args, config))

    addr = str(_setting(args, config, "addr"))
    host, _, port_text = addr.rpartition(":")
    if not host or not port_text.isdigit():
        raise CliError(f"bad --addr {addr!r}, expected HOST:PORT")
    port = int(port_text)

    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((host, port))
    except OSError as exc:
        print(f"error: cannot bind {addr}: {exc}", file=sys.stderr)
        return 1
    finally:
        probe.close()

    lifespan = None
    if state_path:
        from contextlib import asynccontextmanager

        @asynccontextmanager
        async def lifespan(app):
            yield
            save_state(state_path, store, dedup)

    app = create_app(store, resources, dedup, lifespan=lifespan)
    uvicorn.run(app, host=host, port=port, log_level="warning")
    return 0


def cmd_eval(args: argparse.Namespace, config: dict) -> int:
    try:
        gold = read_gold(args.gold)
        predictions = read_predictions(args.pred)
    except OSError as exc:
        raise CliError(str(exc), code=1) from None
    except ValueError as exc:
        raise CliError(f"{exc}") from None
    try:
        report = precision_report(gold, [(p.id, p.label) for p in predictions])
    except GoldIdNotPredicted as exc:
        raise CliError(str(exc)) from None
    print(json.dumps(report.as_dict(), indent=2))
    return 0


def cmd_sample(args: argparse.Namespace, config: dict) -> int:
    try:
        predictions = read_predictions(args.pred)
    except OSError as exc:
        raise CliError(str(exc), code=1) from None
    except ValueError as exc:
        raise CliError(f"{exc}") from None
    sample = sample_for_annotation(
        predictions, per_class=args.per_class, seed=args.seed
    )
    for item in sample:
        print(json.dumps({"id": item.id, "day": item.day, "label": item.label.value}))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="emopulse",
        description="Emotion analytics over microblog streams: classify, aggregate, serve.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file; flags win over it")
    common.add_argument("--lexicon", help="emotion lexicon TSV (default: bundled demo)")
    common.add_argument("--emoticons", help="emoticon TSV (default: bundled demo)")
    common.add_argument("--negators", help="negator list (default: bundled demo)")
    common.add_argument("--negation-window", type=int, dest="negation_window")

    storeish = argparse.ArgumentParser(add_help=False)
    storeish.add_argument("--alarm-threshold", type=float, dest="alarm_threshold")
    storeish.add_argument("--utc-offset", dest="utc_offset", help="display offset, e.g. +08:00")
    storeish.add_argument("--state", help="state snapshot path")

    p = sub.add_parser("classify", parents=[common], help="label texts from args or stdin")
    p.add_argument("text", nargs="*", help="texts to classify; stdin lines when omitted")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("replay", parents=[common, storeish], help="replay a JSONL corpus")
    p.add_argument("--input", required=True, help="tweet JSONL file")
    p.add_argument("--rate", type=float, help="max tweets per second")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("serve", parents=[common, storeish], help="run the HTTP API")
    p.add_argument("--addr", help="listen address HOST:PORT (default 127.0.0.1:8080)")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("eval", help="precision report from gold and prediction JSONL")
    p.add_argument("--gold", required=True)
    p.add_argument("--pred", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sample", help="cut per-day per-emotion annotation samples")
    p.add_argument("--pred", required=True)
    p.add_argument("--per-class", type=int, default=500, dest="per_class")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_sample)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config_file(getattr(args, "config", None))
        return args.func(args, config)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except SnapshotError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        return 1


if __name__ == "__main__":
    sys.exit(main())
