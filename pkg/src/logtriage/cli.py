"""Command-line interface.

Subcommands: ingest, predict, confirm, eval, serve, calibrate. Exit
status is 2 on usage errors, 1 on domain errors, 0 on success.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from .config import ENV_CONFIG_PATH, load_config
from .corpus import Corpus, DEFAULT_CAUSE_LABELS, raw_log_from_json_dict
from .errors import LogTriageError
from .evaluate import Variant, load_dataset_jsonl, run_incremental
from .predict import Predictor, PredictorConfig, calibrate_thresholds
from .preprocess import (
    EMPTY_DICTIONARY,
    RawTestLog,
    SegmentationDictionary,
)

DEFAULT_CORPUS_PATH = "corpus.jsonl"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logtriage",
        description="Test-alarm cause analysis over historical test logs.",
    )
    parser.add_argument(
        "--config",
        help=f"config file path (overrides ${ENV_CONFIG_PATH})",
        default=None,
    )
    parser.add_argument("--corpus", help="corpus JSON-lines path", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p_ingest = sub.add_parser("ingest", help="ingest JSON-lines records")
    p_ingest.add_argument("--input", required=True, help="records file (JSONL)")

    p_predict = sub.add_parser("predict", help="predict the cause of one log")
    p_predict.add_argument("--log", required=True, help="log text file")
    p_predict.add_argument("--fp", required=True, help="function point")
    p_predict.add_argument("--script", default="", help="test script id")
    p_predict.add_argument("--day", type=int, default=0, help="testing day index")
    p_predict.add_argument("--id", default="new-alarm", help="alarm id for the query")

    p_confirm = sub.add_parser("confirm", help="set the verified cause of a record")
    p_confirm.add_argument("--id", required=True)
    p_confirm.add_argument("--cause", required=True)

    p_eval = sub.add_parser("eval", help="incremental replay evaluation")
    p_eval.add_argument("--dataset", required=True, help="labeled JSONL dataset")
    p_eval.add_argument(
        "--variant",
        choices=[v.value for v in Variant],
        default=Variant.CAM.value,
    )
    p_eval.add_argument("--csv", default=None, help="write per-day accuracy CSV here")

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)

    sub.add_parser("calibrate", help="print the per-cause threshold table")
    return parser


def _load_environment(args) -> tuple[PredictorConfig, SegmentationDictionary, str]:
    config = load_config(args.config)
    dictionary = EMPTY_DICTIONARY
    if config.dictionary_path:
        dictionary = SegmentationDictionary.load(config.dictionary_path)
    corpus_path = args.corpus or config.corpus_path or DEFAULT_CORPUS_PATH
    return config, dictionary, corpus_path


def _open_corpus(path, dictionary) -> Corpus:
    if os.path.exists(path):
        return Corpus.load(path, dictionary=dictionary)
    return Corpus(path=path, dictionary=dictionary)


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except LogTriageError as exc:
        print(f"{type(exc).__name__.removesuffix('Error')}: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _dispatch(args) -> int:
    config, dictionary, corpus_path = _load_environment(args)

    if args.command == "ingest":
        corpus = _open_corpus(corpus_path, dictionary)
        count = 0
        with open(args.input, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                obj = json.loads(line)
                if obj.get("cause") is not None:
                    corpus.register_label(obj["cause"])
                corpus.ingest(raw_log_from_json_dict(obj), cause=obj.get("cause"))
                if obj.get("verified") and obj.get("cause"):
                    corpus.confirm(obj["alarm_id"], obj["cause"])
                count += 1
        print(json.dumps({"ingested": count, "version": corpus.version}))
        return 0

    if args.command == "predict":
        corpus = _open_corpus(corpus_path, dictionary)
        with open(args.log, encoding="utf-8") as fh:
            lines = tuple(fh.read().splitlines())
        raw = RawTestLog(
            alarm_id=args.id,
            script_id=args.script,
            function_point=args.fp,
            day_index=args.day,
            lines=lines,
        )
        predictor = Predictor(corpus, config, dictionary)
        print(json.dumps(predictor.predict(raw).to_json_dict(), sort_keys=True))
        return 0

    if args.command == "confirm":
        corpus = _open_corpus(corpus_path, dictionary)
        version = corpus.confirm(args.id, args.cause)
        print(json.dumps({"alarm_id": args.id, "cause": args.cause, "version": version}))
        return 0

    if args.command == "eval":
        dataset = load_dataset_jsonl(args.dataset)
        report = run_incremental(
            dataset, config, Variant(args.variant), dictionary
        )
        if args.csv:
            report.write_per_day_csv(args.csv)
        print(report.to_json())
        return 0

    if args.command == "calibrate":
        corpus = _open_corpus(corpus_path, dictionary)
        table = calibrate_thresholds(corpus.snapshot(config.shingle_size), config)
        print(json.dumps(table.to_json_dict(), sort_keys=True))
        return 0

    if args.command == "serve":
        from .server import serve

        corpus = _open_corpus(corpus_path, dictionary)
        serve(corpus, config, dictionary, host=args.host, port=args.port)
        return 0

    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
