"""HTTP surface for the triage loop.

One service instance owns one corpus. Ingesting an alarm computes its
prediction and evidence diff immediately; both are cached with the corpus
version and recomputed only if the corpus has advanced when re-requested.
"""

from __future__ import annotations

import datetime
import threading
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .corpus import Corpus
from .diffview import DiffView, diff_to_json, render_diff
from .errors import (
    DuplicateAlarmError,
    EmptyLogError,
    UnknownLabelError,
    UnknownRecordError,
)
from .predict import Prediction, Predictor, PredictorConfig, Route
from .preprocess import EMPTY_DICTIONARY, RawTestLog, SegmentationDictionary


class AlarmIn(BaseModel):
    alarm_id: str
    script_id: str = ""
    function_point: str = ""
    day: int = Field(0, ge=0)
    lines: list[str]


class CauseIn(BaseModel):
    cause: str


class _PendingEntry:
    def __init__(self, prediction, diff, version, submitted_at):
        self.prediction = prediction
        self.diff = diff
        self.version = version
        self.submitted_at = submitted_at


def create_app(
    corpus: Corpus,
    config: PredictorConfig = PredictorConfig(),
    dictionary: SegmentationDictionary = EMPTY_DICTIONARY,
) -> FastAPI:
    app = FastAPI(title="test-alarm triage service")
    predictor = Predictor(corpus, config, dictionary)
    cache: dict[str, _PendingEntry] = {}
    write_lock = threading.Lock()

    def _evaluate(alarm_id: str) -> _PendingEntry:
        """Prediction + diff for one record at the current corpus version."""
        record = corpus.get(alarm_id)
        entry = cache.get(alarm_id)
        if entry is not None and entry.version == corpus.version:
            return entry
        prediction = predictor.predict(record.raw)
        diff: DiffView = []
        if prediction.exemplar_id is not None:
            exemplar = corpus.get(prediction.exemplar_id)
            diff = render_diff(record.raw.lines, exemplar.raw.lines)
        submitted = entry.submitted_at if entry else _now()
        entry = _PendingEntry(prediction, diff, corpus.version, submitted)
        cache[alarm_id] = entry
        return entry

    def _now() -> str:
        return datetime.datetime.now(datetime.timezone.utc).isoformat()

    @app.exception_handler(UnknownRecordError)
    async def _unknown_record(request: Request, exc: UnknownRecordError):
        return JSONResponse(status_code=404, content={"error": "UnknownRecord", "detail": str(exc)})

    @app.exception_handler(DuplicateAlarmError)
    async def _duplicate(request: Request, exc: DuplicateAlarmError):
        return JSONResponse(status_code=409, content={"error": "DuplicateAlarm", "detail": str(exc)})

    @app.exception_handler(UnknownLabelError)
    async def _unknown_label(request: Request, exc: UnknownLabelError):
        return JSONResponse(status_code=422, content={"error": "UnknownLabel", "detail": str(exc)})

    @app.exception_handler(EmptyLogError)
    async def _empty_log(request: Request, exc: EmptyLogError):
        return JSONResponse(status_code=422, content={"error": "EmptyLog", "detail": str(exc)})

    @app.get("/causes")
    def get_causes():
        return {"causes": sorted(corpus.labels)}

    @app.get("/thresholds")
    def get_thresholds():
        return predictor.thresholds().to_json_dict()

    @app.get("/alarms")
    def list_alarms(status: Optional[str] = None):
        alarms = []
        snapshot = corpus.snapshot()
        for record in snapshot.records:
            if status == "pending" and record.verified:
                continue
            if status == "verified" and not record.verified:
                continue
            summary = {
                "alarm_id": record.alarm_id,
                "function_point": record.raw.function_point,
                "day": record.raw.day_index,
                "verified": record.verified,
                "cause": record.cause,
            }
            if not record.verified:
                entry = _evaluate(record.alarm_id)
                summary.update(
                    {
                        "predicted_cause": entry.prediction.cause,
                        "confidence": entry.prediction.confidence,
                        "route": entry.prediction.route.value,
                        "submitted_at": entry.submitted_at,
                    }
                )
            alarms.append(summary)
        return {"alarms": alarms, "version": snapshot.version}

    @app.get("/alarms/{alarm_id}")
    def get_alarm(alarm_id: str):
        record = corpus.get(alarm_id)
        entry = _evaluate(alarm_id)
        return {
            "alarm_id": alarm_id,
            "function_point": record.raw.function_point,
            "day": record.raw.day_index,
            "verified": record.verified,
            "cause": record.cause,
            "submitted_at": entry.submitted_at,
            "prediction": entry.prediction.to_json_dict(),
            "diff": diff_to_json(entry.diff),
            "version": corpus.version,
        }

    @app.post("/alarms", status_code=200)
    def post_alarm(alarm: AlarmIn):
        raw = RawTestLog(
            alarm_id=alarm.alarm_id,
            script_id=alarm.script_id,
            function_point=alarm.function_point,
            day_index=alarm.day,
            lines=tuple(alarm.lines),
        )
        with write_lock:
            corpus.ingest(raw)
        entry = _evaluate(raw.alarm_id)
        return {
            "alarm_id": raw.alarm_id,
            "prediction": entry.prediction.to_json_dict(),
            "diff": diff_to_json(entry.diff),
            "version": corpus.version,
        }

    @app.post("/alarms/{alarm_id}/cause")
    def post_cause(alarm_id: str, body: CauseIn):
        with write_lock:
            version = corpus.confirm(alarm_id, body.cause)
        cache.pop(alarm_id, None)
        return {"alarm_id": alarm_id, "cause": body.cause, "version": version}

    return app


def serve(
    corpus: Corpus,
    config: PredictorConfig,
    dictionary: SegmentationDictionary = EMPTY_DICTIONARY,
    host: str = "127.0.0.1",
    port: int = 8000,
):
    import uvicorn

    uvicorn.run(create_app(corpus, config, dictionary), host=host, port=port)
