"""Configuration file loading for the CLI and service.

Two formats are accepted: key=value lines ('#' comments) or a JSON
object. Recognized keys mirror PredictorConfig plus dictionary_path and
corpus_path. The config path may come from the command line or the
LOGTRIAGE_CONFIG environment variable.
"""

from __future__ import annotations

import json
import os
from typing import Optional

from .predict import PredictorConfig

ENV_CONFIG_PATH = "LOGTRIAGE_CONFIG"

_INT_KEYS = {"k", "shingle_size", "window_days"}
_FLOAT_KEYS = {"t"}
_BOOL_KEYS = {"use_function_point"}
_STR_KEYS = {"dictionary_path", "corpus_path"}
_ALL_KEYS = _INT_KEYS | _FLOAT_KEYS | _BOOL_KEYS | _STR_KEYS


def _coerce(key: str, value):
    if key not in _ALL_KEYS:
        raise ValueError(f"unknown config key {key!r}")
    if value is None:
        return None
    if key in _INT_KEYS:
        return int(value)
    if key in _FLOAT_KEYS:
        return float(value)
    if key in _BOOL_KEYS:
        if isinstance(value, bool):
            return value
        text = str(value).strip().lower()
        if text in {"true", "yes", "1", "on"}:
            return True
        if text in {"false", "no", "0", "off"}:
            return False
        raise ValueError(f"config key {key!r} expects a boolean, got {value!r}")
    return str(value)


def parse_config_text(text: str) -> PredictorConfig:
    stripped = text.lstrip()
    values: dict = {}
    if stripped.startswith("{"):
        for key, value in json.loads(text).items():
            values[key] = _coerce(key, value)
    else:
        for raw_line in text.splitlines():
            line = raw_line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"malformed config line: {raw_line!r}")
            key, _, value = line.partition("=")
            values[key.strip()] = _coerce(key.strip(), value.strip())
    return PredictorConfig(**values)


def load_config(path: Optional[str] = None) -> PredictorConfig:
    """Load a config file; defaults apply when no path is given or set."""
    if path is None:
        path = os.environ.get(ENV_CONFIG_PATH)
    if path is None:
        return PredictorConfig()
    with open(path, encoding="utf-8") as fh:
        return parse_config_text(fh.read())
