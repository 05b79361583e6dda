"""Loading the JSON file formats with located error messages."""

from __future__ import annotations

import json
from pathlib import Path

from .complex import ComplexError, DeltaComplex
from .curves import ConfigError, CurveConfig, CycleSequence
from .dual import StratificationData, StratificationError
from .loops import EdgeLoop, LoopError, StrataLabeling


class InputError(ValueError):
    pass


def read_json(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def _wrap(path, fn, data):
    try:
        return fn(data)
    except (ComplexError, ConfigError, StratificationError, LoopError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def load_complex(path) -> DeltaComplex:
    return _wrap(path, DeltaComplex.from_dict, read_json(path))


def load_config(path) -> CurveConfig:
    cfg = _wrap(path, CurveConfig.from_dict, read_json(path))
    problems = cfg.validate()
    if problems:
        raise InputError(f"{path}: {'; '.join(problems)}")
    return cfg


def load_labeling(path, g: DeltaComplex, cfg: CurveConfig) -> StrataLabeling:
    return _wrap(path, lambda d: StrataLabeling.from_dict(d, g, cfg), read_json(path))


def load_loop(path) -> EdgeLoop:
    return _wrap(path, EdgeLoop.from_dict, read_json(path))


def load_sequence(path) -> CycleSequence:
    data = read_json(path)
    if not isinstance(data, list):
        raise InputError(f"{path}: a sequence file holds a JSON list")
    return _wrap(path, CycleSequence.from_list, data)


def load_strata(path) -> StratificationData:
    return _wrap(path, StratificationData.from_dict, read_json(path))


def dump(obj, path=None) -> str:
    text = obj if isinstance(obj, str) else json.dumps(obj, indent=2) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text
