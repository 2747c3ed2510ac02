"""JSON-ready encoding of the record types, and the inverse.

Field names are the dataclass field names.  Exact powers and multipliers are
written as decimal strings so consumers with fixed-width integers do not
overflow; every other integer stays a JSON number.
"""

from __future__ import annotations

import collections.abc
import dataclasses
import enum
import json
import types
import typing
from collections.abc import Mapping
from fractions import Fraction
from functools import cache
from typing import Any

BIGINT_FIELDS = {"multiplier"}


def to_data(obj: Any, name: str | None = None) -> Any:
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_data(getattr(obj, f.name), f.name) for f in dataclasses.fields(obj)}
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj) if name in BIGINT_FIELDS else obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, Mapping):
        return {str(k): to_data(v) for k, v in obj.items()}
    if isinstance(obj, (frozenset, set)):
        return [to_data(v) for v in sorted(obj)]
    if isinstance(obj, (list, tuple)):
        return [to_data(v) for v in obj]
    raise TypeError(f"cannot encode {type(obj).__name__}")


@cache
def _hints(cls: type) -> dict[str, Any]:
    return typing.get_type_hints(cls)


def from_data(tp: Any, data: Any) -> Any:
    """Rebuild a value of type ``tp`` from :func:`to_data` output."""
    origin = typing.get_origin(tp)
    args = typing.get_args(tp)
    if origin in (typing.Union, types.UnionType):
        if data is None and type(None) in args:
            return None
        inner = [a for a in args if a is not type(None)]
        return from_data(inner[0], data)
    if dataclasses.is_dataclass(tp):
        hints = _hints(tp)
        return tp(**{f.name: from_data(hints[f.name], data[f.name]) for f in dataclasses.fields(tp) if f.name in data})
    if isinstance(tp, type) and issubclass(tp, enum.Enum):
        return tp(data)
    if tp is bool:
        return bool(data)
    if tp is int:
        return int(data)
    if tp is Fraction:
        return Fraction(data)
    if tp is Any:
        return data
    if origin is tuple:
        if len(args) == 2 and args[1] is Ellipsis:
            return tuple(from_data(args[0], v) for v in data)
        return tuple(from_data(a, v) for a, v in zip(args, data))
    if origin in (frozenset, set):
        return origin(from_data(args[0], v) for v in data)
    if origin is list:
        return [from_data(args[0], v) for v in data]
    if origin in (dict, collections.abc.Mapping):
        kt, vt = args
        return {from_data(kt, k): from_data(vt, v) for k, v in data.items()}
    return data


def dumps(obj: Any) -> str:
    return json.dumps(to_data(obj), separators=(",", ":"), sort_keys=False)


def loads(tp: type, text: str) -> Any:
    return from_data(tp, json.loads(text))
