"""Message decoding and persistent (delta-decoded) stream state."""

import json
import math
from dataclasses import dataclass, field
from typing import Dict, Optional, Union

from .errors import DecodeError, MonotonicityError

ScalarValue = Union[bool, int, float, str, None]


@dataclass(frozen=True)
class Message:
    """One decoded stream message.

    timestamp is present exactly in dense mode, where it has been split
    off the field map.
    """

    fields: Dict[str, ScalarValue]
    timestamp: Optional[Union[int, float]] = None


@dataclass
class PersistentState:
    """Last known value of every field seen so far.

    Omitted keys persist; a key explicitly set to null is removed.
    """

    current: Dict[str, ScalarValue] = field(default_factory=dict)
    last_time: Optional[Union[int, float]] = None

    def copy(self):
        return PersistentState(dict(self.current), self.last_time)


def check_scalar(key, value):
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, (int, float)):
        if isinstance(value, float) and not math.isfinite(value):
            raise DecodeError(f"non-finite number for field {key!r}")
        return value
    raise DecodeError(f"non-scalar value for field {key!r}")


def message_from_mapping(obj, config):
    """Build a Message from an already-parsed flat mapping."""
    if not isinstance(obj, dict):
        raise DecodeError("message must be a JSON object")
    fields = {}
    timestamp = None
    for key, value in obj.items():
        if not isinstance(key, str):
            raise DecodeError("message keys must be strings")
        if config.time_model == "dense" and key == config.time_field:
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise DecodeError(f"timestamp field {key!r} must be a number")
            if not math.isfinite(value) or value < 0:
                raise DecodeError("timestamp must be finite and non-negative")
            timestamp = value
            continue
        fields[key] = check_scalar(key, value)
    if config.time_model == "dense" and timestamp is None:
        raise DecodeError(f"missing timestamp field {config.time_field!r}")
    return Message(fields, timestamp)


def decode_message(line, config):
    """Decode one NDJSON line into a Message."""
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise DecodeError(f"malformed JSON: {exc.msg}") from None
    return message_from_mapping(obj, config)


def apply_delta(state, msg):
    """Return a new PersistentState with msg's delta applied.

    Raises MonotonicityError when a dense timestamp fails to strictly
    increase.
    """
    if msg.timestamp is not None:
        if state.last_time is not None and msg.timestamp <= state.last_time:
            raise MonotonicityError(
                f"timestamp {msg.timestamp} not after {state.last_time}")
    new = state.copy()
    for key, value in msg.fields.items():
        if value is None:
            new.current.pop(key, None)
        else:
            new.current[key] = value
    if msg.timestamp is not None:
        new.last_time = msg.timestamp
    else:
        new.last_time = 0 if state.last_time is None else state.last_time + 1
    return new


def extract_timestamp(msg, index):
    """Timestamp of a message: its ordinal in discrete mode."""
    if msg.timestamp is not None:
        return msg.timestamp
    return index


def iter_ndjson(lines):
    """Yield (line_number, stripped_line) for non-blank NDJSON lines."""
    for number, line in enumerate(lines, start=1):
        stripped = line.strip()
        if stripped:
            yield number, stripped
