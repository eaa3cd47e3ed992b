"""Online past-time temporal logic monitoring over NDJSON streams."""

from .ast import Expr, FieldConstraint, TimeBound, pretty
from .compiler import MonitorNetwork, compile_network, cse_dedupe
from .errors import (
    CompileError,
    DecodeError,
    DictionaryOverflow,
    EvaluationError,
    LexError,
    MonitorError,
    MonotonicityError,
    ParseError,
    UnsupportedFeature,
)
from .intervals import IntervalSet
from .lexer import tokenize
from .messages import (
    Message,
    PersistentState,
    apply_delta,
    decode_message,
    extract_timestamp,
)
from .monitor import Monitor, make_monitor
from .options import MonitorOptions
from .parser import parse, validate

__version__ = "0.1.0"

__all__ = [
    "CompileError",
    "DecodeError",
    "DictionaryOverflow",
    "EvaluationError",
    "Expr",
    "FieldConstraint",
    "IntervalSet",
    "LexError",
    "Message",
    "Monitor",
    "MonitorError",
    "MonitorNetwork",
    "MonitorOptions",
    "MonotonicityError",
    "ParseError",
    "PersistentState",
    "TimeBound",
    "UnsupportedFeature",
    "apply_delta",
    "compile_network",
    "cse_dedupe",
    "decode_message",
    "extract_timestamp",
    "make_monitor",
    "parse",
    "pretty",
    "tokenize",
    "validate",
]
