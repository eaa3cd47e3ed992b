"""User-facing monitor facade: build, update, query time."""

from fractions import Fraction

from .compiler import compile_network
from .dense import DenseBoolEngine, DenseRobustEngine, condense
from .discrete import DiscreteEngine
from .errors import DecodeError, MonitorError, MonotonicityError
from .fo import FirstOrderEngine
from .messages import Message, PersistentState, apply_delta, message_from_mapping
from .options import MonitorOptions
from .parser import parse, validate


def make_monitor(spec, options=None, predicates=None, cse=True):
    """Parse, validate and compile a specification into a fresh Monitor."""
    options = options or MonitorOptions()
    expr = validate(parse(spec), options)
    network = compile_network(expr, options, predicates, cse=cse)
    return Monitor(network, options)


class Monitor:
    def __init__(self, network, options):
        self.network = network
        self.options = options
        self.persisted = PersistentState()
        self._count = 0
        self._frontier = 0          # dense: internal time units
        self._last_emitted = _SENTINEL
        if options.time_model == "dense":
            if options.semantics == "robust":
                self.engine = DenseRobustEngine(network)
            else:
                self.engine = DenseBoolEngine(network)
        elif network.first_order:
            self.engine = FirstOrderEngine(network)
        else:
            self.engine = DiscreteEngine(network)

    def now(self):
        if self.options.time_model == "dense":
            return self._from_internal(self._frontier)
        return self._count - 1

    def update(self, msg):
        """Feed one message; returns the verdict (or None when condensed away).

        Discrete verdicts are {"time", "value"} dicts; dense verdicts are
        lists of such dicts, one per finalized segment.  A failed update
        leaves the monitor exactly as it was.
        """
        if not isinstance(msg, Message):
            msg = message_from_mapping(msg, self.options)
        if self.options.time_model == "dense":
            return self._update_dense(msg)
        return self._update_discrete(msg)

    def _update_discrete(self, msg):
        new_state = apply_delta(self.persisted, msg)
        value = self.engine.step(new_state.current)
        self.persisted = new_state
        t = self._count
        self._count += 1
        if self.options.condense and value == self._last_emitted:
            return None
        self._last_emitted = value
        return {"time": t, "value": value}

    def _update_dense(self, msg):
        timestamp = self._to_internal(msg.timestamp)
        if self._count and timestamp <= self._frontier:
            raise MonotonicityError(
                f"timestamp {msg.timestamp} not after {self._from_internal(self._frontier)}")
        if not self._count and timestamp < 0:
            raise DecodeError("negative timestamp")
        new_state = apply_delta(self.persisted, msg)
        if timestamp == self._frontier:   # first message at time 0
            segments = []
        else:
            segments = self.engine.update(
                self.persisted.current, self._frontier, timestamp)
        self.persisted = new_state
        self._frontier = timestamp
        self._count += 1
        return self._emit(segments)

    def finish(self, end_time):
        """Finalize the span from the last timestamp to end_time (dense)."""
        if self.options.time_model != "dense":
            raise MonitorUsageError("finish() applies to dense monitors only")
        end = self._to_internal(end_time)
        if end <= self._frontier:
            raise MonotonicityError(
                f"end time {end_time} not after {self._from_internal(self._frontier)}")
        segments = self.engine.update(self.persisted.current, self._frontier, end)
        self._frontier = end
        return self._emit(segments)

    def _emit(self, segments):
        if self.options.condense:
            segments = condense(segments)
        return [{"time": self._from_internal(s), "value": v}
                for s, _e, v in segments]

    def _to_internal(self, timestamp):
        scaled = Fraction(timestamp).limit_denominator(10 ** 9) * self.options.time_scale
        return round(scaled)

    def _from_internal(self, units):
        value = Fraction(units, self.options.time_scale)
        if value.denominator == 1:
            return int(value)
        return float(value)


class MonitorUsageError(MonitorError):
    pass


class _Sentinel:
    def __eq__(self, other):
        return False


_SENTINEL = _Sentinel()
