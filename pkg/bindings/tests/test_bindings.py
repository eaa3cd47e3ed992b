import io
import json

import pytest

import tlmon_bindings as tb
from tlmon.cli import main as cli_main
from tlmon.errors import DecodeError, MonitorError, ParseError

DOW_SPEC = r"(H[0:5]{open} and not {suppr}) -> {warn}"
DOW_TRACE = [
    {"open": False, "suppr": False, "warn": False},
    {"open": True, "suppr": False, "warn": False},
    {"open": True, "suppr": False, "warn": False},
    {"open": True, "suppr": False, "warn": False},
    {"open": True, "suppr": False, "warn": False},
    {"open": True, "suppr": False, "warn": False},
    {"open": True, "suppr": False, "warn": True},
    {"open": True, "suppr": True, "warn": False},
    {"open": True, "suppr": True, "warn": False},
]


def cli_verdicts(argv, lines):
    stdin = io.StringIO("\n".join(lines) + "\n")
    stdout, stderr = io.StringIO(), io.StringIO()
    status = cli_main(argv, stdin=stdin, stdout=stdout, stderr=stderr)
    assert status in (0, 1), stderr.getvalue()
    return [json.loads(line) for line in stdout.getvalue().splitlines()]


class TestConstruction:
    def test_dow_walkthrough(self):
        monitor = tb.discrete_timed_monitor(DOW_SPEC, condense=False)
        for t, msg in enumerate(DOW_TRACE):
            result = monitor.update(msg)
            assert result == {"time": t, "value": True}
        assert monitor.now() == 8

    def test_invalid_spec_carries_position(self):
        with pytest.raises(ParseError) as excinfo:
            tb.discrete_timed_monitor("{p} since")
        assert excinfo.value.position is not None

    def test_dense_custom_timefield(self):
        monitor = tb.dense_timed_monitor("{p}", timefield="ts")
        assert monitor.update({"ts": 0, "p": True}) == []
        assert monitor.update({"ts": 3.5, "p": False}) == \
            [{"time": 0, "value": True}]
        assert monitor.now() == 3.5

    def test_custom_predicate(self):
        monitor = tb.discrete_timed_monitor(
            "${hot}", condense=False,
            predicates={"hot": lambda fields: fields.get("temp", 0) > 30})
        assert monitor.update({"temp": 40})["value"] is True
        assert monitor.update({"temp": 10})["value"] is False


class TestUpdate:
    def test_non_scalar_value_is_type_error(self):
        monitor = tb.discrete_timed_monitor("{p}")
        with pytest.raises(DecodeError):
            monitor.update({"p": object()})

    def test_failed_update_is_isolated(self):
        monitor = tb.discrete_timed_monitor("{p}", condense=False)
        monitor.update({"p": True})
        with pytest.raises(MonitorError):
            monitor.update({"p": [1]})
        assert monitor.now() == 0

    def test_now_is_positional(self):
        monitor = tb.discrete_timed_monitor("{p}")
        for _ in range(3):
            monitor.update({"p": True})
        assert monitor.now() == 2

    def test_condense_suppression_returns_none(self):
        monitor = tb.discrete_timed_monitor("{p}")
        assert monitor.update({"p": True}) is not None
        assert monitor.update({"p": True}) is None


class TestDifferentialAgainstCli:
    """Binding verdicts must equal CLI verdicts after JSON normalization."""

    def test_dow_trace(self):
        lines = [json.dumps(msg) for msg in DOW_TRACE]
        want = cli_verdicts(["run", "-s", DOW_SPEC, "--no-condense"], lines)
        monitor = tb.discrete_timed_monitor(DOW_SPEC, condense=False)
        got = [json.loads(json.dumps(monitor.update(msg))) for msg in DOW_TRACE]
        assert got == want

    def test_condensed_robust(self):
        trace = [{"x": v} for v in (0.5, 0.5, -2.0, 3.5, 3.5)]
        lines = [json.dumps(msg) for msg in trace]
        want = cli_verdicts(
            ["run", "-s", "once[0:1] {x > 0}", "--semantics", "robust"], lines)
        monitor = tb.discrete_timed_monitor(
            "once[0:1] {x > 0}", semantics="robust")
        got = [monitor.update(msg) for msg in trace]
        got = [json.loads(json.dumps(v)) for v in got if v is not None]
        assert got == want

    def test_dense_segments(self):
        trace = [{"time": 0, "p1": False}, {"time": 4, "p1": True},
                 {"time": 9, "p1": False}]
        lines = [json.dumps(msg) for msg in trace]
        want = cli_verdicts(["run", "-s", "once {p1}", "--dense"], lines)
        monitor = tb.dense_timed_monitor("once {p1}")
        got = []
        for msg in trace:
            got.extend(monitor.update(msg))
        assert [json.loads(json.dumps(v)) for v in got] == want
