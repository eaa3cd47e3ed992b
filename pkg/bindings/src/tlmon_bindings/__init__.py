"""Thin high-level constructors over the tlmon monitoring engine.

The wrappers accept plain keyword options and native mappings, mirroring
the CLI verdict schema exactly:

    import tlmon_bindings as tb

    monitor = tb.discrete_timed_monitor(
        r"(H[0:5]{open} and not {suppr}) -> {warn}", condense=False)
    result = monitor.update({"open": True, "suppr": False, "warn": False})
    assert result["value"] is True
"""

from tlmon import MonitorOptions, make_monitor

__all__ = ["BoundMonitor", "dense_timed_monitor", "discrete_timed_monitor"]
__version__ = "0.1.0"


class BoundMonitor:
    """Single-owner wrapper around a core monitor.

    ``update`` takes a native mapping and returns a ``{"time", "value"}``
    mapping (discrete; ``None`` when condensing suppressed the verdict) or
    a list of such mappings, one per finalized segment (dense).
    """

    def __init__(self, monitor):
        self._monitor = monitor

    def update(self, message):
        return self._monitor.update(dict(message))

    def finish(self, end_time):
        return self._monitor.finish(end_time)

    def now(self):
        return self._monitor.now()


def discrete_timed_monitor(spec, condense=True, semantics="boolean",
                           bits=16, predicates=None):
    """Build a discrete-time monitor from a specification string."""
    options = MonitorOptions(time_model="discrete", semantics=semantics,
                             condense=condense, bits=bits)
    return BoundMonitor(make_monitor(spec, options, predicates))


def dense_timed_monitor(spec, condense=True, semantics="boolean",
                        timefield="time", time_scale=1000, predicates=None):
    """Build a dense-time monitor from a specification string."""
    options = MonitorOptions(time_model="dense", semantics=semantics,
                             condense=condense, time_field=timefield,
                             time_scale=time_scale)
    return BoundMonitor(make_monitor(spec, options, predicates))
