"""Sliding min/max over a lagged index window, amortized O(1) per step."""

from collections import deque


class WindowAggregator:
    """Extremum of a value stream over the index window [t-b, t-a].

    Values are fed one per step; push(value) returns the extremum over
    the window clipped to [0, t], or None when the window is empty
    (t < a).  upper=None means unbounded below (window [0, t-a]).

    A monotonic wedge keeps the per-step cost amortized constant and
    independent of the bound magnitudes.
    """

    def __init__(self, lower, upper, use_max=True):
        if upper is not None and upper < lower:
            raise ValueError("window upper smaller than lower")
        self.lower = lower
        self.upper = upper
        self.use_max = use_max
        self._delay = deque()
        self._wedge = deque()  # (index, value), values strictly "improving"
        self._t = -1

    def push(self, value):
        self._t += 1
        t = self._t
        if self.lower == 0:
            delayed = value
        else:
            self._delay.append(value)
            delayed = self._delay.popleft() if len(self._delay) > self.lower else None
        if delayed is not None:
            index = t - self.lower
            wedge = self._wedge
            if self.use_max:
                while wedge and wedge[-1][1] <= delayed:
                    wedge.pop()
            else:
                while wedge and wedge[-1][1] >= delayed:
                    wedge.pop()
            wedge.append((index, delayed))
        if self.upper is not None:
            horizon = t - self.upper
            while self._wedge and self._wedge[0][0] < horizon:
                self._wedge.popleft()
        if not self._wedge:
            return None
        return self._wedge[0][1]
