"""Canonical sets of disjoint half-open intervals over integer time units.

The canonical form (sorted, disjoint, non-adjacent, each s < e) is
unique for a given point set, so structural equality is semantic
equality.  Endpoints may be math.inf on the right for unbounded
intervals.
"""

import math


class IntervalSet:
    __slots__ = ("intervals",)

    def __init__(self, intervals=(), _canonical=False):
        if _canonical:
            self.intervals = tuple(intervals)
        else:
            self.intervals = _normalize(intervals)

    def __eq__(self, other):
        return isinstance(other, IntervalSet) and self.intervals == other.intervals

    def __bool__(self):
        return bool(self.intervals)

    def __repr__(self):
        body = ", ".join(f"[{s}, {e})" for s, e in self.intervals)
        return "IntervalSet{" + body + "}"

    def __contains__(self, t):
        for s, e in self.intervals:
            if s <= t < e:
                return True
            if s > t:
                break
        return False

    def union(self, other):
        return IntervalSet(self.intervals + other.intervals)

    def intersect(self, other):
        out = []
        a, b = self.intervals, other.intervals
        i = j = 0
        while i < len(a) and j < len(b):
            s = max(a[i][0], b[j][0])
            e = min(a[i][1], b[j][1])
            if s < e:
                out.append((s, e))
            if a[i][1] <= b[j][1]:
                i += 1
            else:
                j += 1
        return IntervalSet(out, _canonical=True)

    def complement(self, horizon):
        """Complement within [horizon_start, horizon_end)."""
        h_start, h_end = horizon
        out = []
        cursor = h_start
        for s, e in self.intervals:
            if e <= h_start:
                continue
            if s >= h_end:
                break
            if cursor < min(s, h_end):
                out.append((cursor, min(s, h_end)))
            cursor = max(cursor, e)
        if cursor < h_end:
            out.append((cursor, h_end))
        return IntervalSet(out, _canonical=True)

    def shift_sum(self, lower, upper):
        """Minkowski-style shift: each [s, e) becomes [s+lower, e+upper).

        With upper=None the result extends to +inf.  This realizes the
        timed-once window: the result contains t iff some point of this
        set lies in [t-upper, t-lower].
        """
        if upper is None:
            if not self.intervals:
                return IntervalSet((), _canonical=True)
            start = self.intervals[0][0] + lower
            return IntervalSet([(start, math.inf)], _canonical=True)
        return IntervalSet((s + lower, e + upper) for s, e in self.intervals)

    def clip(self, start, end):
        return self.intersect(IntervalSet([(start, end)], _canonical=True))

    def measure_empty(self):
        return not self.intervals


def _normalize(intervals):
    pairs = sorted((s, e) for s, e in intervals if s < e)
    out = []
    for s, e in pairs:
        if out and s <= out[-1][1]:
            if e > out[-1][1]:
                out[-1] = (out[-1][0], e)
        else:
            out.append((s, e))
    return tuple(out)


def union(a, b):
    return a.union(b)


def intersect(a, b):
    return a.intersect(b)


def complement(a, horizon):
    return a.complement(horizon)


def shift_sum(a, bound):
    lower, upper = bound
    return a.shift_sum(lower, upper)
