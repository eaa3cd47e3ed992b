"""Dense-time evaluation engine producing piecewise-constant verdicts.

Field values are interpreted as constant on [previous timestamp, new
timestamp); each update finalizes the verdict on exactly that span.
Time is in integer internal units (scaled by the compiler); math.inf
marks unbounded interval ends.

Boolean nodes keep their full truth set as an IntervalSet; robust
nodes keep their full output as a list of (start, end, value)
segments.  Past-time operators only ever read history up to the
frontier, so finalized output never changes retroactively.
"""

import math

from .discrete import make_constraint_check, make_constraint_margin
from .errors import EvaluationError
from .intervals import IntervalSet

INF = math.inf


def condense(segments):
    """Merge adjacent segments with equal values."""
    out = []
    for s, e, v in segments:
        if out and out[-1][1] == s and out[-1][2] == v:
            out[-1] = (out[-1][0], e, v)
        else:
            out.append((s, e, v))
    return out


class DenseBoolEngine:
    def __init__(self, network):
        self.network = network
        self.frontier = 0
        nodes = network.nodes
        self.truth = [IntervalSet() for _ in nodes]
        self._evals = []
        self._aux = [None] * len(nodes)
        for i, node in enumerate(nodes):
            if node.kind == "atomic":
                checks = [make_constraint_check(c) for c in node.payload]
                self._evals.append(("leaf", i, checks, None))
            elif node.kind == "pred":
                pred = network.predicates[node.payload]
                self._evals.append(("leaf", i, [lambda f, p=pred: bool(p(f))], None))
            elif node.kind in ("not", "and", "or", "once", "hist", "since"):
                self._evals.append((node.kind, i, node.children, node.payload))
                if node.kind == "since":
                    self._aux[i] = [False]  # carry for the unbounded recurrence
            else:
                raise EvaluationError(f"operator {node.kind!r} unsupported in dense time")

    def _append_truth(self, i, pieces):
        current = self.truth[i]
        self.truth[i] = current.union(IntervalSet(pieces))

    def update(self, fields, start, end):
        """Evaluate all nodes on [start, end); returns output segments."""
        truth = self.truth
        # leaves first: the only phase that can raise, keeping a failed
        # update free of side effects
        staged = {i: all(check(fields) for check in children)
                  for kind, i, children, _p in self._evals if kind == "leaf"}
        for kind, i, children, payload in self._evals:
            if kind == "leaf":
                if staged[i]:
                    self._append_truth(i, [(start, end)])
            elif kind == "not":
                piece = truth[children[0]].clip(start, end).complement((start, end))
                truth[i] = truth[i].union(piece)
            elif kind == "and":
                piece = truth[children[0]].intersect(truth[children[1]]).clip(start, end)
                truth[i] = truth[i].union(piece)
            elif kind == "or":
                piece = truth[children[0]].union(truth[children[1]]).clip(start, end)
                truth[i] = truth[i].union(piece)
            elif kind == "once":
                truth[i] = truth[i].union(
                    self._once(truth[children[0]], payload, start, end))
            elif kind == "hist":
                truth[i] = truth[i].union(
                    self._hist(truth[children[0]], payload, start, end))
            else:
                truth[i] = truth[i].union(
                    self._since(children, payload, start, end, self._aux[i]))
        self.frontier = end
        out = truth[self.network.output].clip(start, end)
        return _truth_to_segments(out, start, end)

    def _once(self, child, bound, start, end):
        lower, upper = bound
        if lower == 0 and upper is None:
            if not child.intervals:
                return IntervalSet()
            first_true = child.intervals[0][0]
            return IntervalSet([(max(first_true, start), end)]) \
                if first_true < end else IntervalSet()
        return child.shift_sum(lower, upper).clip(start, end)

    def _hist(self, child, bound, start, end):
        lower, upper = bound
        if lower == 0 and upper is None:
            intervals = child.intervals
            if intervals and intervals[0][0] == 0:
                first_false = intervals[0][1]
            else:
                first_false = 0
            return IntervalSet([(start, min(first_false, end))]) \
                if first_false > start else IntervalSet()
        negated = child.complement((0, end))
        shifted = negated.shift_sum(lower, upper)
        return shifted.clip(start, end).complement((start, end))

    def _since(self, children, bound, start, end, aux):
        phi = self.truth[children[0]]
        psi = self.truth[children[1]]
        lower, upper = bound
        if lower == 0 and upper is None:
            return self._since_unbounded(phi, psi, start, end, aux)
        pieces = []
        # an anchor at grid point u requires phi from the next grid point
        # onward, so anchors one unit before a phi-interval [s, e) join it
        for s, e in phi.intervals:
            for u, v in psi.clip(s - 1, e - 1).intervals:
                top = e if upper is None else min(v + upper, e)
                if u + lower < top:
                    pieces.append((u + lower, top))
        if lower == 0:
            pieces.extend(psi.intervals)
        return IntervalSet(pieces).clip(start, end)

    def _since_unbounded(self, phi, psi, start, end, aux):
        # piecewise recurrence: out = psi or (phi and carry)
        cuts = {start, end}
        for source in (phi, psi):
            for s, e in source.intervals:
                if start < s < end:
                    cuts.add(s)
                if start < e < end:
                    cuts.add(e)
        points = sorted(cuts)
        carry = aux[0]
        pieces = []
        for x, y in zip(points, points[1:]):
            phi_v = x in phi
            psi_v = x in psi
            carry = psi_v or (phi_v and carry)
            if carry:
                pieces.append((x, y))
        aux[0] = carry
        return IntervalSet(pieces)


def _truth_to_segments(truth, start, end):
    segments = []
    cursor = start
    for s, e in truth.intervals:
        if cursor < s:
            segments.append((cursor, s, False))
        segments.append((s, e, True))
        cursor = e
    if cursor < end:
        segments.append((cursor, end, False))
    return segments


class DenseRobustEngine:
    def __init__(self, network):
        self.network = network
        self.frontier = 0
        nodes = network.nodes
        self.segments = [[] for _ in nodes]
        self._evals = []
        self._aux = [None] * len(nodes)
        for i, node in enumerate(nodes):
            if node.kind == "atomic":
                margins = [make_constraint_margin(c) for c in node.payload]
                self._evals.append(("leaf", i, margins, None))
            elif node.kind == "pred":
                pred = network.predicates[node.payload]
                self._evals.append(
                    ("leaf", i, [lambda f, p=pred: INF if p(f) else -INF], None))
            elif node.kind in ("not", "and", "or", "once", "hist", "since"):
                self._evals.append((node.kind, i, node.children, node.payload))
                if node.kind == "once":
                    self._aux[i] = [-INF]
                elif node.kind == "hist":
                    self._aux[i] = [INF]
                elif node.kind == "since":
                    self._aux[i] = [-INF]
            else:
                raise EvaluationError(f"operator {node.kind!r} unsupported in dense time")

    def update(self, fields, start, end):
        segs = self.segments
        staged = {i: min(margin(fields) for margin in children)
                  for kind, i, children, _p in self._evals if kind == "leaf"}
        for kind, i, children, payload in self._evals:
            if kind == "leaf":
                segs[i].append((start, end, staged[i]))
            elif kind == "not":
                segs[i].extend((s, e, -v)
                               for s, e, v in _pieces(segs[children[0]], start, end))
            elif kind == "and":
                segs[i].extend(_zip_op(segs[children[0]], segs[children[1]],
                                       start, end, min))
            elif kind == "or":
                segs[i].extend(_zip_op(segs[children[0]], segs[children[1]],
                                       start, end, max))
            elif kind == "once":
                segs[i].extend(self._carry_or_window(
                    segs[children[0]], payload, start, end, self._aux[i], use_max=True))
            elif kind == "hist":
                segs[i].extend(self._carry_or_window(
                    segs[children[0]], payload, start, end, self._aux[i], use_max=False))
            else:
                segs[i].extend(self._since(children, payload, start, end, self._aux[i]))
            segs[i][:] = condense(segs[i])
        self.frontier = end
        return [(s, e, v) for s, e, v in _pieces(segs[self.network.output], start, end)]

    def _carry_or_window(self, child, bound, start, end, aux, use_max):
        lower, upper = bound
        if lower == 0 and upper is None:
            out = []
            pick = max if use_max else min
            for s, e, v in _pieces(child, start, end):
                aux[0] = pick(aux[0], v)
                out.append((s, e, aux[0]))
            return out
        empty = -INF if use_max else INF
        def value_at(t):
            window_lo = 0 if upper is None else t - upper
            window_lo = max(window_lo, 0)
            window_hi = t - lower
            if window_hi < 0:
                return empty
            return _range_extremum(child, window_lo, window_hi, use_max, empty)
        return self._piecewise(child, bound, start, end, value_at)

    def _since(self, children, bound, start, end, aux):
        phi = self.segments[children[0]]
        psi = self.segments[children[1]]
        lower, upper = bound
        if lower == 0 and upper is None:
            out = []
            for x, y, phi_v, psi_v in _zip_pieces(phi, psi, start, end):
                aux[0] = max(psi_v, min(phi_v, aux[0]))
                out.append((x, y, aux[0]))
            return out
        # bounded variant evaluated per unit time cell: an anchor at grid
        # point u is scored min(psi(u), min of phi over grid (u, n]); within
        # one psi piece that score is maximal at the latest grid point
        out = []
        for n in range(start, end):
            lo = 0 if upper is None else max(0, n - upper)
            hi = n - lower
            best = -INF
            if hi >= 0:
                for s, e, v in psi:
                    if s > hi:
                        break
                    u = min(e - 1, hi)
                    if u < lo:
                        continue
                    phi_min = INF if u + 1 > n else \
                        _range_extremum(phi, u + 1, n, False, INF)
                    best = max(best, min(v, phi_min))
            out.append((n, n + 1, best))
        return condense(out)

    def _piecewise(self, child, bound, start, end, value_at):
        """Sample value_at at midpoints of spans where it is constant."""
        lower, upper = bound
        cuts = {start, end}
        shifts = [lower] if upper is None else [lower, upper]
        for s, e, _v in child:
            for base in (s, e):
                for shift in shifts:
                    point = base + shift
                    if start < point < end:
                        cuts.add(point)
                if start < base < end:
                    cuts.add(base)
        points = sorted(cuts)
        out = []
        for x, y in zip(points, points[1:]):
            out.append((x, y, value_at((x + y) / 2)))
        return condense(out)


def _pieces(segments, start, end):
    """Clip a segment list to [start, end)."""
    for s, e, v in segments:
        lo = max(s, start)
        hi = min(e, end)
        if lo < hi:
            yield (lo, hi, v)


def _zip_op(a, b, start, end, op):
    return [(x, y, op(va, vb)) for x, y, va, vb in _zip_pieces(a, b, start, end)]


def _zip_pieces(a, b, start, end):
    pa = list(_pieces(a, start, end))
    pb = list(_pieces(b, start, end))
    i = j = 0
    out = []
    while i < len(pa) and j < len(pb):
        lo = max(pa[i][0], pb[j][0])
        hi = min(pa[i][1], pb[j][1])
        if lo < hi:
            out.append((lo, hi, pa[i][2], pb[j][2]))
        if pa[i][1] <= pb[j][1]:
            i += 1
        else:
            j += 1
    return out


def _range_extremum(segments, lo, hi, use_max, empty):
    """Extremum of a piecewise-constant signal over [lo, hi].

    For half-open segments [s, e) the intersection test is
    s <= hi and e > lo.
    """
    best = empty
    pick = max if use_max else min
    for s, e, v in segments:
        if s > hi:
            break
        if e > lo:
            best = pick(best, v)
    return best
