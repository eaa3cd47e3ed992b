"""Discrete-time evaluation engine (Boolean and robustness semantics).

The engine turns each network node into a small stepper closure.  A
step runs in two phases: all input-reading leaves first (the only
place a runtime type error can occur), then the stateful and pure
nodes in topological order.  A failed step therefore leaves no state
modified.
"""

import math

from .errors import EvaluationError
from .windows import WindowAggregator

INF = math.inf


def make_constraint_check(constraint):
    """Boolean check for one (key, kind, op, (tag, value), slot) entry."""
    key, kind, op, tagged, _slot = constraint
    if kind == "eq":
        tag, literal = tagged
        if tag == "bool":
            return lambda fields: fields.get(key) is literal
        if tag == "str":
            value_is = lambda v: isinstance(v, str) and v == literal
        else:
            value_is = lambda v: (isinstance(v, (int, float))
                                  and not isinstance(v, bool) and v == literal)
        return lambda fields: value_is(fields.get(key))
    _tag, literal = tagged
    def check(fields):
        value = fields.get(key)
        if value is None:
            return False
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise EvaluationError(
                f"comparison on non-numeric value for field {key!r}")
        if op == "<":
            return value < literal
        if op == "<=":
            return value <= literal
        if op == ">":
            return value > literal
        if op == ">=":
            return value >= literal
        if op == "==":
            return value == literal
        return value != literal
    return check


def make_constraint_margin(constraint):
    """Robustness value for one constraint entry."""
    key, kind, op, tagged, _slot = constraint
    if kind == "eq":
        check = make_constraint_check(constraint)
        return lambda fields: INF if check(fields) else -INF
    _tag, literal = tagged
    def margin(fields):
        value = fields.get(key)
        if value is None:
            return -INF
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise EvaluationError(
                f"comparison on non-numeric value for field {key!r}")
        if op in (">", ">="):
            return value - literal
        if op in ("<", "<="):
            return literal - value
        # equality and inequality are categorical, not metric
        satisfied = value == literal if op == "==" else value != literal
        return INF if satisfied else -INF
    return margin


class _BoundedSinceBool:
    """phi since[a:b] psi over booleans in O(1) per step.

    Tracks the last index where phi was false and the latest
    psi-true index at lag a; the verdict is a comparison of the two
    against the window edge.
    """

    def __init__(self, lower, upper):
        self.lower = lower
        self.upper = upper
        self._delay = []
        self._last_false = -1
        self._latest_anchor = -1
        self._t = -1

    def push(self, phi, psi):
        self._t += 1
        t = self._t
        if not phi:
            self._last_false = t
        if self.lower == 0:
            delayed = psi
        else:
            self._delay.append(psi)
            delayed = self._delay.pop(0) if len(self._delay) > self.lower else None
        if delayed:
            self._latest_anchor = t - self.lower
        anchor = self._latest_anchor
        if anchor < 0:
            return False
        if self.upper is not None and anchor < t - self.upper:
            return False
        return anchor >= self._last_false


class _BoundedSinceRobust:
    """phi since[a:b] psi under robustness; O(window) per step."""

    def __init__(self, lower, upper):
        self.lower = lower
        self.upper = upper
        self._phi = []
        self._psi = []
        self._t = -1
        # unbounded-above variant: carried unbounded since at lag a plus
        # a sliding min of phi over the last `a` steps
        if upper is None:
            self._carry = -INF
            self._carry_delay = []
            self._tail_min = (WindowAggregator(0, lower - 1, use_max=False)
                              if lower else None)

    def push(self, phi, psi):
        self._t += 1
        t = self._t
        if self.upper is None:
            self._carry = max(psi, min(phi, self._carry))
            if self.lower == 0:
                return self._carry
            self._carry_delay.append(self._carry)
            delayed = (self._carry_delay.pop(0)
                       if len(self._carry_delay) > self.lower else None)
            tail = self._tail_min.push(phi)
            if delayed is None:
                return -INF
            return min(delayed, INF if tail is None else tail)
        self._phi.append(phi)
        self._psi.append(psi)
        if len(self._phi) > self.upper + 1:
            self._phi.pop(0)
            self._psi.pop(0)
        best = -INF
        running = INF
        offset = t - len(self._phi) + 1
        for t_prime in range(t, offset - 1, -1):
            if t_prime <= t - self.lower:
                best = max(best, min(self._psi[t_prime - offset], running))
            running = min(running, self._phi[t_prime - offset])
        return best


class DiscreteEngine:
    def __init__(self, network):
        self.network = network
        self.robust = network.semantics == "robust"
        self.values = [None] * len(network.nodes)
        self.t = -1
        self._leaves = []
        self._steppers = []
        for i, node in enumerate(network.nodes):
            self._build(i, node)

    def _build(self, i, node):
        values = self.values
        robust = self.robust
        kind = node.kind
        if kind == "atomic":
            if robust:
                margins = [make_constraint_margin(c) for c in node.payload]
                if len(margins) == 1:
                    single = margins[0]
                    fn = lambda fields: single(fields)
                else:
                    fn = lambda fields: min(m(fields) for m in margins)
            else:
                checks = [make_constraint_check(c) for c in node.payload]
                if len(checks) == 1:
                    single = checks[0]
                    fn = lambda fields: single(fields)
                else:
                    fn = lambda fields: all(c(fields) for c in checks)
            self._leaves.append((i, fn))
            return
        if kind == "pred":
            pred = self.network.predicates[node.payload]
            if robust:
                fn = lambda fields: INF if pred(fields) else -INF
            else:
                fn = lambda fields: bool(pred(fields))
            self._leaves.append((i, fn))
            return
        children = node.children
        if kind == "not":
            c, = children
            if robust:
                step = lambda: values.__setitem__(i, -values[c])
            else:
                step = lambda: values.__setitem__(i, not values[c])
        elif kind == "and":
            l, r = children
            if robust:
                step = lambda: values.__setitem__(i, min(values[l], values[r]))
            else:
                step = lambda: values.__setitem__(i, values[l] and values[r])
        elif kind == "or":
            l, r = children
            if robust:
                step = lambda: values.__setitem__(i, max(values[l], values[r]))
            else:
                step = lambda: values.__setitem__(i, values[l] or values[r])
        elif kind == "pre":
            c, = children
            box = [-INF if robust else False]
            def step():
                values[i] = box[0]
                box[0] = values[c]
        elif kind == "once":
            step = self._build_once(i, children[0], node.payload, use_max=True)
        elif kind == "hist":
            step = self._build_once(i, children[0], node.payload, use_max=False)
        elif kind == "since":
            step = self._build_since(i, children, node.payload)
        else:
            raise EvaluationError(
                f"operator {kind!r} requires the first-order engine")
        self._steppers.append(step)

    def _build_once(self, i, c, bound, use_max):
        values = self.values
        robust = self.robust
        lower, upper = bound
        empty = (-INF if use_max else INF) if robust else (not use_max)
        if lower == 0 and upper is None:
            if robust:
                box = [empty]
                if use_max:
                    def step():
                        box[0] = max(box[0], values[c])
                        values[i] = box[0]
                else:
                    def step():
                        box[0] = min(box[0], values[c])
                        values[i] = box[0]
            else:
                box = [empty]
                if use_max:
                    def step():
                        box[0] = box[0] or values[c]
                        values[i] = box[0]
                else:
                    def step():
                        box[0] = box[0] and values[c]
                        values[i] = box[0]
            return step
        window = WindowAggregator(lower, upper, use_max=use_max)
        if robust:
            def step():
                out = window.push(values[c])
                values[i] = empty if out is None else out
        else:
            def step():
                out = window.push(1 if values[c] else 0)
                values[i] = empty if out is None else bool(out)
        return step

    def _build_since(self, i, children, bound):
        values = self.values
        robust = self.robust
        l, r = children
        lower, upper = bound
        if lower == 0 and upper is None:
            if robust:
                box = [-INF]
                def step():
                    box[0] = max(values[r], min(values[l], box[0]))
                    values[i] = box[0]
            else:
                box = [False]
                def step():
                    box[0] = values[r] or (values[l] and box[0])
                    values[i] = box[0]
            return step
        if robust:
            tracker = _BoundedSinceRobust(lower, upper)
            def step():
                values[i] = tracker.push(values[l], values[r])
        else:
            tracker = _BoundedSinceBool(lower, upper)
            def step():
                values[i] = tracker.push(values[l], values[r])
        return step

    def step(self, fields):
        """Advance one time point; returns the output node's value."""
        values = self.values
        staged = [(i, fn(fields)) for i, fn in self._leaves]
        for i, value in staged:
            values[i] = value
        for step in self._steppers:
            step()
        self.t += 1
        return values[self.network.output]
