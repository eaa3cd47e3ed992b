"""First-order discrete-time engine over BDD-encoded assignment sets.

Each quantified variable owns a contiguous range of BDD bits.  String
values are interned into an incrementally growing dictionary starting
at index 1; code 0 stands for the class of all values never observed,
which keeps universal quantification sound over the unbounded domain.
Codes never assigned behave exactly like code 0 (no constraint can
distinguish them), so quantifying over all bit patterns equals
quantifying over observed values plus the unseen class.
"""

from collections import deque

from .bdd import FALSE, TRUE, BddKernel
from .discrete import make_constraint_check
from .errors import DictionaryOverflow, EvaluationError


class ValueDictionary:
    def __init__(self, bits):
        self.bits = bits
        self.indices = {}

    def index_of(self, value):
        index = self.indices.get(value)
        if index is None:
            index = len(self.indices) + 1
            if index >= (1 << self.bits):
                raise DictionaryOverflow(
                    f"more than {(1 << self.bits) - 1} distinct values "
                    f"for bit width {self.bits}")
            self.indices[value] = index
        return index


class FirstOrderEngine:
    def __init__(self, network):
        self.network = network
        slots = network.slots
        bits = slots[0].bits if slots else 1
        self.kernel = BddKernel(sum(s.bits for s in slots) or 1)
        self.dictionary = ValueDictionary(bits)
        self.values = [FALSE] * len(network.nodes)
        self.t = -1
        self._leaves = []
        self._steppers = []
        for i, node in enumerate(network.nodes):
            self._build(i, node)

    def encode_eq(self, slot_id, value):
        slot = self.network.slots[slot_id]
        index = self.dictionary.index_of(value)
        return self.kernel.equals_value(slot.first_bit, slot.bits, index)

    def _leaf_fn(self, node):
        kernel = self.kernel
        plain = [c for c in node.payload if c[1] != "refvar"]
        refvars = [(c[0], c[4]) for c in node.payload if c[1] == "refvar"]
        checks = [make_constraint_check(c) for c in plain]
        def fn(fields):
            if not all(check(fields) for check in checks):
                return FALSE
            out = TRUE
            for key, slot_id in refvars:
                value = fields.get(key)
                if value is None:
                    return FALSE
                if not isinstance(value, str):
                    raise EvaluationError(
                        f"reference variable reads non-string field {key!r}")
                out = kernel.apply_and(out, self.encode_eq(slot_id, value))
            return out
        return fn

    def _build(self, i, node):
        kernel = self.kernel
        values = self.values
        kind = node.kind
        if kind == "atomic":
            self._leaves.append((i, self._leaf_fn(node)))
            return
        if kind == "pred":
            pred = self.network.predicates[node.payload]
            self._leaves.append((i, lambda fields: TRUE if pred(fields) else FALSE))
            return
        children = node.children
        if kind == "not":
            c, = children
            step = lambda: values.__setitem__(i, kernel.apply_not(values[c]))
        elif kind == "and":
            l, r = children
            step = lambda: values.__setitem__(
                i, kernel.apply_and(values[l], values[r]))
        elif kind == "or":
            l, r = children
            step = lambda: values.__setitem__(
                i, kernel.apply_or(values[l], values[r]))
        elif kind == "pre":
            c, = children
            box = [FALSE]
            def step():
                values[i] = box[0]
                box[0] = values[c]
        elif kind in ("once", "hist"):
            step = self._build_window(i, children[0], node.payload, kind)
        elif kind == "since":
            step = self._build_since(i, children, node.payload)
        elif kind in ("exists", "forall"):
            c, = children
            levels = []
            for slot_id in node.payload:
                slot = self.network.slots[slot_id]
                levels.extend(range(slot.first_bit, slot.first_bit + slot.bits))
            levels = frozenset(levels)
            if kind == "exists":
                step = lambda: values.__setitem__(i, kernel.exists(levels, values[c]))
            else:
                step = lambda: values.__setitem__(i, kernel.forall(levels, values[c]))
        else:
            raise EvaluationError(f"operator {kind!r} unsupported here")
        self._steppers.append(step)

    def _build_window(self, i, c, bound, kind):
        kernel = self.kernel
        values = self.values
        lower, upper = bound
        combine = kernel.apply_or if kind == "once" else kernel.apply_and
        empty = FALSE if kind == "once" else TRUE
        if upper is None:
            # running accumulator, delayed by `lower` steps
            acc = [empty]
            delay = deque()
            def step():
                delay.append(values[c])
                if len(delay) > lower:
                    acc[0] = combine(acc[0], delay.popleft())
                    values[i] = acc[0]
                else:
                    values[i] = empty
            return step
        buffer = deque(maxlen=upper + 1)
        def step():
            buffer.append(values[c])
            out = empty
            # window [t-upper, t-lower]; buffer[-1] is time t
            for age, ref in enumerate(reversed(buffer)):
                if lower <= age <= upper:
                    out = combine(out, ref)
            values[i] = out
        return step

    def _build_since(self, i, children, bound):
        kernel = self.kernel
        values = self.values
        l, r = children
        lower, upper = bound
        if lower == 0 and upper is None:
            box = [FALSE]
            def step():
                box[0] = kernel.apply_or(
                    values[r], kernel.apply_and(values[l], box[0]))
                values[i] = box[0]
            return step
        if upper is None:
            # unbounded since delayed by `lower`, constrained by phi on
            # the most recent `lower` steps
            carry = [FALSE]
            carry_delay = deque()
            phi_tail = deque(maxlen=lower)
            def step():
                carry[0] = kernel.apply_or(
                    values[r], kernel.apply_and(values[l], carry[0]))
                carry_delay.append(carry[0])
                phi_tail.append(values[l])
                if len(carry_delay) > lower:
                    out = carry_delay.popleft()
                    for ref in phi_tail:
                        out = kernel.apply_and(out, ref)
                    values[i] = out
                else:
                    values[i] = FALSE
            return step
        pairs = deque(maxlen=upper + 1)
        def step():
            pairs.append((values[l], values[r]))
            best = FALSE
            running = TRUE
            # iterate ages 0..len-1 (age = t - t')
            for age, (phi, psi) in enumerate(reversed(pairs)):
                if lower <= age <= upper:
                    best = kernel.apply_or(best, kernel.apply_and(psi, running))
                running = kernel.apply_and(running, phi)
            values[i] = best
        return step

    def step(self, fields):
        values = self.values
        staged = [(i, fn(fields)) for i, fn in self._leaves]
        for i, ref in staged:
            values[i] = ref
        for step in self._steppers:
            step()
        self.t += 1
        return values[self.network.output] == TRUE
