"""Lowering of validated expressions into computation networks.

A network is a topologically ordered node table: every node's children
have strictly smaller ids, so evaluating the table in order once per
step realizes the synchronous update of the whole formula.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

from . import ast
from .errors import CompileError

# Literal payloads are tagged with their type so that e.g. the boolean
# true and the number 1 hash differently.
def _tag_value(value):
    return (type(value).__name__, value)


@dataclass(frozen=True)
class Node:
    kind: str                     # atomic, pred, not, and, or, pre,
                                  # once, hist, since, exists, forall
    children: Tuple[int, ...] = ()
    payload: object = None

    def key(self, child_map=None):
        children = self.children
        if child_map is not None:
            children = tuple(child_map[c] for c in children)
        return (self.kind, children, self.payload)


@dataclass(frozen=True)
class QuantifierSlot:
    """One quantifier binding: contiguous bit range in the BDD order."""

    name: str
    first_bit: int
    bits: int


@dataclass
class MonitorNetwork:
    nodes: list
    output: int
    time_model: str
    semantics: str
    input_keys: frozenset
    slots: Tuple[QuantifierSlot, ...] = ()
    predicates: dict = field(default_factory=dict)
    first_order: bool = False

    def describe(self):
        """One line per node: id, kind, children, payload."""
        lines = []
        for i, node in enumerate(self.nodes):
            parts = [str(i), node.kind]
            if node.children:
                parts.append("(" + ", ".join(map(str, node.children)) + ")")
            if node.payload is not None:
                parts.append(repr(node.payload))
            marker = " <- output" if i == self.output else ""
            lines.append(" ".join(parts) + marker)
        return "\n".join(lines)


def compile_network(expr, options, predicates=None, cse=True):
    """Lower a validated expression into a MonitorNetwork."""
    predicates = dict(predicates or {})
    builder = _Builder(options, predicates)
    output = builder.lower(expr, {})
    nodes = builder.nodes
    if cse:
        nodes, remap = cse_dedupe(nodes)
        output = remap[output]
    return MonitorNetwork(
        nodes=nodes,
        output=output,
        time_model=options.time_model,
        semantics=options.semantics,
        input_keys=frozenset(builder.input_keys),
        slots=tuple(builder.slots),
        predicates=predicates,
        first_order=builder.first_order,
    )


class _Builder:
    def __init__(self, options, predicates):
        self.options = options
        self.predicates = predicates
        self.nodes = []
        self.slots = []
        self.input_keys = set()
        self.first_order = False

    def emit(self, kind, children=(), payload=None):
        self.nodes.append(Node(kind, tuple(children), payload))
        return len(self.nodes) - 1

    def new_slot(self, name):
        first_bit = len(self.slots) * self.options.bits
        slot = QuantifierSlot(name, first_bit, self.options.bits)
        self.slots.append(slot)
        return len(self.slots) - 1

    def scale_bound(self, bound: Optional[ast.TimeBound]):
        if bound is None:
            return (0, None)
        if self.options.time_model == "dense":
            scale = self.options.time_scale
        else:
            scale = 1
        lower = bound.lower * scale
        upper = None if bound.upper is None else bound.upper * scale
        for value in (lower, upper):
            if value is not None and value.denominator != 1:
                raise CompileError(
                    f"time bound {bound.render()} is not representable "
                    f"at time scale {scale}")
        return (int(lower), None if upper is None else int(upper))

    def lower(self, expr, env):
        if isinstance(expr, ast.Atomic):
            constraints = []
            for c in expr.constraints:
                self.input_keys.add(c.key)
                if c.kind == "refvar":
                    self.first_order = True
                    constraints.append((c.key, "refvar", None, None, env[c.var]))
                elif c.kind == "bare":
                    constraints.append((c.key, "eq", None, _tag_value(True), None))
                elif c.kind == "eq":
                    constraints.append((c.key, "eq", None, _tag_value(c.value), None))
                else:
                    constraints.append((c.key, "cmp", c.op, _tag_value(c.value), None))
            # key-sorted so {a, b} and {b, a} share a node
            constraints.sort(key=lambda item: (item[0], item[1], str(item[2]),
                                               str(item[3]), str(item[4])))
            return self.emit("atomic", payload=tuple(constraints))
        if isinstance(expr, ast.CustomPredicate):
            if expr.name not in self.predicates:
                raise CompileError(f"unknown predicate {expr.name!r}")
            return self.emit("pred", payload=expr.name)
        if isinstance(expr, ast.Not):
            return self.emit("not", (self.lower(expr.operand, env),))
        if isinstance(expr, ast.And):
            left = self.lower(expr.left, env)
            right = self.lower(expr.right, env)
            return self.emit("and", (left, right))
        if isinstance(expr, ast.Or):
            left = self.lower(expr.left, env)
            right = self.lower(expr.right, env)
            return self.emit("or", (left, right))
        if isinstance(expr, ast.Implies):
            # a -> b becomes (not a) or b
            left = self.emit("not", (self.lower(expr.left, env),))
            right = self.lower(expr.right, env)
            return self.emit("or", (left, right))
        if isinstance(expr, ast.Pre):
            return self.emit("pre", (self.lower(expr.operand, env),))
        if isinstance(expr, ast.Once):
            return self.emit("once", (self.lower(expr.operand, env),),
                             self.scale_bound(expr.bound))
        if isinstance(expr, ast.Historically):
            return self.emit("hist", (self.lower(expr.operand, env),),
                             self.scale_bound(expr.bound))
        if isinstance(expr, ast.Since):
            left = self.lower(expr.left, env)
            right = self.lower(expr.right, env)
            return self.emit("since", (left, right), self.scale_bound(expr.bound))
        if isinstance(expr, (ast.Exists, ast.Forall)):
            self.first_order = True
            inner = dict(env)
            slot_ids = []
            for name in expr.variables:
                slot_id = self.new_slot(name)
                inner[name] = slot_id
                slot_ids.append(slot_id)
            kind = "exists" if isinstance(expr, ast.Exists) else "forall"
            return self.emit(kind, (self.lower(expr.operand, inner),),
                             tuple(slot_ids))
        raise CompileError(f"cannot lower {expr!r}")


def cse_dedupe(nodes):
    """Merge structurally identical nodes.

    Returns (new_nodes, remap) where remap[old_id] = new_id.  Relative
    order of the surviving nodes is preserved, so the result is still
    topologically sorted.
    """
    seen = {}
    new_nodes = []
    remap = []
    for node in nodes:
        key = node.key(remap)
        if key in seen:
            remap.append(seen[key])
            continue
        children = tuple(remap[c] for c in node.children)
        new_nodes.append(Node(node.kind, children, node.payload))
        new_id = len(new_nodes) - 1
        seen[key] = new_id
        remap.append(new_id)
    return new_nodes, remap
