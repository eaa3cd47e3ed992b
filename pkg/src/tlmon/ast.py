"""Abstract syntax for specification expressions.

All nodes are immutable; structural equality is used for subterm
sharing during compilation, so every payload must be hashable.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple, Union

Scalar = Union[bool, int, float, str, None]

COMPARE_OPS = ("<", "<=", ">", ">=", "==", "!=")


@dataclass(frozen=True)
class TimeBound:
    """Inclusive window [lower, upper]; upper None means unbounded above."""

    lower: Fraction
    upper: Optional[Fraction] = None

    def __post_init__(self):
        if self.lower < 0:
            raise ValueError("time bound lower must be non-negative")
        if self.upper is not None and self.upper < self.lower:
            raise ValueError("time bound lower exceeds upper")

    def render(self):
        upper = "" if self.upper is None else _render_qty(self.upper)
        return f"[{_render_qty(self.lower)}:{upper}]"


def _render_qty(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return str(float(q))


@dataclass(frozen=True)
class FieldConstraint:
    """One condition on a single message field.

    kind is one of:
      "bare"    -- {key}, sugar for key == true
      "eq"      -- {key: literal} for bool/number/string literals
      "cmp"     -- {key OP number} with OP in COMPARE_OPS
      "refvar"  -- {key: *name}, binds/compares a reference variable
    """

    key: str
    kind: str
    op: Optional[str] = None
    value: Scalar = None
    var: Optional[str] = None

    def __post_init__(self):
        if not self.key:
            raise ValueError("field constraint key must be non-empty")
        if self.kind == "cmp" and self.op not in COMPARE_OPS:
            raise ValueError(f"bad comparison operator {self.op!r}")

    def render(self):
        if self.kind == "bare":
            return self.key
        if self.kind == "refvar":
            return f"{self.key}: *{self.var}"
        if self.kind == "cmp":
            return f"{self.key} {self.op} {_render_literal(self.value)}"
        return f"{self.key}: {_render_literal(self.value)}"


def _render_literal(value: Scalar) -> str:
    if value is True:
        return "true"
    if value is False:
        return "false"
    if isinstance(value, str):
        escaped = value.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'
    return repr(value)


class Expr:
    """Base class; subclasses are the expression variants."""

    __slots__ = ()


@dataclass(frozen=True)
class Atomic(Expr):
    constraints: Tuple[FieldConstraint, ...]

    def __post_init__(self):
        if not self.constraints:
            raise ValueError("atomic expression needs at least one constraint")


@dataclass(frozen=True)
class CustomPredicate(Expr):
    name: str


@dataclass(frozen=True)
class Not(Expr):
    operand: Expr


@dataclass(frozen=True)
class And(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Or(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Implies(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Pre(Expr):
    operand: Expr


@dataclass(frozen=True)
class Once(Expr):
    operand: Expr
    bound: Optional[TimeBound] = None


@dataclass(frozen=True)
class Historically(Expr):
    operand: Expr
    bound: Optional[TimeBound] = None


@dataclass(frozen=True)
class Since(Expr):
    left: Expr
    right: Expr
    bound: Optional[TimeBound] = None


@dataclass(frozen=True)
class Exists(Expr):
    variables: Tuple[str, ...]
    operand: Expr

    def __post_init__(self):
        _check_vars(self.variables)


@dataclass(frozen=True)
class Forall(Expr):
    variables: Tuple[str, ...]
    operand: Expr

    def __post_init__(self):
        _check_vars(self.variables)


def _check_vars(variables):
    if not variables:
        raise ValueError("quantifier needs at least one variable")
    if len(set(variables)) != len(variables):
        raise ValueError("duplicate quantifier variable")


def children(expr: Expr):
    if isinstance(expr, (Not, Pre, Once, Historically)):
        return (expr.operand,)
    if isinstance(expr, (And, Or, Implies, Since)):
        return (expr.left, expr.right)
    if isinstance(expr, (Exists, Forall)):
        return (expr.operand,)
    return ()


def pretty(expr: Expr) -> str:
    """Render an expression back to concrete syntax.

    Fully parenthesizes compound operands, so the result re-parses to a
    structurally identical tree regardless of precedence subtleties.
    """
    if isinstance(expr, Atomic):
        return "{" + ", ".join(c.render() for c in expr.constraints) + "}"
    if isinstance(expr, CustomPredicate):
        return "${" + expr.name + "}"
    if isinstance(expr, Not):
        return f"not {_group(expr.operand)}"
    if isinstance(expr, And):
        return f"{_group(expr.left)} and {_group(expr.right)}"
    if isinstance(expr, Or):
        return f"{_group(expr.left)} or {_group(expr.right)}"
    if isinstance(expr, Implies):
        return f"{_group(expr.left)} implies {_group(expr.right)}"
    if isinstance(expr, Pre):
        return f"pre {_group(expr.operand)}"
    if isinstance(expr, Once):
        return f"once{_bound(expr.bound)} {_group(expr.operand)}"
    if isinstance(expr, Historically):
        return f"always{_bound(expr.bound)} {_group(expr.operand)}"
    if isinstance(expr, Since):
        return f"{_group(expr.left)} since{_bound(expr.bound)} {_group(expr.right)}"
    if isinstance(expr, Exists):
        return f"exists[{', '.join(expr.variables)}]. {_group(expr.operand)}"
    if isinstance(expr, Forall):
        return f"forall[{', '.join(expr.variables)}]. {_group(expr.operand)}"
    raise TypeError(f"not an expression: {expr!r}")


def _bound(bound: Optional[TimeBound]) -> str:
    return bound.render() if bound is not None else ""


def _group(expr: Expr) -> str:
    if isinstance(expr, (Atomic, CustomPredicate)):
        return pretty(expr)
    return "(" + pretty(expr) + ")"
