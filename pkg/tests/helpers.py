"""Shared fixtures: reference traces, brute-force oracles, generators.

The oracle evaluators here work directly from the quantifier
definitions of the operators (explicit search over past time points)
and share no code with the engine, so they are usable as independent
ground truth.
"""

import math
import random

from tlmon import ast

INF = math.inf

# Full-state discrete trace (times 0..4)
FULL_STATE_TRACE = [
    {"p1": False, "nd": 1.23, "enm1": "A"},
    {"p1": True, "nd": 0.01, "enm1": "A"},
    {"p1": True, "nd": 9.12, "enm1": "B"},
    {"p1": True, "nd": 9.12, "enm1": "B"},
    {"p1": False, "nd": 9.18, "enm1": "C"},
]

# The same behavior, delta-encoded
DELTA_TRACE = [
    {"p1": False, "nd": 1.23, "enm1": "A"},
    {"p1": True, "nd": 0.01},
    {"nd": 9.12, "enm1": "B"},
    {},
    {"p1": False, "nd": 9.18, "enm1": "C"},
]

# Dense-time behavior with explicit timestamps
DENSE_TRACE = [
    {"time": 0, "p1": False, "nd": 1.23, "enm1": "A"},
    {"time": 4, "p1": True, "nd": 0.01},
    {"time": 7, "nd": 9.12, "enm1": "B"},
    {"time": 9, "p1": False, "nd": 9.18, "enm1": "C"},
]

# Door-open-warning module execution (times 0..8); warning at t=6
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

DOW_PROPERTIES = [
    "(H[0:5]{open} and not{suppr}) -> {warn}",
    "{warn} -> H[0:5]{open}",
    "{warn} -> not{suppr}",
    "{warn} -> not(pre({open} since {warn}))",
]


def expand_states(trace):
    """Persisted states of a (possibly delta-encoded) discrete trace."""
    states = []
    current = {}
    for msg in trace:
        for key, value in msg.items():
            if value is None:
                current.pop(key, None)
            else:
                current[key] = value
        states.append(dict(current))
    return states


def delta_encode(trace, rng=None):
    """Delta-encode full states; rng optionally re-sends unchanged keys."""
    out = []
    prev = {}
    for state in trace:
        msg = {}
        for key, value in state.items():
            if key not in prev or prev[key] != value or (
                    rng is not None and rng.random() < 0.3):
                msg[key] = value
        for key in prev:
            if key not in state:
                msg[key] = None
        out.append(msg)
        prev = state
    return out


def check_constraint(constraint, state):
    value = state.get(constraint.key)
    if constraint.kind in ("bare", "eq"):
        literal = True if constraint.kind == "bare" else constraint.value
        if isinstance(literal, bool):
            return value is literal
        if isinstance(literal, str):
            return isinstance(value, str) and value == literal
        return (isinstance(value, (int, float)) and not isinstance(value, bool)
                and value == literal)
    if constraint.kind == "cmp":
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            return False
        ops = {"<": value < constraint.value, "<=": value <= constraint.value,
               ">": value > constraint.value, ">=": value >= constraint.value,
               "==": value == constraint.value, "!=": value != constraint.value}
        return ops[constraint.op]
    raise AssertionError(f"unexpected constraint {constraint}")


def eval_bool(expr, states, t, env=None):
    """Brute-force Boolean evaluation at step t from the definitions."""
    env = env or {}
    if isinstance(expr, ast.Atomic):
        for c in expr.constraints:
            if c.kind == "refvar":
                value = states[t].get(c.key)
                if not isinstance(value, str) or value != env[c.var]:
                    return False
            elif not check_constraint(c, states[t]):
                return False
        return True
    if isinstance(expr, ast.Not):
        return not eval_bool(expr.operand, states, t, env)
    if isinstance(expr, ast.And):
        return eval_bool(expr.left, states, t, env) and eval_bool(expr.right, states, t, env)
    if isinstance(expr, ast.Or):
        return eval_bool(expr.left, states, t, env) or eval_bool(expr.right, states, t, env)
    if isinstance(expr, ast.Implies):
        return (not eval_bool(expr.left, states, t, env)) or eval_bool(expr.right, states, t, env)
    if isinstance(expr, ast.Pre):
        return t > 0 and eval_bool(expr.operand, states, t - 1, env)
    if isinstance(expr, ast.Once):
        lo, hi = window(expr.bound, t)
        return any(eval_bool(expr.operand, states, u, env) for u in range(lo, hi + 1))
    if isinstance(expr, ast.Historically):
        lo, hi = window(expr.bound, t)
        return all(eval_bool(expr.operand, states, u, env) for u in range(lo, hi + 1))
    if isinstance(expr, ast.Since):
        lo, hi = window(expr.bound, t)
        for u in range(lo, hi + 1):
            if eval_bool(expr.right, states, u, env) and all(
                    eval_bool(expr.left, states, w, env) for w in range(u + 1, t + 1)):
                return True
        return False
    if isinstance(expr, (ast.Exists, ast.Forall)):
        domain = observed_values(states) | {"__fresh__"}
        combos = [env]
        for var in expr.variables:
            combos = [dict(c, **{var: v}) for c in combos for v in sorted(domain)]
        results = [eval_bool(expr.operand, states, t, c) for c in combos]
        return any(results) if isinstance(expr, ast.Exists) else all(results)
    raise AssertionError(f"unexpected expr {expr}")


def eval_robust(expr, states, t):
    """Brute-force robustness evaluation at step t."""
    if isinstance(expr, ast.Atomic):
        margins = []
        for c in expr.constraints:
            if c.kind == "cmp" and c.op in ("<", "<=", ">", ">="):
                value = states[t].get(c.key)
                if not isinstance(value, (int, float)) or isinstance(value, bool):
                    margins.append(-INF)
                elif c.op in (">", ">="):
                    margins.append(value - c.value)
                else:
                    margins.append(c.value - value)
            else:
                margins.append(INF if check_constraint(c, states[t]) else -INF)
        return min(margins)
    if isinstance(expr, ast.Not):
        return -eval_robust(expr.operand, states, t)
    if isinstance(expr, ast.And):
        return min(eval_robust(expr.left, states, t), eval_robust(expr.right, states, t))
    if isinstance(expr, ast.Or):
        return max(eval_robust(expr.left, states, t), eval_robust(expr.right, states, t))
    if isinstance(expr, ast.Implies):
        return max(-eval_robust(expr.left, states, t), eval_robust(expr.right, states, t))
    if isinstance(expr, ast.Pre):
        return eval_robust(expr.operand, states, t - 1) if t > 0 else -INF
    if isinstance(expr, ast.Once):
        lo, hi = window(expr.bound, t)
        return max((eval_robust(expr.operand, states, u) for u in range(lo, hi + 1)),
                   default=-INF)
    if isinstance(expr, ast.Historically):
        lo, hi = window(expr.bound, t)
        return min((eval_robust(expr.operand, states, u) for u in range(lo, hi + 1)),
                   default=INF)
    if isinstance(expr, ast.Since):
        lo, hi = window(expr.bound, t)
        best = -INF
        for u in range(lo, hi + 1):
            score = min([eval_robust(expr.right, states, u)] +
                        [eval_robust(expr.left, states, w) for w in range(u + 1, t + 1)])
            best = max(best, score)
        return best
    raise AssertionError(f"unexpected expr {expr}")


def window(bound, t):
    """Discrete window [t-b, t-a] clipped to [0, t]; empty when lo > hi."""
    if bound is None:
        return 0, t
    lo = 0 if bound.upper is None else max(0, t - int(bound.upper))
    hi = t - int(bound.lower)
    return lo, hi


def observed_values(states):
    values = set()
    for state in states:
        for value in state.values():
            if isinstance(value, str):
                values.add(value)
    return values


def random_expr(rng, depth=3, fields=("p", "q", "r"), numeric=("x",),
                allow_pre=True, robust=False):
    """Random quantifier-free expression over the given fields."""
    if depth == 0 or rng.random() < 0.25:
        if robust or (numeric and rng.random() < 0.3):
            key = rng.choice(numeric)
            op = rng.choice((">", ">=", "<", "<="))
            return ast.Atomic((ast.FieldConstraint(
                key, "cmp", op=op, value=round(rng.uniform(-2, 2), 2)),))
        key = rng.choice(fields)
        return ast.Atomic((ast.FieldConstraint(key, "bare"),))
    choice = rng.randrange(8 if allow_pre else 7)
    sub = lambda: random_expr(rng, depth - 1, fields, numeric, allow_pre, robust)
    if choice == 0:
        return ast.Not(sub())
    if choice == 1:
        return ast.And(sub(), sub())
    if choice == 2:
        return ast.Or(sub(), sub())
    if choice == 3:
        return ast.Once(sub(), random_bound(rng))
    if choice == 4:
        return ast.Historically(sub(), random_bound(rng))
    if choice == 5:
        return ast.Since(sub(), sub(), random_bound(rng))
    if choice == 6:
        return ast.Implies(sub(), sub())
    return ast.Pre(sub())


def random_bound(rng):
    if rng.random() < 0.4:
        return None
    lo = rng.randrange(0, 4)
    if rng.random() < 0.3:
        return ast.TimeBound(lo)
    return ast.TimeBound(lo, lo + rng.randrange(0, 5))


def random_states(rng, length, fields=("p", "q", "r"), numeric=("x",)):
    states = []
    for _ in range(length):
        state = {key: rng.random() < 0.5 for key in fields}
        for key in numeric:
            state[key] = round(rng.uniform(-2, 2), 2)
        states.append(state)
    return states
