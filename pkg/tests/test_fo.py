import pytest
from hypothesis import given, settings, strategies as st

from helpers import eval_bool
from tlmon import ast
from tlmon.compiler import compile_network
from tlmon.errors import DictionaryOverflow, EvaluationError
from tlmon.fo import FirstOrderEngine, ValueDictionary
from tlmon.options import MonitorOptions
from tlmon.parser import parse, validate

DISCRETE = MonitorOptions()
VALUES = ["A", "B", "C", "D", "E", "F"]


def run_engine(text, states, options=DISCRETE):
    network = compile_network(validate(parse(text), options), options)
    assert network.first_order
    engine = FirstOrderEngine(network)
    return [engine.step(s) for s in states]


def run_expr(expr, states, options=DISCRETE):
    network = compile_network(expr, options)
    engine = FirstOrderEngine(network)
    return [engine.step(s) for s in states]


class TestValueDictionary:
    def test_indices_assigned_from_one(self):
        d = ValueDictionary(4)
        assert d.index_of("hello") == 1
        assert d.index_of("world") == 2

    def test_indices_stable(self):
        d = ValueDictionary(4)
        first = d.index_of("hello")
        d.index_of("world")
        assert d.index_of("hello") == first

    def test_overflow_at_capacity(self):
        d = ValueDictionary(2)
        for name in ("a", "b", "c"):
            d.index_of(name)
        with pytest.raises(DictionaryOverflow):
            d.index_of("d")


class TestExamples:
    def test_shared_value_exists(self):
        text = "exists[var]. {key1: *var, key2: *var}"
        assert run_engine(text, [{"key1": "hello", "key2": "hello"}]) == [True]
        assert run_engine(text, [{"key1": "hello", "key2": "world"}]) == [False]

    def test_once_latches_nonempty_domain(self):
        states = [{"user": "A"}, {"user": "B"}, {}]
        assert run_engine("exists[v]. once {user: *v}", states) == [True, True, True]

    def test_forall_with_unseen_class(self):
        # vacuous over the unseen class: no value satisfies {c: *v}
        # everywhere unless the formula tolerates absence
        states = [{"c": "A"}]
        assert run_engine("forall[v]. {c: *v}", states) == [False]
        assert run_engine("forall[v]. (not {c: *v} or {c: *v})", states) == [True]

    def test_lock_property_matches_per_identity_evaluation(self):
        rng = __import__("random").Random(41)
        text = "forall[v]. (not {acq: *v} or ({held: *v} since {acq: *v}))"
        expr = validate(parse(text), DISCRETE)
        for _ in range(20):
            states = []
            for _t in range(30):
                state = {}
                if rng.random() < 0.5:
                    state["acq"] = rng.choice(VALUES[:5])
                if rng.random() < 0.7:
                    state["held"] = rng.choice(VALUES[:5])
                states.append(state)
            got = run_expr(expr, states)
            want = [eval_bool(expr, states, t) for t in range(len(states))]
            assert got == want

    def test_refvar_on_non_string_field(self):
        network = compile_network(
            validate(parse("exists[v]. {c: *v}"), DISCRETE), DISCRETE)
        engine = FirstOrderEngine(network)
        with pytest.raises(EvaluationError, match="non-string"):
            engine.step({"c": 7})

    def test_failed_step_does_not_advance(self):
        network = compile_network(
            validate(parse("exists[v]. once {c: *v}"), DISCRETE), DISCRETE)
        engine = FirstOrderEngine(network)
        assert engine.step({"c": "A"}) is True
        with pytest.raises(EvaluationError):
            engine.step({"c": 7})
        assert engine.t == 0
        assert engine.step({}) is True  # once latch survived the bad message


class TestEnumerationOracle:
    @settings(max_examples=150, deadline=None)
    @given(st.randoms(use_true_random=False))
    def test_random_quantified_formulas(self, rng):
        expr = random_fo_expr(rng)
        length = rng.randrange(1, 21)
        states = []
        for _ in range(length):
            state = {"p": rng.random() < 0.5}
            for key in ("c1", "c2"):
                if rng.random() < 0.8:
                    state[key] = rng.choice(VALUES)
            states.append(state)
        got = run_expr(expr, states)
        want = [eval_bool(expr, states, t) for t in range(length)]
        assert got == want, ast.pretty(expr)

    def test_nested_quantifiers(self):
        text = "exists[v]. (once {c1: *v} and (forall[w]. " \
               "(not {c2: *w} or once {c1: *w})))"
        expr = validate(parse(text), DISCRETE)
        rng = __import__("random").Random(13)
        for _ in range(15):
            states = []
            for _t in range(12):
                state = {}
                for key in ("c1", "c2"):
                    if rng.random() < 0.7:
                        state[key] = rng.choice(VALUES[:4])
                states.append(state)
            got = run_expr(expr, states)
            want = [eval_bool(expr, states, t) for t in range(len(states))]
            assert got == want


def random_fo_expr(rng):
    variables = tuple(f"v{i}" for i in range(rng.randrange(1, 3)))
    core = _random_core(rng, 3, variables)
    wrap = ast.Exists if rng.random() < 0.5 else ast.Forall
    return wrap(variables, core)


def _random_core(rng, depth, variables):
    if depth == 0 or rng.random() < 0.3:
        roll = rng.random()
        if roll < 0.6:
            key = rng.choice(("c1", "c2"))
            return ast.Atomic((ast.FieldConstraint(
                key, "refvar", var=rng.choice(variables)),))
        if roll < 0.8:
            key = rng.choice(("c1", "c2"))
            return ast.Atomic((ast.FieldConstraint(
                key, "eq", value=rng.choice(VALUES)),))
        return ast.Atomic((ast.FieldConstraint("p", "bare"),))
    sub = lambda: _random_core(rng, depth - 1, variables)
    choice = rng.randrange(7)
    if choice == 0:
        return ast.Not(sub())
    if choice == 1:
        return ast.And(sub(), sub())
    if choice == 2:
        return ast.Or(sub(), sub())
    if choice == 3:
        return ast.Once(sub(), _random_fo_bound(rng))
    if choice == 4:
        return ast.Historically(sub(), _random_fo_bound(rng))
    if choice == 5:
        return ast.Since(sub(), sub(), _random_fo_bound(rng))
    return ast.Pre(sub())


def _random_fo_bound(rng):
    if rng.random() < 0.5:
        return None
    lo = rng.randrange(0, 3)
    if rng.random() < 0.3:
        return ast.TimeBound(lo)
    return ast.TimeBound(lo, lo + rng.randrange(0, 4))
