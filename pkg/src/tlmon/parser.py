"""Recursive-descent parser and static validation for specifications."""

from fractions import Fraction

from . import ast
from .errors import ParseError, UnsupportedFeature
from .lexer import Token, tokenize

UNARY_KEYWORDS = {"not", "pre", "once", "always"}


class _TokenStream:
    def __init__(self, tokens, length):
        self._tokens = list(tokens) + [Token("end", "", length)]
        self._index = 0

    @property
    def token(self):
        return self._tokens[self._index]

    def advance(self):
        token = self.token
        if token.kind != "end":
            self._index += 1
        return token

    def accept(self, kind):
        if self.token.kind == kind:
            return self.advance()
        return None

    def expect(self, kind, what=None):
        token = self.accept(kind)
        if token is None:
            found = self.token.text or "end of input"
            raise ParseError(
                self.token.position,
                f"unexpected {found!r}" if what is None else f"expected {what}",
                expected=(kind,),
            )
        return token


def parse(text_or_tokens):
    """Parse specification text (or a token list) into an Expr."""
    if isinstance(text_or_tokens, str):
        tokens = tokenize(text_or_tokens)
        length = len(text_or_tokens)
    else:
        tokens = list(text_or_tokens)
        length = tokens[-1].position + len(tokens[-1].text) if tokens else 0
    stream = _TokenStream(tokens, length)
    expr = _parse_expr(stream)
    if stream.token.kind != "end":
        raise ParseError(stream.token.position,
                         f"unexpected trailing input {stream.token.text!r}")
    return expr


def _parse_expr(stream):
    quant = stream.accept("exists") or stream.accept("forall")
    if quant:
        variables = _parse_var_list(stream)
        stream.expect(".", "'.' after quantifier variables")
        body = _parse_expr(stream)
        cls = ast.Exists if quant.kind == "exists" else ast.Forall
        try:
            return cls(variables, body)
        except ValueError as exc:
            raise ParseError(quant.position, str(exc)) from None
    return _parse_binary(stream)


def _parse_var_list(stream):
    stream.expect("[", "'[' before quantifier variables")
    names = [stream.expect("ident", "variable name").value]
    while stream.accept(","):
        names.append(stream.expect("ident", "variable name").value)
    stream.expect("]", "']' after quantifier variables")
    return tuple(names)


def _parse_binary(stream):
    # implies and since share the lowest tier and are left associative;
    # mixing them without parentheses is rejected.
    left = _parse_or(stream)
    tier_op = None
    while stream.token.kind in ("implies", "since"):
        op = stream.advance()
        if tier_op is not None and op.kind != tier_op:
            raise ParseError(
                op.position,
                "cannot mix 'implies' and 'since' without parentheses")
        tier_op = op.kind
        if op.kind == "since":
            bound = _parse_optional_bound(stream)
            right = _parse_or(stream)
            left = ast.Since(left, right, bound)
        else:
            right = _parse_or(stream)
            left = ast.Implies(left, right)
    return left


def _parse_or(stream):
    left = _parse_and(stream)
    while stream.accept("or"):
        left = ast.Or(left, _parse_and(stream))
    return left


def _parse_and(stream):
    left = _parse_unary(stream)
    while stream.accept("and"):
        left = ast.And(left, _parse_unary(stream))
    return left


def _parse_unary(stream):
    token = stream.token
    if token.kind == "not":
        stream.advance()
        return ast.Not(_parse_unary(stream))
    if token.kind == "pre":
        stream.advance()
        return ast.Pre(_parse_unary(stream))
    if token.kind == "once":
        stream.advance()
        bound = _parse_optional_bound(stream)
        return ast.Once(_parse_unary(stream), bound)
    if token.kind == "always":
        stream.advance()
        bound = _parse_optional_bound(stream)
        return ast.Historically(_parse_unary(stream), bound)
    return _parse_primary(stream)


def _parse_primary(stream):
    token = stream.token
    if token.kind == "(":
        stream.advance()
        expr = _parse_expr(stream)
        stream.expect(")", "closing ')'")
        return expr
    if token.kind == "{":
        return _parse_atomic(stream)
    if token.kind == "$":
        stream.advance()
        stream.expect("{", "'{' after '$'")
        name = stream.expect("ident", "predicate name").value
        stream.expect("}", "closing '}'")
        return ast.CustomPredicate(name)
    found = token.text or "end of input"
    raise ParseError(token.position, f"expected expression, found {found!r}",
                     expected=("{", "(", "$", "not"))


def _parse_atomic(stream):
    open_token = stream.expect("{")
    constraints = [_parse_constraint(stream)]
    while stream.accept(","):
        constraints.append(_parse_constraint(stream))
    stream.expect("}", "closing '}'")
    try:
        return ast.Atomic(tuple(constraints))
    except ValueError as exc:
        raise ParseError(open_token.position, str(exc)) from None


def _parse_constraint(stream):
    key = stream.expect("ident", "field name").value
    token = stream.token
    if token.kind == ":":
        stream.advance()
        if stream.accept("*"):
            var = stream.expect("ident", "reference variable name").value
            return ast.FieldConstraint(key, "refvar", var=var)
        return ast.FieldConstraint(key, "eq", value=_parse_literal(stream))
    if token.kind in ast.COMPARE_OPS:
        stream.advance()
        number = stream.expect("number", "numeric literal")
        return ast.FieldConstraint(key, "cmp", op=token.kind,
                                   value=_as_number(number.value))
    # bare {key} is sugar for {key: true}
    return ast.FieldConstraint(key, "bare")


def _parse_literal(stream):
    token = stream.token
    if token.kind == "true":
        stream.advance()
        return True
    if token.kind == "false":
        stream.advance()
        return False
    if token.kind == "number":
        stream.advance()
        return _as_number(token.value)
    if token.kind == "string":
        stream.advance()
        return token.value
    found = token.text or "end of input"
    raise ParseError(token.position, f"expected literal value, found {found!r}",
                     expected=("true", "false", "number", "string"))


def _as_number(fraction):
    if fraction.denominator == 1:
        return int(fraction)
    return float(fraction)


def _parse_optional_bound(stream):
    if stream.token.kind != "[":
        return None
    open_token = stream.advance()
    lower = stream.expect("number", "lower time bound").value
    stream.expect(":", "':' in time bound")
    upper = None
    if stream.token.kind == "number":
        upper = stream.advance().value
    stream.expect("]", "closing ']'")
    try:
        return ast.TimeBound(Fraction(lower), None if upper is None else Fraction(upper))
    except ValueError as exc:
        raise ParseError(open_token.position, str(exc)) from None


def validate(expr, options):
    """Check that expr only uses features legal for the monitor options.

    Returns the expression unchanged on success; raises UnsupportedFeature
    or ParseError (for scoping problems) otherwise.
    """
    _check_scopes(expr, frozenset())
    _check_features(expr, options)
    return expr


def _check_scopes(expr, bound):
    if isinstance(expr, (ast.Exists, ast.Forall)):
        clash = set(expr.variables) & bound
        if clash:
            raise ParseError(0, f"variable {sorted(clash)[0]!r} rebound by nested quantifier")
        _check_scopes(expr.operand, bound | set(expr.variables))
        return
    if isinstance(expr, ast.Atomic):
        for constraint in expr.constraints:
            if constraint.kind == "refvar" and constraint.var not in bound:
                raise ParseError(0, f"unbound reference variable {constraint.var!r}")
        return
    for child in ast.children(expr):
        _check_scopes(child, bound)


def _check_features(expr, options):
    dense = options.time_model == "dense"
    robust = options.semantics == "robust"
    if isinstance(expr, ast.Pre) and dense:
        raise UnsupportedFeature("pre in dense time")
    if isinstance(expr, (ast.Exists, ast.Forall)):
        if robust:
            raise UnsupportedFeature("quantifier under robustness")
        if dense:
            raise UnsupportedFeature("quantifier in dense time")
    if isinstance(expr, ast.Atomic):
        for constraint in expr.constraints:
            if constraint.kind == "refvar":
                if robust:
                    raise UnsupportedFeature("reference variable under robustness")
                if dense:
                    raise UnsupportedFeature("reference variable in dense time")
            if constraint.kind == "cmp" and not isinstance(constraint.value, (int, float)):
                raise UnsupportedFeature(
                    f"comparison against non-numeric operand on field {constraint.key!r}")
    bound = getattr(expr, "bound", None)
    if bound is not None and not dense:
        if bound.lower.denominator != 1 or (
                bound.upper is not None and bound.upper.denominator != 1):
            raise UnsupportedFeature("non-integer time bound in discrete time")
    for child in ast.children(expr):
        _check_features(child, options)
