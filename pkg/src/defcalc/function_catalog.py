"""Expression language for user-supplied test functions.

Grammar (EBNF, also published in the README):

    expression = term , { ("+" | "-") , term } ;
    term       = unary , { ("*" | "/") , unary } ;
    unary      = "-" , unary | power ;
    power      = atom , [ "^" , unary ] ;          (* right-associative *)
    atom       = number | "x" | call | "(" , expression , ")" ;
    call       = builtin , "(" , expression , { "," , expression } , ")" ;
    builtin    = "exp" | "ln" | "sin" | "cos" | "sqrt" | "gamma" | "abs" | "pow" ;
    number     = digits , [ "." , [ digits ] ] , [ exponent ]
               | "." , digits , [ exponent ] ;
    exponent   = ( "e" | "E" ) , [ "+" | "-" ] , digits ;

"^" binds tighter than unary minus, so -x^2 parses as -(x^2).  All builtins
take one argument except pow, which takes two.  The single free variable is
x.  Parsed trees are limited to depth 64.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np

from . import special_functions
from .errors import EvaluationError, ParseError, PoleError, UnsupportedDerivative

__all__ = [
    "Number",
    "Var",
    "Neg",
    "BinOp",
    "Call",
    "Expr",
    "BUILTINS",
    "MAX_DEPTH",
    "parse",
    "evaluate",
    "differentiate",
    "to_source",
    "RealFunction",
    "as_real_function",
]

BUILTINS = ("exp", "ln", "sin", "cos", "sqrt", "gamma", "abs", "pow")
MAX_DEPTH = 64


# --- AST -----------------------------------------------------------------


@dataclass(frozen=True)
class Number:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple["Expr", ...]


Expr = Union[Number, Var, Neg, BinOp, Call]


# --- Lexer ---------------------------------------------------------------

_OPERATORS = set("+-*/^(),")


@dataclass(frozen=True)
class _Token:
    kind: str  # "number" | "ident" | "op" | "end"
    text: str
    pos: int


def _tokenize(source: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, n = 0, len(source)
    while i < n:
        c = source[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit() or (c == "." and i + 1 < n and source[i + 1].isdigit()):
            start = i
            while i < n and source[i].isdigit():
                i += 1
            if i < n and source[i] == ".":
                i += 1
                while i < n and source[i].isdigit():
                    i += 1
            if i < n and source[i] in "eE":
                j = i + 1
                if j < n and source[j] in "+-":
                    j += 1
                if j < n and source[j].isdigit():
                    i = j
                    while i < n and source[i].isdigit():
                        i += 1
            tokens.append(_Token("number", source[start:i], start))
            continue
        if c.isalpha() or c == "_":
            start = i
            while i < n and (source[i].isalnum() or source[i] == "_"):
                i += 1
            tokens.append(_Token("ident", source[start:i], start))
            continue
        if c in _OPERATORS:
            tokens.append(_Token("op", c, i))
            i += 1
            continue
        raise ParseError(i, "a number, name, or operator", repr(c))
    tokens.append(_Token("end", "end of input", n))
    return tokens


# --- Parser --------------------------------------------------------------


def _depth(node: Expr) -> int:
    if isinstance(node, (Number, Var)):
        return 1
    if isinstance(node, Neg):
        return 1 + _depth(node.operand)
    if isinstance(node, BinOp):
        return 1 + max(_depth(node.left), _depth(node.right))
    return 1 + max((_depth(a) for a in node.args), default=0)


# Recursion ceiling while parsing: any tree of depth <= MAX_DEPTH needs at
# most ~2 nested productions per level, so this bound only trips on inputs
# that could not yield a legal tree anyway (and keeps the stack shallow).
_NESTING_LIMIT = 2 * MAX_DEPTH + 8


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.i = 0
        self.nesting = 0

    def enter(self):
        self.nesting += 1
        if self.nesting > _NESTING_LIMIT:
            raise ParseError(
                self.peek().pos, f"an expression of depth <= {MAX_DEPTH}", "deeper nesting"
            )

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        if tok.kind != "end":
            self.i += 1
        return tok

    def fail(self, expected: str):
        tok = self.peek()
        found = tok.text if tok.kind != "end" else "end of input"
        raise ParseError(tok.pos, expected, found)

    def guard(self, node: Expr, depth: int, pos: int) -> tuple[Expr, int]:
        if depth > MAX_DEPTH:
            raise ParseError(pos, f"an expression of depth <= {MAX_DEPTH}", "deeper nesting")
        return node, depth

    def expression(self) -> tuple[Expr, int]:
        self.enter()
        try:
            node, depth = self.term()
            while self.peek().kind == "op" and self.peek().text in "+-":
                op = self.advance()
                rhs, rdepth = self.term()
                node, depth = self.guard(BinOp(op.text, node, rhs), max(depth, rdepth) + 1, op.pos)
            return node, depth
        finally:
            self.nesting -= 1

    def term(self) -> tuple[Expr, int]:
        node, depth = self.unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.advance()
            rhs, rdepth = self.unary()
            node, depth = self.guard(BinOp(op.text, node, rhs), max(depth, rdepth) + 1, op.pos)
        return node, depth

    def unary(self) -> tuple[Expr, int]:
        self.enter()
        try:
            tok = self.peek()
            if tok.kind == "op" and tok.text == "-":
                self.advance()
                node, depth = self.unary()
                return self.guard(Neg(node), depth + 1, tok.pos)
            return self.power()
        finally:
            self.nesting -= 1

    def power(self) -> tuple[Expr, int]:
        node, depth = self.atom()
        tok = self.peek()
        if tok.kind == "op" and tok.text == "^":
            self.advance()
            rhs, rdepth = self.unary()  # right-associative exponent
            return self.guard(BinOp("^", node, rhs), max(depth, rdepth) + 1, tok.pos)
        return node, depth

    def atom(self) -> tuple[Expr, int]:
        tok = self.peek()
        if tok.kind == "number":
            self.advance()
            return Number(float(tok.text)), 1
        if tok.kind == "ident":
            self.advance()
            if tok.text == "x":
                return Var(), 1
            if tok.text in BUILTINS:
                return self.call(tok)
            raise ParseError(tok.pos, "x or a builtin function name", tok.text)
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            node, depth = self.expression()
            if not (self.peek().kind == "op" and self.peek().text == ")"):
                self.fail("')'")
            self.advance()
            return node, depth
        self.fail("an operand")

    def call(self, name_tok: _Token) -> tuple[Expr, int]:
        if not (self.peek().kind == "op" and self.peek().text == "("):
            self.fail(f"'(' after {name_tok.text}")
        self.advance()
        args: list[Expr] = []
        depths: list[int] = []
        node, depth = self.expression()
        args.append(node)
        depths.append(depth)
        while self.peek().kind == "op" and self.peek().text == ",":
            self.advance()
            node, depth = self.expression()
            args.append(node)
            depths.append(depth)
        if not (self.peek().kind == "op" and self.peek().text == ")"):
            self.fail("')' or ','")
        closing = self.advance()
        arity = 2 if name_tok.text == "pow" else 1
        if len(args) != arity:
            raise ParseError(
                name_tok.pos,
                f"{name_tok.text} with {arity} argument{'s' if arity > 1 else ''}",
                f"{len(args)} arguments",
            )
        return self.guard(Call(name_tok.text, tuple(args)), max(depths) + 1, closing.pos)


def parse(source: str) -> Expr:
    """Parse an expression in the single free variable x.

    Raises :class:`ParseError` carrying the character position plus
    expected/found token descriptions.
    """
    parser = _Parser(_tokenize(source))
    node, _ = parser.expression()
    if parser.peek().kind != "end":
        parser.fail("end of input")
    return node


# --- Evaluation ----------------------------------------------------------


def _check_finite(value: float, node: Expr, x: float) -> float:
    if not math.isfinite(value):
        raise EvaluationError(f"non-finite result from {to_source(node)} at x = {x}", node, x)
    return value


def evaluate(ast: Expr, x: float) -> float:
    """Evaluate the expression at x.

    Out-of-domain builtin applications and non-finite intermediates raise
    :class:`EvaluationError` rather than propagating inf/nan.
    """
    if isinstance(ast, Number):
        return ast.value
    if isinstance(ast, Var):
        return x
    if isinstance(ast, Neg):
        return -evaluate(ast.operand, x)
    if isinstance(ast, BinOp):
        a = evaluate(ast.left, x)
        b = evaluate(ast.right, x)
        try:
            if ast.op == "+":
                value = a + b
            elif ast.op == "-":
                value = a - b
            elif ast.op == "*":
                value = a * b
            elif ast.op == "/":
                value = a / b
            else:  # ^
                value = math.pow(a, b)
        except (ZeroDivisionError, ValueError, OverflowError) as exc:
            raise EvaluationError(
                f"{to_source(ast)} undefined for arguments ({a}, {b})", ast, (a, b)
            ) from exc
        return _check_finite(value, ast, x)
    # Call
    args = [evaluate(a, x) for a in ast.args]
    u = args[0]
    try:
        if ast.name == "exp":
            value = math.exp(u)
        elif ast.name == "ln":
            value = math.log(u)
        elif ast.name == "sin":
            value = math.sin(u)
        elif ast.name == "cos":
            value = math.cos(u)
        elif ast.name == "sqrt":
            value = math.sqrt(u)
        elif ast.name == "gamma":
            value = special_functions.gamma(u)
        elif ast.name == "abs":
            value = abs(u)
        else:  # pow
            value = math.pow(u, args[1])
    except (ValueError, OverflowError, ZeroDivisionError, PoleError) as exc:
        raise EvaluationError(
            f"{ast.name} undefined for argument {tuple(args)}", ast, tuple(args)
        ) from exc
    return _check_finite(value, ast, x)


# --- Symbolic differentiation --------------------------------------------


def _num(v: float) -> Number:
    return Number(float(v))


def _is_const(node: Expr, value: float | None = None) -> bool:
    return isinstance(node, Number) and (value is None or node.value == value)


def _add(a: Expr, b: Expr) -> Expr:
    if _is_const(a, 0.0):
        return b
    if _is_const(b, 0.0):
        return a
    return BinOp("+", a, b)


def _sub(a: Expr, b: Expr) -> Expr:
    if _is_const(b, 0.0):
        return a
    return BinOp("-", a, b)


def _mul(a: Expr, b: Expr) -> Expr:
    if _is_const(a, 0.0) or _is_const(b, 0.0):
        return _num(0.0)
    if _is_const(a, 1.0):
        return b
    if _is_const(b, 1.0):
        return a
    return BinOp("*", a, b)


def _div(a: Expr, b: Expr) -> Expr:
    if _is_const(a, 0.0):
        return _num(0.0)
    if _is_const(b, 1.0):
        return a
    return BinOp("/", a, b)


def _contains_var(node: Expr) -> bool:
    if isinstance(node, Var):
        return True
    if isinstance(node, Number):
        return False
    if isinstance(node, Neg):
        return _contains_var(node.operand)
    if isinstance(node, BinOp):
        return _contains_var(node.left) or _contains_var(node.right)
    return any(_contains_var(a) for a in node.args)


def differentiate(ast: Expr) -> Expr:
    """Symbolic derivative d/dx as a new expression tree.

    Power with a non-constant exponent is rewritten through exp(b ln a),
    which restricts the domain to a > 0.  gamma and abs are not
    differentiable here and raise :class:`UnsupportedDerivative`.
    """
    if isinstance(ast, Number):
        return _num(0.0)
    if isinstance(ast, Var):
        return _num(1.0)
    if isinstance(ast, Neg):
        d = differentiate(ast.operand)
        return _num(0.0) if _is_const(d, 0.0) else Neg(d)
    if isinstance(ast, BinOp):
        a, b = ast.left, ast.right
        if ast.op == "+":
            return _add(differentiate(a), differentiate(b))
        if ast.op == "-":
            return _sub(differentiate(a), differentiate(b))
        if ast.op == "*":
            return _add(_mul(differentiate(a), b), _mul(a, differentiate(b)))
        if ast.op == "/":
            num = _sub(_mul(differentiate(a), b), _mul(a, differentiate(b)))
            return _div(num, BinOp("^", b, _num(2.0)))
        return _diff_power(a, b)
    if ast.name == "pow":
        return _diff_power(ast.args[0], ast.args[1])
    u = ast.args[0]
    du = differentiate(u)
    if ast.name == "exp":
        return _mul(Call("exp", (u,)), du)
    if ast.name == "ln":
        return _div(du, u)
    if ast.name == "sin":
        return _mul(Call("cos", (u,)), du)
    if ast.name == "cos":
        return _mul(Neg(Call("sin", (u,))), du)
    if ast.name == "sqrt":
        return _div(du, _mul(_num(2.0), Call("sqrt", (u,))))
    raise UnsupportedDerivative(f"{ast.name} is not differentiable in this engine")


def _diff_power(base: Expr, exponent: Expr) -> Expr:
    if not _contains_var(exponent):
        # d(a^c) = c a^(c-1) a'
        if isinstance(exponent, Number):
            cm1: Expr = _num(exponent.value - 1.0)
        else:
            cm1 = _sub(exponent, _num(1.0))
        return _mul(_mul(exponent, BinOp("^", base, cm1)), differentiate(base))
    # a^b = exp(b ln a): d = a^b (b' ln a + b a'/a); requires a > 0
    inner = _add(
        _mul(differentiate(exponent), Call("ln", (base,))),
        _div(_mul(exponent, differentiate(base)), base),
    )
    return _mul(BinOp("^", base, exponent), inner)


# --- Printing ------------------------------------------------------------


def to_source(ast: Expr) -> str:
    """Render a tree as parseable source; parse(to_source(t)) == t structurally
    whenever every number literal in t is non-negative (the parser only builds
    such trees)."""
    if isinstance(ast, Number):
        return repr(ast.value)
    if isinstance(ast, Var):
        return "x"
    if isinstance(ast, Neg):
        return f"(-{to_source(ast.operand)})"
    if isinstance(ast, BinOp):
        return f"({to_source(ast.left)}{ast.op}{to_source(ast.right)})"
    return f"{ast.name}({', '.join(to_source(a) for a in ast.args)})"


# --- RealFunction --------------------------------------------------------


@dataclass(frozen=True)
class RealFunction:
    """An evaluable scalar function of one real variable.

    ``derivative`` is the exact derivative when available (symbolic for
    parsed expressions, caller-supplied for closures); operators fall back to
    a central-difference limit when it is None.
    """

    value: Callable[[float], float]
    derivative: Optional[Callable[[float], float]] = None
    label: str = "f"
    source: Optional[str] = field(default=None, compare=False)

    def __call__(self, x: float) -> float:
        return self.value(x)

    @classmethod
    def from_callable(cls, f: Callable[[float], float], df=None, label: str = "f") -> "RealFunction":
        return cls(value=f, derivative=df, label=label)

    @classmethod
    def from_expression(cls, source: str) -> "RealFunction":
        """Parse ``source`` and attach its symbolic derivative when the tree
        is differentiable (gamma/abs nodes leave derivative = None)."""
        ast = parse(source)
        try:
            dast = differentiate(ast)
        except UnsupportedDerivative:
            dast = None
        derivative = (lambda x: evaluate(dast, x)) if dast is not None else None
        return cls(
            value=lambda x: evaluate(ast, x),
            derivative=derivative,
            label=source,
            source=source,
        )

    @classmethod
    def from_samples(cls, xs, ys, label: str = "samples") -> "RealFunction":
        """Piecewise-linear interpolant of a sampled grid; no derivative."""
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        if xs.ndim != 1 or xs.shape != ys.shape or xs.size < 2:
            raise ValueError("from_samples needs matching 1-d arrays with >= 2 points")
        if not np.all(np.diff(xs) > 0):
            raise ValueError("sample abscissae must be strictly increasing")

        def value(x: float) -> float:
            if x < xs[0] or x > xs[-1]:
                raise EvaluationError(
                    f"x = {x} outside sampled range [{xs[0]}, {xs[-1]}]", None, x
                )
            return float(np.interp(x, xs, ys))

        return cls(value=value, derivative=None, label=label)


def as_real_function(f) -> RealFunction:
    """Coerce a RealFunction, expression string, or plain callable."""
    if isinstance(f, RealFunction):
        return f
    if isinstance(f, str):
        return RealFunction.from_expression(f)
    if callable(f):
        return RealFunction.from_callable(f)
    raise TypeError(f"cannot interpret {f!r} as a real function")
