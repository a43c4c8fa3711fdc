"""Expression language for elements: tokenizer, parser, printer, evaluator.

The grammar covers exact arithmetic over a twisted ground ring and its
extensions:

    expr    :=  term (('+' | '-') term)*
    term    :=  factor (('*' | '/') factor)*
    factor  :=  '-' factor | power
    power   :=  atom ('^' ('-')? integer)?
    atom    :=  integer | coords | name | name '(' expr (',' expr)* ')'
            |   '(' expr ')'
    coords  :=  '[' rational (',' rational)* ']'

Ground elements are written in bracketed coordinates (`[0,1]`), `t` is the
twisted variable, `x` the extension generator (needs a scenario context),
and the heads `sigma`, `embed` and `tau` apply the automorphism, the series
embedding and the evaluation at the series root.  Parsing canonical prints
reproduces the tree, and printing a parse is idempotent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ExprEvalError, ExprSyntaxError
from .extend import ExtensionScenario, TensorElement, ext_tau
from .ground import GroundElement, GroundField
from .laurent import TwistedSeries, embed_fraction
from .skewfrac import SkewFraction

# ---------------------------------------------------------------------- tokens

_SYMBOLS = "+-*/^()[],"


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "name", one of _SYMBOLS, or "end"
    text: str
    column: int  # 1-based


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch in _SYMBOLS:
            tokens.append(Token(ch, ch, pos + 1))
            pos += 1
            continue
        if ch.isdigit():
            start = pos
            while pos < len(text) and text[pos].isdigit():
                pos += 1
            tokens.append(Token("num", text[start:pos], start + 1))
            continue
        if ch.isalpha() or ch == "_":
            start = pos
            while pos < len(text) and (text[pos].isalnum() or text[pos] == "_"):
                pos += 1
            tokens.append(Token("name", text[start:pos], start + 1))
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", pos + 1)
    tokens.append(Token("end", "", len(text) + 1))
    return tokens


# ------------------------------------------------------------------------- AST


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Coords:
    entries: tuple[Fraction, ...]


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class Bin:
    op: str  # + - * /
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Call:
    head: str  # sigma | embed | tau
    args: tuple["Node", ...]


Node = Union[Num, Coords, Var, Neg, Bin, Pow, Call]

_HEADS = ("sigma", "embed", "tau")


class _Parser:
    def __init__(self, tokens: list[Token]) -> None:
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str) -> None:
        tok = self.peek()
        column = tok.column
        if tok.kind == "end" and self.pos > 0:
            # point at the last real token, not at the void after it
            column = self.tokens[self.pos - 1].column
        raise ExprSyntaxError(message, column)

    def expect(self, kind: str) -> Token:
        if self.peek().kind != kind:
            self.fail(f"expected {kind!r}")
        return self.advance()

    def parse(self) -> Node:
        node = self.expr()
        if self.peek().kind != "end":
            self.fail(f"unexpected {self.peek().text!r}")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek().kind in "+-":
            op = self.advance().kind
            node = Bin(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.peek().kind in "*/":
            op = self.advance().kind
            node = Bin(op, node, self.factor())
        return node

    def factor(self) -> Node:
        if self.peek().kind == "-":
            self.advance()
            return Neg(self.factor())
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.peek().kind == "^":
            self.advance()
            sign = 1
            if self.peek().kind == "-":
                self.advance()
                sign = -1
            tok = self.peek()
            if tok.kind != "num":
                self.fail("expected an integer exponent")
            self.advance()
            return Pow(base, sign * int(tok.text))
        return base

    def atom(self) -> Node:
        tok = self.peek()
        if tok.kind == "num":
            self.advance()
            return Num(Fraction(int(tok.text)))
        if tok.kind == "[":
            return self.coords()
        if tok.kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind == "name":
            self.advance()
            if self.peek().kind == "(":
                if tok.text not in _HEADS:
                    raise ExprSyntaxError(
                        f"unknown function {tok.text!r}", tok.column
                    )
                self.advance()
                args = [self.expr()]
                while self.peek().kind == ",":
                    self.advance()
                    args.append(self.expr())
                self.expect(")")
                return Call(tok.text, tuple(args))
            return Var(tok.text)
        self.fail("expected an expression")
        raise AssertionError("unreachable")

    def coords(self) -> Node:
        self.expect("[")
        entries = [self.rational()]
        while self.peek().kind == ",":
            self.advance()
            entries.append(self.rational())
        self.expect("]")
        return Coords(tuple(entries))

    def rational(self) -> Fraction:
        sign = 1
        if self.peek().kind == "-":
            self.advance()
            sign = -1
        tok = self.peek()
        if tok.kind != "num":
            self.fail("expected a rational number")
        self.advance()
        value = Fraction(sign * int(tok.text))
        if self.peek().kind == "/":
            self.advance()
            den = self.peek()
            if den.kind != "num" or int(den.text) == 0:
                self.fail("expected a nonzero denominator")
            self.advance()
            value = value / int(den.text)
        return value


def parse_expr(text: str) -> Node:
    return _Parser(tokenize(text)).parse()


# --------------------------------------------------------------------- printer

# precedence levels: additive 1, multiplicative 2, unary minus 3, power 4
def _print(node: Node, context: int) -> str:
    if isinstance(node, Num):
        out = _rational(node.value)
        need = 2 if node.value.denominator != 1 else 5
    elif isinstance(node, Coords):
        out = "[" + ",".join(_rational(v) for v in node.entries) + "]"
        need = 5
    elif isinstance(node, Var):
        out = node.name
        need = 5
    elif isinstance(node, Call):
        out = f"{node.head}(" + ", ".join(_print(a, 0) for a in node.args) + ")"
        need = 5
    elif isinstance(node, Neg):
        out = "-" + _print(node.operand, 4)
        need = 3
    elif isinstance(node, Pow):
        out = _print(node.base, 5) + "^" + str(node.exponent)
        need = 4
    elif isinstance(node, Bin):
        if node.op in "+-":
            need = 1
            left = _print(node.left, 1)
            right = _print(node.right, 2)
            out = f"{left} {node.op} {right}"
        else:
            need = 2
            left = _print(node.left, 2)
            right = _print(node.right, 3)
            out = f"{left}{node.op}{right}"
    else:
        raise TypeError(f"not an expression node: {node!r}")
    return f"({out})" if need < context else out


def _rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def print_expr(node: Node) -> str:
    return _print(node, 0)


# ------------------------------------------------------------------- evaluator

Value = Union[SkewFraction, TensorElement, TwistedSeries]


@dataclass
class EvalContext:
    """Where names live: a ground field, optionally an extension scenario."""

    field: GroundField
    scenario: ExtensionScenario | None = None
    precision: int = 16


def ground_symbols(field: GroundField) -> dict[str, GroundElement]:
    """Letter names for non-rational basis directions.

    Quaternion algebras use the traditional i, j, k; a quadratic ground
    field names its adjoined generator w, plus the alias i when it squares
    to -1.
    """
    symbols: dict[str, GroundElement] = {}
    if field.dim == 4:
        symbols["i"] = field.basis_element(1)
        symbols["j"] = field.basis_element(2)
        symbols["k"] = field.basis_element(3)
    elif field.dim == 2:
        w = field.basis_element(1)
        symbols["w"] = w
        if w * w == -field.one():
            symbols["i"] = w
    return symbols


def _is_series(value: Value) -> bool:
    return isinstance(value, TwistedSeries)


def _join(a: Value, b: Value, ctx: EvalContext) -> tuple[Value, Value]:
    """Lift a mixed pair to a common kind (fraction < tensor, fraction < series)."""
    if isinstance(a, TensorElement) and _is_series(b):
        raise ExprEvalError("cannot mix extension elements with series")
    if _is_series(a) and isinstance(b, TensorElement):
        raise ExprEvalError("cannot mix extension elements with series")
    if isinstance(a, TensorElement) and isinstance(b, SkewFraction):
        return a, TensorElement.make(a.scenario, [b])
    if isinstance(a, SkewFraction) and isinstance(b, TensorElement):
        return TensorElement.make(b.scenario, [a]), b
    if _is_series(a) and isinstance(b, SkewFraction):
        return a, embed_fraction(b, a.prec)
    if isinstance(a, SkewFraction) and _is_series(b):
        return embed_fraction(a, b.prec), b
    return a, b


def _invert(value: Value) -> Value:
    return value.inv()


def _as_literal_int(node: Node) -> int:
    if isinstance(node, Num) and node.value.denominator == 1:
        return node.value.numerator
    if isinstance(node, Neg):
        return -_as_literal_int(node.operand)
    raise ExprEvalError("expected an integer literal argument")


def evaluate(node: Node, ctx: EvalContext) -> Value:
    """Evaluate to a fraction, an extension element, or a Laurent series."""
    if isinstance(node, Num):
        return SkewFraction.from_rational(ctx.field, node.value)
    if isinstance(node, Coords):
        if len(node.entries) != ctx.field.dim:
            raise ExprEvalError(
                f"{ctx.field.name} needs {ctx.field.dim} coordinates, "
                f"got {len(node.entries)}"
            )
        return SkewFraction.from_ground(ctx.field.element(node.entries))
    if isinstance(node, Var):
        if node.name == "t":
            return SkewFraction.t_power(ctx.field, 1)
        if node.name == "x":
            if ctx.scenario is None:
                raise ExprEvalError("x needs an extension scenario context")
            return TensorElement.x(ctx.scenario)
        symbols = ground_symbols(ctx.field)
        if node.name in symbols:
            return SkewFraction.from_ground(symbols[node.name])
        raise ExprEvalError(f"unknown name {node.name!r}")
    if isinstance(node, Neg):
        return -evaluate(node.operand, ctx)
    if isinstance(node, Pow):
        base = evaluate(node.base, ctx)
        if node.exponent < 0:
            return _invert(base) ** (-node.exponent)
        return base ** node.exponent
    if isinstance(node, Bin):
        a, b = _join(evaluate(node.left, ctx), evaluate(node.right, ctx), ctx)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        return a * _invert(b)
    if isinstance(node, Call):
        return _call(node, ctx)
    raise TypeError(f"not an expression node: {node!r}")


def _call(node: Call, ctx: EvalContext) -> Value:
    head, args = node.head, node.args
    if head == "sigma":
        if len(args) not in (1, 2):
            raise ExprEvalError("sigma takes an element and an optional power")
        power = _as_literal_int(args[1]) if len(args) == 2 else 1
        value = evaluate(args[0], ctx)
        if not isinstance(value, SkewFraction):
            raise ExprEvalError("sigma acts on ground fractions")
        return SkewFraction.make(
            value.num.apply_sigma(power), value.den.apply_sigma(power)
        )
    if head == "embed":
        if len(args) not in (1, 2):
            raise ExprEvalError("embed takes an element and an optional precision")
        precision = _as_literal_int(args[1]) if len(args) == 2 else ctx.precision
        value = evaluate(args[0], ctx)
        if not isinstance(value, SkewFraction):
            raise ExprEvalError("embed acts on ground fractions")
        return embed_fraction(value, precision)
    if head == "tau":
        if len(args) not in (1, 2):
            raise ExprEvalError("tau takes an element and an optional precision")
        precision = _as_literal_int(args[1]) if len(args) == 2 else ctx.precision
        value = evaluate(args[0], ctx)
        if isinstance(value, SkewFraction):
            if ctx.scenario is None:
                return embed_fraction(value, precision)
            value = TensorElement.make(ctx.scenario, [value])
        if not isinstance(value, TensorElement):
            raise ExprEvalError("tau acts on extension elements")
        return ext_tau(value, precision)
    raise ExprEvalError(f"unknown function {head!r}")


def evaluate_text(text: str, ctx: EvalContext) -> Value:
    return evaluate(parse_expr(text), ctx)
