"""Small arithmetic expression language for user-supplied potentials U(x).

Grammar (standard precedence, pow right-associative, no implicit
multiplication):

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' unary)?
    atom    := NUMBER | IDENT '(' expr ')' | IDENT | '(' expr ')'

IDENT is one of the functions {sin, cos, tan, cot, sqrt, exp, ln, abs},
a constant {pi, e}, or the variable x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import EvalError, ExpressionSyntaxError, UnknownIdentifier

FUNCTIONS = frozenset({"sin", "cos", "tan", "cot", "sqrt", "exp", "ln", "abs"})
CONSTANTS = {"pi": math.pi, "e": math.e}


@dataclass(frozen=True)
class Number:
    value: float


@dataclass(frozen=True)
class Variable:
    pass


@dataclass(frozen=True)
class Constant:
    name: str


@dataclass(frozen=True)
class Unary:
    op: str  # 'neg' or a function name
    child: "ExprAst"


@dataclass(frozen=True)
class Binary:
    op: str  # one of + - * / ^
    left: "ExprAst"
    right: "ExprAst"


ExprAst = Number | Variable | Constant | Unary | Binary


@dataclass(frozen=True)
class _Token:
    kind: str  # 'num', 'ident', 'op', 'lparen', 'rparen', 'end'
    text: str
    offset: int


def _tokenize(source: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    n = len(source)
    while i < n:
        c = source[i]
        if c.isspace():
            i += 1
            continue
        if c in "+-*/^":
            tokens.append(_Token("op", c, i))
            i += 1
        elif c == "(":
            tokens.append(_Token("lparen", c, i))
            i += 1
        elif c == ")":
            tokens.append(_Token("rparen", c, i))
            i += 1
        elif c.isdigit() or c == ".":
            j = i
            seen_exp = False
            while j < n and (source[j].isdigit() or source[j] == "."
                             or source[j] in "eE"
                             or (seen_exp and source[j] in "+-" and source[j - 1] in "eE")):
                if source[j] in "eE" and j + 1 < n and (source[j + 1].isdigit() or source[j + 1] in "+-"):
                    seen_exp = True
                elif source[j] in "eE":
                    break
                j += 1
            text = source[i:j]
            try:
                float(text)
            except ValueError:
                raise ExpressionSyntaxError(f"malformed number {text!r}", i)
            tokens.append(_Token("num", text, i))
            i = j
        elif c.isalpha() or c == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            tokens.append(_Token("ident", source[i:j], i))
            i = j
        else:
            raise ExpressionSyntaxError(f"unexpected character {c!r}", i)
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ExpressionSyntaxError(f"expected {what}", tok.offset)
        return self.advance()

    def parse_expr(self) -> ExprAst:
        node = self.parse_term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.advance().text
            node = Binary(op, node, self.parse_term())
        return node

    def parse_term(self) -> ExprAst:
        node = self.parse_unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.advance().text
            node = Binary(op, node, self.parse_unary())
        return node

    def parse_unary(self) -> ExprAst:
        if self.peek().kind == "op" and self.peek().text == "-":
            self.advance()
            return Unary("neg", self.parse_unary())
        return self.parse_power()

    def parse_power(self) -> ExprAst:
        base = self.parse_atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.advance()
            # right-associative; exponent may carry its own unary minus
            return Binary("^", base, self.parse_unary())
        return base

    def parse_atom(self) -> ExprAst:
        tok = self.peek()
        if tok.kind == "num":
            self.advance()
            return Number(float(tok.text))
        if tok.kind == "lparen":
            self.advance()
            node = self.parse_expr()
            self.expect("rparen", "')'")
            return node
        if tok.kind == "ident":
            self.advance()
            name = tok.text.lower()
            if name in FUNCTIONS:
                self.expect("lparen", f"'(' after function {name}")
                arg = self.parse_expr()
                self.expect("rparen", "')'")
                return Unary(name, arg)
            if name in CONSTANTS:
                return Constant(name)
            if name == "x":
                return Variable()
            raise UnknownIdentifier(f"unknown identifier {tok.text!r}", tok.offset)
        raise ExpressionSyntaxError("expected a number, identifier or '('", tok.offset)


def parse(source: str) -> ExprAst:
    """Parse an expression in the variable x into an AST.

    Raises ExpressionSyntaxError (with byte offset) on malformed input and
    UnknownIdentifier for names outside the function/constant set.
    """
    if not source.strip():
        raise ExpressionSyntaxError("empty expression", 0)
    parser = _Parser(_tokenize(source))
    node = parser.parse_expr()
    trailing = parser.peek()
    if trailing.kind != "end":
        raise ExpressionSyntaxError(f"unexpected trailing input {trailing.text!r}", trailing.offset)
    return node


def evaluate(ast: ExprAst, x: float) -> float:
    """Evaluate the AST at x. Raises EvalError at poles and domain violations."""
    result = _eval(ast, x)
    if not math.isfinite(result):
        raise EvalError(f"non-finite result at x={x}")
    return result


def _eval(node: ExprAst, x: float) -> float:
    if isinstance(node, Number):
        return node.value
    if isinstance(node, Variable):
        return x
    if isinstance(node, Constant):
        return CONSTANTS[node.name]
    if isinstance(node, Unary):
        v = _eval(node.child, x)
        return _apply_unary(node.op, v, x)
    if isinstance(node, Binary):
        left = _eval(node.left, x)
        right = _eval(node.right, x)
        return _apply_binary(node.op, left, right, x)
    raise TypeError(f"unexpected AST node {node!r}")


def _apply_unary(op: str, v: float, x: float) -> float:
    if op == "neg":
        return -v
    if op == "sin":
        return math.sin(v)
    if op == "cos":
        return math.cos(v)
    if op == "tan":
        out = math.tan(v)
        if not math.isfinite(out):
            raise EvalError(f"tan pole at x={x}")
        return out
    if op == "cot":
        s = math.sin(v)
        if s == 0.0:
            raise EvalError(f"cot pole at x={x}")
        return math.cos(v) / s
    if op == "sqrt":
        if v < 0.0:
            raise EvalError(f"sqrt of negative value {v} at x={x}")
        return math.sqrt(v)
    if op == "exp":
        try:
            return math.exp(v)
        except OverflowError:
            raise EvalError(f"exp overflow at x={x}") from None
    if op == "ln":
        if v <= 0.0:
            raise EvalError(f"ln of non-positive value {v} at x={x}")
        return math.log(v)
    if op == "abs":
        return abs(v)
    raise TypeError(f"unknown unary op {op!r}")


def _apply_binary(op: str, left: float, right: float, x: float) -> float:
    if op == "+":
        return left + right
    if op == "-":
        return left - right
    if op == "*":
        return left * right
    if op == "/":
        if right == 0.0:
            raise EvalError(f"division by zero at x={x}")
        return left / right
    if op == "^":
        try:
            out = left ** right
        except (OverflowError, ZeroDivisionError, ValueError):
            raise EvalError(f"invalid power {left}^{right} at x={x}") from None
        if isinstance(out, complex):
            raise EvalError(f"complex power {left}^{right} at x={x}")
        return out
    raise TypeError(f"unknown binary op {op!r}")
