"""Integrand expressions: a recursive-descent parser and a precision-generic evaluator.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := ('-' | '+') factor | base ('^' ['-'] integer)?
    base   := number | 'x' | 'pi' | func '(' expr ')' | '(' expr ')'
    func   := sqrt | exp | ln | sin | cos | erf

So ``-x^2`` parses as ``Neg(Pow(Var, 2))``.  Every node remembers the byte
offset it came from; evaluation errors point back at it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import gmpy2

from .precision import DEFAULT_DIGITS, real, working

__all__ = [
    "ExprSyntaxError",
    "DomainError",
    "Num",
    "Var",
    "Pi",
    "Call",
    "Neg",
    "BinOp",
    "Pow",
    "parse",
    "evaluate",
    "compile_expr",
    "is_constant",
    "constant_value",
    "FUNCTIONS",
]

FUNCTIONS = ("sqrt", "exp", "ln", "sin", "cos", "erf")


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, pos: int, source: str = ""):
        self.pos = pos
        self.source = source
        super().__init__(f"{message} at offset {pos}")


class DomainError(ArithmeticError):
    def __init__(self, message: str, pos: int):
        self.pos = pos
        super().__init__(f"{message} (expression offset {pos})")


@dataclass(frozen=True)
class Num:
    text: str
    pos: int = field(default=0, compare=False)

    def __repr__(self):
        return f"Const {self.text}"


@dataclass(frozen=True)
class Var:
    pos: int = field(default=0, compare=False)

    def __repr__(self):
        return "Var"


@dataclass(frozen=True)
class Pi:
    pos: int = field(default=0, compare=False)

    def __repr__(self):
        return "Pi"


@dataclass(frozen=True)
class Call:
    name: str
    arg: object
    pos: int = field(default=0, compare=False)

    def __repr__(self):
        return f"{self.name.capitalize()}({self.arg!r})"


@dataclass(frozen=True)
class Neg:
    arg: object
    pos: int = field(default=0, compare=False)

    def __repr__(self):
        return f"Neg({self.arg!r})"


_OP_NAMES = {"+": "Add", "-": "Sub", "*": "Mul", "/": "Div"}


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object
    pos: int = field(default=0, compare=False)

    def __repr__(self):
        return f"{_OP_NAMES[self.op]}({self.left!r}, {self.right!r})"


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int
    pos: int = field(default=0, compare=False)

    def __repr__(self):
        return f"Pow({self.base!r},{self.exponent})"


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise ExprSyntaxError(f"unexpected character {src[pos]!r}", pos, src)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("end", "", len(src)))
    return out


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, text, pos = self.take()
        if text != value:
            found = "end of input" if kind == "end" else repr(text)
            raise ExprSyntaxError(f"expected {value!r}, found {found}", pos, self.src)

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-"):
            _, op, pos = self.take()
            node = BinOp(op, node, self.term(), pos)
        return node

    def term(self):
        node = self.factor()
        while self.peek()[1] in ("*", "/"):
            _, op, pos = self.take()
            node = BinOp(op, node, self.factor(), pos)
        return node

    def factor(self):
        kind, text, pos = self.peek()
        if text == "-":
            self.take()
            return Neg(self.factor(), pos)
        if text == "+":
            self.take()
            return self.factor()
        node = self.base()
        if self.peek()[1] == "^":
            _, _, ppos = self.take()
            sign = 1
            if self.peek()[1] == "-":
                self.take()
                sign = -1
            kind, text, epos = self.take()
            if kind != "num" or not text.isdigit():
                raise ExprSyntaxError("exponent must be an integer constant", epos, self.src)
            node = Pow(node, sign * int(text), ppos)
        return node

    def base(self):
        kind, text, pos = self.take()
        if kind == "num":
            return Num(text, pos)
        if kind == "name":
            if text == "x":
                return Var(pos)
            if text == "pi":
                return Pi(pos)
            if text in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(text, arg, pos)
            if self.peek()[1] == "(":
                raise ExprSyntaxError(f"unknown function {text!r}", pos, self.src)
            raise ExprSyntaxError(f"unknown name {text!r}", pos, self.src)
        if text == "(":
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if kind == "end" else repr(text)
        raise ExprSyntaxError(f"unexpected {found}", pos, self.src)


def parse(source: str):
    p = _Parser(source)
    node = p.expr()
    kind, text, pos = p.peek()
    if kind != "end":
        raise ExprSyntaxError(f"unexpected {text!r}", pos, source)
    return node


def is_constant(node) -> bool:
    if isinstance(node, Var):
        return False
    if isinstance(node, (Num, Pi)):
        return True
    if isinstance(node, (Call, Neg)):
        return is_constant(node.arg)
    if isinstance(node, Pow):
        return is_constant(node.base)
    return is_constant(node.left) and is_constant(node.right)


def _ev(node, x):
    if isinstance(node, Var):
        return x
    if isinstance(node, Num):
        return real(node.text)
    if isinstance(node, Pi):
        return gmpy2.const_pi()
    if isinstance(node, Neg):
        return -_ev(node.arg, x)
    if isinstance(node, BinOp):
        a, b = _ev(node.left, x), _ev(node.right, x)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if b == 0:
            raise DomainError("division by zero", node.pos)
        return a / b
    if isinstance(node, Pow):
        a = _ev(node.base, x)
        if node.exponent < 0 and a == 0:
            raise DomainError("zero raised to a negative power", node.pos)
        return a**node.exponent
    a = _ev(node.arg, x)
    name = node.name
    if name == "sqrt":
        if a < 0:
            raise DomainError(f"sqrt of negative argument {a}", node.pos)
        return gmpy2.sqrt(a)
    if name == "ln":
        if a <= 0:
            raise DomainError(f"ln of nonpositive argument {a}", node.pos)
        return gmpy2.log(a)
    if name == "exp":
        return gmpy2.exp(a)
    if name == "sin":
        return gmpy2.sin(a)
    if name == "cos":
        return gmpy2.cos(a)
    return gmpy2.erf(a)


def evaluate(ast, x, precision: int = DEFAULT_DIGITS):
    """Value of ``ast`` at ``x`` computed at ``precision`` digits."""
    with working(precision):
        return _ev(ast, real(x))


def compile_expr(ast):
    """A plain callable ``f(x)`` that evaluates at the caller's working precision.

    Used by the panel and composite code, which already run inside a
    precision context.
    """

    def f(x):
        return _ev(ast, x)

    return f


def constant_value(ast, precision: int = DEFAULT_DIGITS):
    if not is_constant(ast):
        raise ValueError("expression depends on x")
    with working(precision):
        return _ev(ast, None)
