"""多项式 / Weyl 元素的 ASCII 读入。

语法：整数或 p/q 系数，变量名，运算符 + - * ^（也接受 **）与括号。
读入器只负责语法，乘法的语义由目标代数决定（Weyl 代数中按给定次序相乘）。
"""

from __future__ import annotations

import re
from typing import Callable, Generic, TypeVar

from sympy import QQ

from core.errors import InputError

T = TypeVar("T")

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def tokenize(text: str) -> list[str]:
    tokens: list[str] = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise InputError(f"unexpected character at {pos} in {text!r}")
        tok = m.group(1) or m.group(2) or m.group(3)
        tokens.append("^" if tok == "**" else tok)
        pos = m.end()
    return tokens


class ExpressionReader(Generic[T]):
    """递归下降读入器；constant / variable 回调把字面量映射到目标代数。"""

    def __init__(self, constant: Callable[[object], T], variable: Callable[[str], T]) -> None:
        self.constant = constant
        self.variable = variable
        self._tokens: list[str] = []
        self._pos = 0
        self._text = ""

    def read(self, text: str) -> T:
        self._text = text
        self._tokens = tokenize(text)
        self._pos = 0
        if not self._tokens:
            raise InputError("empty expression")
        value = self._expr()
        if self._pos != len(self._tokens):
            raise InputError(f"trailing input {self._tokens[self._pos]!r} in {text!r}")
        return value

    def _peek(self) -> str | None:
        return self._tokens[self._pos] if self._pos < len(self._tokens) else None

    def _take(self, expected: str | None = None) -> str:
        tok = self._peek()
        if tok is None or (expected is not None and tok != expected):
            raise InputError(f"expected {expected or 'token'} in {self._text!r}")
        self._pos += 1
        return tok

    def _expr(self) -> T:
        value = self._term()
        while self._peek() in ("+", "-"):
            op = self._take()
            rhs = self._term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def _term(self) -> T:
        value = self._unary()
        while self._peek() in ("*", "/"):
            op = self._take()
            if op == "*":
                value = value * self._unary()
            else:
                den = self._number()
                if den == 0:
                    raise InputError(f"division by zero in {self._text!r}")
                value = value * self.constant(QQ(1, den))
        return value

    def _unary(self) -> T:
        if self._peek() == "-":
            self._take()
            return self.constant(QQ(-1)) * self._unary()
        if self._peek() == "+":
            self._take()
            return self._unary()
        return self._power()

    def _power(self) -> T:
        base = self._atom()
        if self._peek() in ("^", "**"):
            self._take()
            exp = self._number()
            return base ** exp
        return base

    def _number(self) -> int:
        tok = self._take()
        if not tok.isdigit():
            raise InputError(f"expected an integer, got {tok!r} in {self._text!r}")
        return int(tok)

    def _atom(self) -> T:
        tok = self._peek()
        if tok is None:
            raise InputError(f"unexpected end of {self._text!r}")
        if tok == "(":
            self._take()
            value = self._expr()
            self._take(")")
            return value
        if tok.isdigit():
            num = self._number()
            if self._peek() == "/" and self._pos + 1 < len(self._tokens) and self._tokens[self._pos + 1].isdigit():
                self._take()
                den = self._number()
                if den == 0:
                    raise InputError(f"division by zero in {self._text!r}")
                return self.constant(QQ(num, den))
            return self.constant(QQ(num))
        if tok[0].isalpha() or tok[0] == "_":
            self._take()
            return self.variable(tok)
        raise InputError(f"unexpected token {tok!r} in {self._text!r}")


def parse_poly(text: str, ring):
    """在 sympy PolyRing 中读入多项式。"""
    gens = {str(s): g for s, g in zip(ring.symbols, ring.gens)}

    def variable(name: str):
        if name not in gens:
            raise InputError(f"unknown variable {name!r}; ring has {', '.join(gens)}")
        return gens[name]

    return ExpressionReader(lambda c: ring(c), variable).read(text)
