"""Parser for exact field-element expressions.

Grammar (whitespace-insensitive):

    expr   := term  (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" INT)?          # nonnegative integer exponents only
    atom   := INT | "t" | "(" expr ")"

"^" binds tighter than unary minus, so -t^2 is -(t^2).  Binary "-" and "/"
associate to the left.  Every error carries the 0-based character offset of
the offending token.
"""

from __future__ import annotations

from .errors import ExprSyntaxError
from .ratfunc import RatFunc, T


class _Tokens:
    def __init__(self, src: str, allow_t: bool):
        self.src = src
        self.pos = 0
        self.allow_t = allow_t

    def _skip_ws(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self._skip_ws()
        if self.pos >= len(self.src):
            return None, self.pos
        return self.src[self.pos], self.pos

    def take(self):
        ch, at = self.peek()
        if ch is not None:
            self.pos += 1
        return ch, at

    def take_int(self):
        ch, at = self.peek()
        if ch is None or not ch.isdigit():
            raise ExprSyntaxError("expected an integer", at)
        end = self.pos
        while end < len(self.src) and self.src[end].isdigit():
            end += 1
        value = int(self.src[self.pos : end])
        self.pos = end
        return value, at


def parse_ratfunc(src: str, allow_t: bool = True) -> RatFunc:
    """Parse an expression into an exact element of Q(t) (or Q if allow_t=False)."""
    toks = _Tokens(src, allow_t)
    value = _expr(toks)
    ch, at = toks.peek()
    if ch is not None:
        raise ExprSyntaxError(f"unexpected {ch!r}", at)
    return value


def _expr(toks: _Tokens) -> RatFunc:
    value = _term(toks)
    while True:
        ch, _at = toks.peek()
        if ch == "+":
            toks.take()
            value = value + _term(toks)
        elif ch == "-":
            toks.take()
            value = value - _term(toks)
        else:
            return value


def _term(toks: _Tokens) -> RatFunc:
    value = _unary(toks)
    while True:
        ch, at = toks.peek()
        if ch == "*":
            toks.take()
            value = value * _unary(toks)
        elif ch == "/":
            toks.take()
            rhs = _unary(toks)
            if rhs.is_zero:
                raise ExprSyntaxError("division by the zero function", at)
            value = value / rhs
        else:
            return value


def _unary(toks: _Tokens) -> RatFunc:
    ch, _at = toks.peek()
    if ch == "-":
        toks.take()
        return -_unary(toks)
    return _power(toks)


def _power(toks: _Tokens) -> RatFunc:
    base = _atom(toks)
    ch, _at = toks.peek()
    if ch == "^":
        toks.take()
        exp, _eat = toks.take_int()
        return base**exp
    return base


def _atom(toks: _Tokens) -> RatFunc:
    ch, at = toks.peek()
    if ch is None:
        raise ExprSyntaxError("unexpected end of input", at)
    if ch.isdigit():
        value, _at = toks.take_int()
        return RatFunc.from_const(value)
    if ch == "t":
        if not toks.allow_t:
            raise ExprSyntaxError("t is not allowed with the p-adic backend", at)
        toks.take()
        return T
    if ch == "(":
        toks.take()
        value = _expr(toks)
        closing, cat = toks.take()
        if closing != ")":
            raise ExprSyntaxError("expected ')'", cat)
        return value
    raise ExprSyntaxError(f"unexpected {ch!r}", at)
