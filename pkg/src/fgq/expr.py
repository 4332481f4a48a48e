"""Word expressions for the command line.

    expr    := factor ("*" factor)*
    factor  := call | "(" expr ")" | "1" | bare
    call    := ("inv" | "comm" | "conj") "(" expr ("," expr)* ")"
             | "pow" "(" expr "," int ")"
    bare    := one or more terms of the word grammar, e.g. ``b^-1 a b a^-1``

A run of letters is a function name only when it is one of the names above
and is followed by ``(``; otherwise each letter is a generator.
"""

from __future__ import annotations

import re

from .word import Word, WordSyntaxError, comm, conj, identity, parse

__all__ = ["evaluate"]

_FUNCS = {"inv": 1, "pow": 2, "comm": 2, "conj": 2}
_NAME = re.compile(r"[a-z]+")
_INT = re.compile(r"[+-]?\d+")


class _Parser:
    def __init__(self, text: str, rank: int):
        self.text = text
        self.rank = rank
        self.pos = 0

    def error(self, message: str, pos: int | None = None):
        raise WordSyntaxError(message, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def call_name(self) -> str | None:
        self.skip()
        m = _NAME.match(self.text, self.pos)
        if not m or m.group(0) not in _FUNCS:
            return None
        after = m.end()
        while after < len(self.text) and self.text[after].isspace():
            after += 1
        if after < len(self.text) and self.text[after] == "(":
            return m.group(0)
        return None

    def parse(self) -> Word:
        value = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return value

    def expr(self) -> Word:
        value = self.factor()
        while self.peek() == "*":
            self.pos += 1
            value = value * self.factor()
        return value

    def factor(self) -> Word:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            value = self.expr()
            self.expect(")")
            return value
        if ch == "1":
            self.pos += 1
            return identity(self.rank)
        name = self.call_name()
        if name is not None:
            return self.call(name)
        if ch == "" or not (ch.isalpha() or ch == "x"):
            self.error("expected a word, a call or '('")
        return self.bare()

    def call(self, name: str) -> Word:
        self.pos = _NAME.match(self.text, self.pos).end()
        self.expect("(")
        args = [self.expr()]
        if name == "pow":
            self.expect(",")
            self.skip()
            m = _INT.match(self.text, self.pos)
            if not m:
                self.error("expected integer exponent")
            self.pos = m.end()
            self.expect(")")
            return args[0] ** int(m.group(0))
        while self.peek() == ",":
            self.pos += 1
            args.append(self.expr())
        self.expect(")")
        if len(args) != _FUNCS[name]:
            self.error(f"{name} takes {_FUNCS[name]} argument(s), got {len(args)}")
        if name == "inv":
            return ~args[0]
        if name == "comm":
            return comm(*args)
        return conj(*args)

    def bare(self) -> Word:
        start = self.pos
        # a bare word runs until an operator, a delimiter or a call
        while True:
            ch = self.peek()
            if ch in ("", "*", ")", ",", "(") or self.call_name() is not None:
                break
            self.pos += 1
        chunk = self.text[start : self.pos]
        try:
            return parse(chunk, self.rank)
        except WordSyntaxError as exc:
            raise WordSyntaxError(exc.message, self.text, start + exc.pos) from None


def evaluate(text: str, rank: int = 2) -> Word:
    return _Parser(text, rank).parse()
