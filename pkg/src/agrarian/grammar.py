"""Tiny expression evaluator behind the scalar text grammar.

The grammar covers everything the printers emit::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' ['-'] INT)?
    atom   := INT | NAME | '(' expr ')'

Evaluation happens directly in a target ring, so ``a*b`` keeps the written
order (left factor first) and ``a/b`` means ``a * b^-1``.
"""

import re

from .errors import ExpressionSyntaxError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def tokenize(text):
    tokens = []
    for match in _TOKEN.finditer(text):
        number, name, other = match.groups()
        if number is not None:
            tokens.append(("int", int(number), match.start(1)))
        elif name is not None:
            tokens.append(("name", name, match.start(2)))
        elif other is not None and not other.isspace():
            if other not in "+-*/^()":
                raise ExpressionSyntaxError(f"unexpected character {other!r} at {match.start(3)}")
            tokens.append(("op", other, match.start(3)))
    return tokens


class _Evaluator:
    def __init__(self, text, names, from_int, one, inverse):
        self.tokens = tokenize(text)
        self.pos = 0
        self.names = names
        self.from_int = from_int
        self.one = one
        self.inverse = inverse
        self.text = text

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None, len(self.text))

    def take(self, op=None):
        kind, value, where = self.peek()
        if kind is None:
            raise ExpressionSyntaxError(f"unexpected end of input in {self.text!r}")
        if op is not None and value != op:
            raise ExpressionSyntaxError(f"expected {op!r} at {where} in {self.text!r}")
        self.pos += 1
        return kind, value, where

    def run(self):
        if not self.tokens:
            raise ExpressionSyntaxError("empty expression")
        value = self.expr()
        if self.pos != len(self.tokens):
            raise ExpressionSyntaxError(f"trailing input at {self.peek()[2]} in {self.text!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            _, op, _ = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            _, op, _ = self.take()
            rhs = self.unary()
            value = value * rhs if op == "*" else value * self.inverse(rhs)
        return value

    def unary(self):
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            negative = False
            if self.peek()[0] == "op" and self.peek()[1] == "-":
                self.take()
                negative = True
            kind, exponent, where = self.take()
            if kind != "int":
                raise ExpressionSyntaxError(f"integer exponent expected at {where}")
            if negative:
                base = self.inverse(base)
            result = self.one
            for _ in range(exponent):
                result = result * base
            return result
        return base

    def atom(self):
        kind, value, where = self.take()
        if kind == "int":
            return self.from_int(value)
        if kind == "name":
            if value not in self.names:
                raise ExpressionSyntaxError(f"unknown symbol {value!r} at {where}")
            return self.names[value]
        if value == "(":
            inner = self.expr()
            self.take(")")
            return inner
        raise ExpressionSyntaxError(f"unexpected {value!r} at {where}")


def evaluate(text, names, from_int, one, inverse):
    """Evaluate ``text`` with symbols from ``names`` using ring operators."""
    return _Evaluator(text, names, from_int, one, inverse).run()


def format_monomial(names, exponents):
    parts = []
    for name, e in zip(names, exponents):
        if e == 1:
            parts.append(name)
        elif e != 0:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def join_terms(terms):
    """Join ``(sign, body)`` pairs into ``a - b + c`` form."""
    if not terms:
        return "0"
    out = []
    for i, (negative, body) in enumerate(terms):
        if i == 0:
            out.append("-" + body if negative else body)
        else:
            out.append((" - " if negative else " + ") + body)
    return "".join(out)


def format_rational(q):
    n, d = int(q.numerator), int(q.denominator)
    return str(n) if d == 1 else f"{n}/{d}"
