"""Character expressions.

A small language for writing characters as products and quotients of
standard functions::

    ETA(a)                eta(a tau), a a positive rational
    THETA(gram, cls)      theta series of a lattice class, e.g. THETA([[6]], 3)
    THETA(gram, cls, u)   the same with Jacobi variable u (a rational vector)
    MINCHAR(u, v, r, s)   Virasoro minimal-model character
    SL2CHAR(k, lam)       affine sl2 character at z = 1; SL2CHAR(k, lam, x) at z = exp(2 pi i x)
    Q(e) or q^e           the monomial q^e

combined with + - * /, integer powers ^, integer or rational literals
(``3``, ``1/2``, ``"5/4"``) and parentheses.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..errors import ExpressionError, TruncationTooShort
from ..lattice import Lattice
from .functions import eta_at, lattice_theta, minimal_char, sl2_char
from .series import QSeries

_TOKEN = re.compile(r"\s*(?:(\d+)|(\"[^\"]*\"|'[^']*')|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str):
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        num, string, name, sym = m.groups()
        if num is not None:
            out.append(("num", Fraction(int(num))))
        elif string is not None:
            try:
                out.append(("num", Fraction(string[1:-1].strip())))
            except ValueError:
                raise ExpressionError(f"bad rational literal {string}") from None
        elif name is not None:
            out.append(("name", name))
        elif sym.strip():
            out.append(("sym", sym))
        pos = m.end()
    out.append(("end", None))
    return out


@dataclass
class Node:
    op: str
    args: tuple


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            raise ExpressionError(f"expected {value or kind} in {self.text!r}, found {tok[1]!r}")
        self.i += 1
        return tok

    def parse(self) -> Node:
        node = self.expr()
        if self.peek()[0] != "end":
            raise ExpressionError(f"trailing input {self.peek()[1]!r} in {self.text!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek() in (("sym", "+"), ("sym", "-")):
            op = self.take()[1]
            node = Node(op, (node, self.term()))
        return node

    def term(self):
        node = self.unary()
        while self.peek() in (("sym", "*"), ("sym", "/")):
            op = self.take()[1]
            node = Node(op, (node, self.unary()))
        return node

    def unary(self):
        if self.peek() == ("sym", "-"):
            self.take()
            return Node("neg", (self.unary(),))
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek() == ("sym", "^"):
            self.take()
            node = Node("^", (node, self.unary()))
        return node

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return Node("num", (val,))
        if kind == "sym" and val == "(":
            self.take()
            node = self.expr()
            self.take("sym", ")")
            return node
        if kind == "sym" and val == "[":
            return Node("list", (self.listlit(),))
        if kind == "name":
            self.take()
            if val == "q":
                return Node("q", ())
            self.take("sym", "(")
            args = []
            if self.peek() != ("sym", ")"):
                args.append(self.expr())
                while self.peek() == ("sym", ","):
                    self.take()
                    args.append(self.expr())
            self.take("sym", ")")
            return Node("call", (val.upper(), tuple(args)))
        raise ExpressionError(f"unexpected {val!r} in {self.text!r}")

    def listlit(self):
        self.take("sym", "[")
        items = []
        while self.peek() != ("sym", "]"):
            if self.peek() == ("sym", "["):
                items.append(self.listlit())
            else:
                sign = -1 if self.peek() == ("sym", "-") else 1
                if sign < 0:
                    self.take()
                items.append(sign * self.take("num")[1])
            if self.peek() == ("sym", ","):
                self.take()
        self.take("sym", "]")
        return items


def parse(text: str) -> Node:
    return _Parser(text).parse()


def _num(x, what: str) -> Fraction:
    if not isinstance(x, Fraction):
        raise ExpressionError(f"{what} must be a number")
    return x


def _int(x, what: str) -> int:
    x = _num(x, what)
    if x.denominator != 1:
        raise ExpressionError(f"{what} must be an integer, got {x}")
    return int(x)


def _eval(node: Node, trunc: Fraction):
    op, args = node.op, node.args
    if op == "num":
        return args[0]
    if op == "list":
        return args[0]
    if op == "q":
        return QSeries.monomial(1, 1, (), Fraction(10**6))
    if op == "neg":
        return -_eval(args[0], trunc)
    if op in "+-*/":
        a, b = _eval(args[0], trunc), _eval(args[1], trunc)
        if op == "+":
            return a + b
        if op == "-":
            return a - b
        if op == "*":
            return a * b
        return a / b
    if op == "^":
        base = args[0]
        expo = _eval(args[1], trunc)
        if base.op == "q":
            return QSeries.monomial(1, _num(expo, "q exponent"), (), Fraction(10**6))
        return _eval(base, trunc) ** _int(expo, "exponent")
    if op == "call":
        name, cargs = args
        vals = [_eval(a, trunc) for a in cargs]
        if name == "ETA" and len(vals) == 1:
            return eta_at(_num(vals[0], "ETA argument"), trunc)
        if name == "Q" and len(vals) == 1:
            return QSeries.monomial(1, _num(vals[0], "Q argument"), (), Fraction(10**6))
        if name == "THETA" and len(vals) in (2, 3):
            lat = Lattice.from_gram(vals[0])
            u = None if len(vals) == 2 else [Fraction(x) for x in vals[2]]
            return lattice_theta(lat, _int(vals[1], "class"), u, trunc)
        if name == "MINCHAR" and len(vals) == 4:
            return minimal_char(*[_int(v, "MINCHAR argument") for v in vals], trunc)
        if name == "SL2CHAR" and len(vals) in (2, 3):
            s = sl2_char(_int(vals[0], "level"), _int(vals[1], "weight"), trunc)
            x = vals[2] if len(vals) == 3 else Fraction(0)
            return s.specialize([_num(x, "SL2CHAR variable")])
        raise ExpressionError(f"unknown function {name} with {len(vals)} arguments")
    raise ExpressionError(f"cannot evaluate node {op}")


def evaluate_expression(text: str, trunc=20, max_pad: int = 6) -> QSeries:
    """Series for a character expression, known at least below q^trunc."""
    trunc = Fraction(trunc)
    node = parse(text)
    for pad in range(1, max_pad + 1):
        val = _eval(node, trunc + pad)
        if isinstance(val, Fraction):
            return QSeries.monomial(val, 0, (), trunc)
        if val.trunc >= trunc:
            return val.truncate(trunc)
    raise TruncationTooShort(f"{text!r}: could not reach q^{trunc} (got q^{val.trunc})")
