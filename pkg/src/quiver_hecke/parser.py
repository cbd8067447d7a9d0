"""Parser for the textual element syntax, e.g. ``e(1,2) * tau(1) * x(2)^3``.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := factor ("*" factor)*
    factor := "-" factor | atom ("^" INT)?
    atom   := NUMBER ("/" NUMBER)? | "e(" labels ")" | "tau(" INT ")"
            | "x(" INT ")" | "(" expr ")"

Generator indices are 1-based. ``tau(l)`` and ``x(k)`` without an idempotent
mean the sums over all words of the weight.
"""

import re
from dataclasses import dataclass

from sympy import Rational

from quiver_hecke.cartan import RootVector
from quiver_hecke.errors import ParseError, WeightMismatch
from quiver_hecke.qha import AlgebraElement, KLRAlgebra, multiply

TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>e|tau|x)\s*\("
    r"|(?P<op>[-+*/^(),])|(?P<label>[A-Za-z_][A-Za-z0-9_]*[+\-]?))"
)


@dataclass
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            bad = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), start))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, beta: RootVector, algebra: KLRAlgebra):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0
        self.beta = beta
        self.algebra = algebra

    @property
    def peek(self) -> Token:
        return self.tokens[self.index]

    def take(self, text: str = None, kind: str = None) -> Token:
        tok = self.peek
        if text is not None and tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok.pos)
        if kind is not None and tok.kind != kind:
            raise ParseError(f"expected {kind}, found {tok.text or 'end of input'!r}", tok.pos)
        self.index += 1
        return tok

    def parse(self) -> AlgebraElement:
        value = self.expr()
        if self.peek.kind != "end":
            raise ParseError(f"unexpected {self.peek.text!r}", self.peek.pos)
        return value

    def expr(self) -> AlgebraElement:
        value = self.term()
        while self.peek.text in ("+", "-") and self.peek.kind == "op":
            op = self.take().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> AlgebraElement:
        value = self.factor()
        while self.peek.text == "*":
            self.take("*")
            value = multiply(value, self.factor())
        return value

    def factor(self) -> AlgebraElement:
        if self.peek.text == "-" and self.peek.kind == "op":
            self.take("-")
            return -self.factor()
        base = self.atom()
        if self.peek.text == "^":
            self.take("^")
            exponent = int(self.take(kind="num").text)
            result = self.algebra.unit(self.beta)
            for _ in range(exponent):
                result = multiply(result, base)
            return result
        return base

    def index_arg(self, limit: int) -> int:
        tok = self.take(kind="num")
        value = int(tok.text)
        if not 1 <= value <= limit:
            raise ParseError(f"index {value} outside 1..{limit}", tok.pos)
        self.take(")")
        return value - 1

    def atom(self) -> AlgebraElement:
        tok = self.peek
        n = self.beta.height
        if tok.kind == "num":
            self.take()
            value = Rational(int(tok.text))
            if self.peek.text == "/":
                self.take("/")
                value = value / int(self.take(kind="num").text)
            return self.algebra.unit(self.beta) * self.algebra.domain.from_sympy(value)
        if tok.kind == "name":
            self.take()
            try:
                if tok.text == "e":
                    return self.idempotent(tok)
                if tok.text == "tau":
                    return self.algebra.tau(self.index_arg(n - 1), self.beta)
                return self.algebra.x(self.index_arg(n), self.beta)
            except WeightMismatch as e:
                raise ParseError(str(e), tok.pos) from e
        if tok.text == "(":
            self.take("(")
            value = self.expr()
            self.take(")")
            return value
        raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.pos)

    def idempotent(self, tok: Token) -> AlgebraElement:
        labels, positions = [], []
        while True:
            part = self.take()
            if part.kind not in ("num", "label"):
                raise ParseError(f"bad index label {part.text!r}", part.pos)
            text = part.text
            # labels such as 1+ are tokenized as a number followed by an operator
            if self.peek.text in ("+", "-") and self.tokens[self.index + 1].text in (",", ")"):
                text += self.take().text
            labels.append(text)
            positions.append(part.pos)
            if self.peek.text == ")":
                self.take(")")
                break
            self.take(",")
        for label, pos in zip(labels, positions):
            if label not in self.algebra.datum.index_set:
                raise ParseError(f"unknown index {label!r}", pos)
        if self.algebra.datum.weight_of_word(labels) != self.beta:
            raise ParseError(f"e({','.join(labels)}) does not have the requested weight", tok.pos)
        return self.algebra.e(labels)


def element_from_text(text: str, beta: RootVector, algebra: KLRAlgebra) -> AlgebraElement:
    """
    Parse and normalize an element of R(beta).

    Raises:
        ParseError: on malformed input, with the offending position
    """
    if not text.strip():
        return algebra.unit(beta)
    return _Parser(text, beta, algebra).parse()
