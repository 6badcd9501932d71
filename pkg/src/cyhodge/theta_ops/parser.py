"""Recursive-descent parser for operator expressions.

Grammar (whitespace insignificant)::

    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' uint)?
    base     := rational | 'z' | 'T' | '(' expr ')'
    rational := int ('/' uint)?

``T`` stands for theta = z d/dz.  Products are taken in the operator algebra,
so ``T*z`` is ``z*(T+1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .operator import THETA, ThetaOperator, ore_mul
from .poly import RationalPoly


class OperatorSyntaxError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        pointer = f"\n  {text}\n  {' ' * position}^" if text else ""
        super().__init__(f"{message} at position {position}{pointer}")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "int", "z", "T", or the operator character; "end" at EOF
    value: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(_Tok("int", text[i:j], i))
            i = j
        elif ch in "zT":
            toks.append(_Tok(ch, ch, i))
            i += 1
        elif ch == "θ":
            toks.append(_Tok("T", ch, i))
            i += 1
        elif ch in "+-*^/()":
            toks.append(_Tok(ch, ch, i))
            i += 1
        else:
            raise OperatorSyntaxError(f"unexpected character {ch!r}", i, text)
    toks.append(_Tok("end", "", len(text)))
    return toks


_Elem = dict  # power of z -> RationalPoly in theta


def _const(c: Fraction) -> _Elem:
    return {0: RationalPoly((c,), THETA)} if c else {}


def _add(a: _Elem, b: _Elem, sign: int = 1) -> _Elem:
    out = dict(a)
    for j, q in b.items():
        out[j] = out[j] + q * sign if j in out else q * sign
    return {j: q for j, q in out.items() if not q.is_zero()}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def _error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.tok
        raise OperatorSyntaxError(msg, tok.pos, self.text)

    def _take(self, kind: str) -> _Tok:
        if self.tok.kind != kind:
            found = "end of input" if self.tok.kind == "end" else repr(self.tok.value)
            self._error(f"expected {kind!r}, found {found}")
        t = self.tok
        self.i += 1
        return t

    def parse(self) -> _Elem:
        if self.tok.kind == "end":
            self._error("empty expression")
        e = self.expr()
        if self.tok.kind != "end":
            self._error(f"unexpected {self.tok.value!r}")
        return e

    def expr(self) -> _Elem:
        sign = 1
        if self.tok.kind in ("+", "-"):
            sign = -1 if self.tok.kind == "-" else 1
            self.i += 1
        acc = _add({}, self.term(), sign)
        while self.tok.kind in ("+", "-"):
            sign = -1 if self.tok.kind == "-" else 1
            self.i += 1
            acc = _add(acc, self.term(), sign)
        return acc

    def term(self) -> _Elem:
        acc = self.factor()
        while self.tok.kind in ("*", "/"):
            if self.tok.kind == "/":
                self._error("division is only allowed between integer literals")
            self.i += 1
            acc = ore_mul(acc, self.factor())
        return acc

    def factor(self) -> _Elem:
        base = self.base()
        if self.tok.kind == "^":
            self.i += 1
            if self.tok.kind != "int":
                self._error("exponent must be a non-negative integer literal")
            k = int(self._take("int").value)
            out = _const(Fraction(1))
            for _ in range(k):
                out = ore_mul(out, base)
            return out
        return base

    def base(self) -> _Elem:
        t = self.tok
        if t.kind == "int":
            self.i += 1
            value = Fraction(int(t.value))
            if self.tok.kind == "/":
                slash = self.tok
                self.i += 1
                if self.tok.kind != "int":
                    self._error("division is only allowed between integer literals", slash)
                den = int(self._take("int").value)
                if den == 0:
                    self._error("division by zero", slash)
                value /= den
            return _const(value)
        if t.kind == "z":
            self.i += 1
            return {1: RationalPoly((1,), THETA)}
        if t.kind == "T":
            self.i += 1
            return {0: RationalPoly((0, 1), THETA)}
        if t.kind == "(":
            self.i += 1
            inner = self.expr()
            self._take(")")
            return inner
        if t.kind == "/":
            self._error("division is only allowed between integer literals")
        found = "end of input" if t.kind == "end" else repr(t.value)
        self._error(f"expected a number, 'z', 'T' or '(', found {found}")
        raise AssertionError("unreachable")


def parse_operator(text: str) -> ThetaOperator:
    """Parse an operator expression into normalized form."""
    elem = _Parser(text).parse()
    if not elem:
        raise OperatorSyntaxError("expression is the zero operator", 0, text)
    return ThetaOperator.from_terms(elem)


def format_operator(op: ThetaOperator) -> str:
    return str(op)
