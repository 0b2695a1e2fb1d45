"""Recursive-descent parser for polynomials and holomorphic vector fields.

Grammar (whitespace ignored, no implicit multiplication)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' uint)?
    atom   := rational | 'i' | 'z1' | 'z2' | 'Z1' | 'Z2' | 'w' | 'u'
            | 'Re(' expr ')' | 'Im(' expr ')' | 'conj(' expr ')' | '(' expr ')'

Fields additionally accept the direction atoms ``d1``, ``d2``, ``dw``; every
term of a field must carry exactly one direction.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .algebra import FIELD_SLOTS, GaussRat, HoloField, MixedPoly
from .errors import AntiholomorphicCoefficient, ParseError

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|(Re|Im|conj)\s*\(|(z1|z2|Z1|Z2|d1|d2|dw|w|u|i)(?![A-Za-z0-9_])|([-+*^()]))")
_DIRECTIONS = {"d1": "f1", "d2": "f2", "dw": "g"}
_VARS = ("z1", "z2", "Z1", "Z2", "w", "u")


def _tokenize(text: str) -> list:
    toks, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", text, start)
        start = m.start() + len(m.group(0)) - len(m.group(0).lstrip())
        if m.group(1):
            toks.append(("num", m.group(1), start))
        elif m.group(2):
            toks.append(("fn", m.group(2), start))
        elif m.group(3):
            toks.append(("name", m.group(3), start))
        else:
            toks.append(("op", m.group(4), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Value:
    """Either a scalar polynomial (``direction`` None) or a single-direction
    field term ``poly * d_slot`` collected per slot."""

    __slots__ = ("parts",)

    def __init__(self, parts: dict):
        self.parts = {k: v for k, v in parts.items() if not v.is_zero()}

    @classmethod
    def scalar(cls, p: MixedPoly) -> "_Value":
        v = cls({})
        v.parts = {None: p}
        return v

    @property
    def is_scalar(self) -> bool:
        return set(self.parts) <= {None}

    def poly(self) -> MixedPoly:
        return self.parts.get(None, MixedPoly.zero())


class _Parser:
    def __init__(self, text: str, allow_fields: bool):
        self.text = text
        self.toks = _tokenize(text)
        self.k = 0
        self.allow_fields = allow_fields

    def peek(self):
        return self.toks[self.k]

    def take(self):
        t = self.toks[self.k]
        self.k += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def expect(self, kind, val=None):
        t = self.peek()
        if t[0] != kind or (val is not None and t[1] != val):
            want = val or kind
            got = t[1] or "end of input"
            self.error(f"expected {want!r}, got {got!r}")
        return self.take()

    def parse(self) -> _Value:
        v = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return v

    def expr(self) -> _Value:
        sign = 1
        if self.peek() == ("op", "-", self.peek()[2]):
            self.take()
            sign = -1
        acc = self._scale(self.term(), sign)
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            acc = self._add(acc, self._scale(rhs, 1 if op == "+" else -1))
        return acc

    def term(self) -> _Value:
        acc = self.factor()
        while self.peek() == ("op", "*", self.peek()[2]):
            tok = self.take()
            acc = self._mul(acc, self.factor(), tok)
        return acc

    def factor(self) -> _Value:
        base = self.atom()
        if self.peek() == ("op", "^", self.peek()[2]):
            tok = self.take()
            n = self.expect("num")
            if "/" in n[1]:
                self.error("exponent must be a nonnegative integer", n)
            if not base.is_scalar:
                self.error("cannot raise a direction to a power", tok)
            return _Value.scalar(base.poly() ** int(n[1]))
        return base

    def atom(self) -> _Value:
        t = self.take()
        kind, val = t[0], t[1]
        if kind == "num":
            return _Value.scalar(MixedPoly.const(Fraction(val)))
        if kind == "name":
            if val == "i":
                return _Value.scalar(MixedPoly.const(GaussRat(0, 1)))
            if val in _DIRECTIONS:
                if not self.allow_fields:
                    self.error(f"direction {val!r} is not allowed in a polynomial", t)
                return _Value({_DIRECTIONS[val]: MixedPoly.const(1)})
            return _Value.scalar(MixedPoly.var(val))
        if kind == "fn":
            inner = self.expr()
            self.expect("op", ")")
            if not inner.is_scalar:
                self.error(f"{val}() of a vector field", t)
            p = inner.poly()
            if p.has_w:
                self.error(f"{val}() of a w-dependent expression", t)
            if val == "Re":
                p = p.re()
            elif val == "Im":
                p = p.im()
            else:
                p = p.conjugate()
            return _Value.scalar(p)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect("op", ")")
            return inner
        self.k -= 1
        self.error(f"unexpected {val or 'end of input'!r}", t)

    # -- value arithmetic --------------------------------------------------
    @staticmethod
    def _scale(v: _Value, s: int) -> _Value:
        return v if s == 1 else _Value({k: -p for k, p in v.parts.items()})

    def _add(self, a: _Value, b: _Value) -> _Value:
        out = dict(a.parts)
        for k, p in b.parts.items():
            out[k] = out.get(k, MixedPoly.zero()) + p
        return _Value(out)

    def _mul(self, a: _Value, b: _Value, tok) -> _Value:
        if a.is_scalar:
            s, f = a.poly(), b
        elif b.is_scalar:
            s, f = b.poly(), a
        else:
            self.error("product of two directions", tok)
        return _Value({k: s * p for k, p in f.parts.items()})


def parse_polynomial(text: str) -> MixedPoly:
    return _Parser(text, allow_fields=False).parse().poly()


def parse_field(text: str) -> HoloField:
    v = _Parser(text, allow_fields=True).parse()
    if v.parts.get(None) is not None and not v.parts[None].is_zero():
        raise ParseError("field has a term without a direction d1, d2 or dw", text, 0)
    coeffs = [v.parts.get(s, MixedPoly.zero()) for s in FIELD_SLOTS]
    for slot, p in zip(FIELD_SLOTS, coeffs):
        if not p.is_holomorphic:
            raise AntiholomorphicCoefficient(f"coefficient of {slot} = {p} is not holomorphic")
    return HoloField(*coeffs)
