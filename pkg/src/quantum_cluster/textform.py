"""Text forms for scalars and torus elements.

Scalars print as sums of ``c*q^(h/2)`` terms in increasing ``h``, e.g.
``1 - q^(2/2)``.  Torus elements print as ``c*X^(e1,...,em)`` terms in
decreasing lexicographic order of exponents; a constant term prints as the
bare scalar and multi-term coefficients are parenthesised.

The parser accepts a little more than the printer emits: ``q``, ``q^3``,
``q^(-1/2)``, nested parentheses and products of scalar factors.  At most
one ``X^(...)`` factor may appear per term, because a product of two torus
monomials depends on the twisting matrix, which a text form does not carry.
"""

from __future__ import annotations

import re

from .errors import DimensionError, InputError
from .qring import ONE, QScalar

_TOKEN = re.compile(r"\s*(?:(\d+)|(q)|(X)|([()^,/+\-*]))")


def _tokenize(text):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise InputError(f"unexpected character at {pos} in {text!r}")
        num, q, x, sym = m.groups()
        if num is not None:
            out.append(("int", int(num)))
        elif q:
            out.append(("q", None))
        elif x:
            out.append(("X", None))
        else:
            out.append((sym, None))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Parser:
    # Values are dicts {exponent-or-None: QScalar}; None keys the scalar part.

    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, kind=None):
        if self.i >= len(self.toks):
            raise InputError(f"unexpected end of input in {self.text!r}")
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise InputError(f"expected {kind!r}, got {tok[0]!r} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self):
        v = self.expr()
        if self.i != len(self.toks):
            raise InputError(f"trailing input in {self.text!r}")
        return v

    def expr(self):
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        acc = _scale(self.term(), sign)
        while self.peek() in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
            acc = _add(acc, _scale(self.term(), sign))
        return acc

    def term(self):
        acc = self.factor()
        while self.peek() == "*":
            self.take()
            acc = _mul(acc, self.factor(), self.text)
        return acc

    def signed_int(self):
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        return sign * self.take("int")[1]

    def half_exponent(self):
        if self.peek() == "(":
            self.take()
            num = self.signed_int()
            den = 1
            if self.peek() == "/":
                self.take()
                den = self.take("int")[1]
            self.take(")")
        else:
            num, den = self.signed_int(), 1
        if den == 0 or (2 * num) % den:
            raise InputError(f"exponent {num}/{den} is not a half-integer")
        return 2 * num // den

    def factor(self):
        kind = self.peek()
        if kind == "int":
            return {None: QScalar(self.take()[1])}
        if kind == "q":
            self.take()
            h = 2
            if self.peek() == "^":
                self.take()
                h = self.half_exponent()
            return {None: QScalar({h: 1})}
        if kind == "X":
            self.take()
            self.take("^")
            self.take("(")
            e = [self.signed_int()]
            while self.peek() == ",":
                self.take()
                e.append(self.signed_int())
            self.take(")")
            return {tuple(e): ONE}
        if kind == "(":
            self.take()
            v = self.expr()
            self.take(")")
            return v
        if kind == "-":
            self.take()
            return _scale(self.factor(), -1)
        raise InputError(f"unexpected token {kind!r} in {self.text!r}")


def _scale(v, s):
    return {k: c * s for k, c in v.items()}


def _add(a, b):
    out = dict(a)
    for k, c in b.items():
        out[k] = out[k] + c if k in out else c
    return out


def _mul(a, b, text):
    a_scalar = set(a) <= {None}
    b_scalar = set(b) <= {None}
    if a_scalar:
        s = a.get(None, QScalar())
        return {k: c * s for k, c in b.items()}
    if b_scalar:
        s = b.get(None, QScalar())
        return {k: c * s for k, c in a.items()}
    raise InputError(f"product of two torus monomials is ambiguous in {text!r}")


def parse_scalar(text: str) -> QScalar:
    v = _Parser(str(text)).parse()
    if any(k is not None for k, c in v.items() if c):
        raise InputError(f"{text!r} is not a scalar")
    return v.get(None, QScalar())


def parse_element(text: str, m: int | None = None):
    from .qtorus import TorusElement

    v = _Parser(str(text)).parse()
    lengths = {len(k) for k in v if k is not None}
    if m is not None:
        lengths.add(m)
    if len(lengths) > 1:
        raise DimensionError(f"mixed exponent lengths {sorted(lengths)} in {text!r}")
    if not lengths:
        raise DimensionError(f"cannot infer dimension of {text!r}; pass m")
    (dim,) = lengths
    terms = {}
    for k, c in v.items():
        e = (0,) * dim if k is None else k
        terms[e] = terms[e] + c if e in terms else c
    return TorusElement(dim, terms)


def _coeff_text(c: QScalar):
    """(sign, body) for a coefficient in front of X^(...)."""
    t = c.terms
    if len(t) == 1:
        h, v = t[0]
        sign = "-" if v < 0 else "+"
        mag = QScalar({h: abs(v)})
        return sign, ("" if mag == ONE else f"{mag}*")
    return "+", f"({c})*"


def format_element(a) -> str:
    if a.is_zero():
        return "0"
    parts = []
    for e, c in sorted(a.items(), reverse=True):
        if not any(e):
            t = c.terms
            if len(t) == 1 and t[0][1] < 0:
                parts.append(("-", str(-c)))
            elif len(t) == 1:
                parts.append(("+", str(c)))
            else:
                parts.append(("+", f"({c})"))
            continue
        sign, coeff = _coeff_text(c)
        parts.append((sign, f"{coeff}X^({','.join(map(str, e))})"))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def format_matrix(rows) -> str:
    return "[" + ",".join("[" + ",".join(str(x) for x in row) + "]" for row in rows) + "]"
