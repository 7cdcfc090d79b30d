"""Exact arithmetic in Z[q^(1/2), q^(-1/2)].

A ``QScalar`` is a Laurent polynomial in ``q^(1/2)`` with integer
coefficients.  Exponents are stored in half-units: the key ``h`` stands for
``q^(h/2)``, so every exponent computation stays in the integers.
"""

from __future__ import annotations

from .errors import DivisionByZero, NotDivisible


class QScalar:
    """Immutable element of Z[q^(+-1/2)], canonical (no zero coefficients).

    >>> a = QScalar({1: 1, -1: -1})
    >>> str(a * QScalar({1: 1, -1: 1}))
    '-q^(-2/2) + q^(2/2)'
    """

    __slots__ = ("_t", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            self._t = {}
        elif isinstance(terms, int):
            self._t = {0: terms} if terms else {}
        else:
            self._t = {int(h): int(c) for h, c in dict(terms).items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, d):
        # d must already be canonical
        obj = cls.__new__(cls)
        obj._t = d
        obj._hash = None
        return obj

    @classmethod
    def coerce(cls, x) -> "QScalar":
        if isinstance(x, QScalar):
            return x
        if isinstance(x, int):
            return cls(x)
        if isinstance(x, str):
            return cls.parse(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to QScalar")

    @classmethod
    def parse(cls, text: str) -> "QScalar":
        from .textform import parse_scalar

        return parse_scalar(text)

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self):
        """Sorted tuple of ``(h, coefficient)`` pairs; the canonical form."""
        return tuple(sorted(self._t.items()))

    def coeff(self, h: int) -> int:
        return self._t.get(h, 0)

    def is_zero(self) -> bool:
        return not self._t

    def is_unit(self) -> bool:
        """True for +-q^(h/2), the units of the ring."""
        return len(self._t) == 1 and abs(next(iter(self._t.values()))) == 1

    def min_h(self) -> int:
        return min(self._t)

    def max_h(self) -> int:
        return max(self._t)

    def specialize(self, half: int = 1):
        """Evaluate at q^(1/2) = ``half`` (integer, or Fraction for negatives)."""
        from fractions import Fraction

        total = 0
        for h, c in self._t.items():
            total += c * (Fraction(half) ** h if h < 0 else half**h)
        return total

    # -- ring operations ----------------------------------------------------

    def __bool__(self):
        return bool(self._t)

    def __eq__(self, other):
        if isinstance(other, int):
            other = QScalar(other)
        if not isinstance(other, QScalar):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def __neg__(self):
        return QScalar._raw({h: -c for h, c in self._t.items()})

    def __add__(self, other):
        if isinstance(other, int):
            other = QScalar(other)
        elif not isinstance(other, QScalar):
            return NotImplemented
        d = dict(self._t)
        for h, c in other._t.items():
            v = d.get(h, 0) + c
            if v:
                d[h] = v
            else:
                d.pop(h, None)
        return QScalar._raw(d)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = QScalar(other)
        elif not isinstance(other, QScalar):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return QScalar._raw({})
            return QScalar._raw({h: c * other for h, c in self._t.items()})
        if not isinstance(other, QScalar):
            return NotImplemented
        a, b = self._t, other._t
        if len(a) == 1:
            (h0, c0), = a.items()
            return QScalar._raw({h0 + h: c0 * c for h, c in b.items()})
        if len(b) == 1:
            (h0, c0), = b.items()
            return QScalar._raw({h0 + h: c0 * c for h, c in a.items()})
        d = {}
        for h1, c1 in a.items():
            for h2, c2 in b.items():
                d[h1 + h2] = d.get(h1 + h2, 0) + c1 * c2
        return QScalar._raw({h: c for h, c in d.items() if c})

    __rmul__ = __mul__

    def shift(self, h: int) -> "QScalar":
        """Multiply by q^(h/2)."""
        if not h:
            return self
        return QScalar._raw({k + h: c for k, c in self._t.items()})

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_unit():
                raise NotDivisible("only units have negative powers")
            (h, c), = self._t.items()
            return QScalar({h * n: c ** (-n)})
        out = QScalar(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divexact(self, other) -> "QScalar":
        """The unique ``c`` with ``other * c == self``; raises if none exists."""
        other = QScalar.coerce(other)
        if other.is_zero():
            raise DivisionByZero()
        if self.is_zero():
            return QScalar()
        lo, hi = self.min_h() - other.min_h(), self.max_h() - other.max_h()
        if lo > hi:
            raise NotDivisible()
        bh = other.max_h()
        bc = other._t[bh]
        rem = dict(self._t)
        quot = {}
        while rem:
            h = max(rem)
            c = rem[h]
            qh = h - bh
            if qh < lo or c % bc:
                raise NotDivisible()
            qc = c // bc
            quot[qh] = qc
            for oh, oc in other._t.items():
                k = oh + qh
                v = rem.get(k, 0) - oc * qc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return QScalar._raw(quot)

    # -- text form ----------------------------------------------------------

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for h, c in sorted(self._t.items()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if h == 0:
                body = str(a)
            elif a == 1:
                body = f"q^({h}/2)"
            else:
                body = f"{a}*q^({h}/2)"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"QScalar('{self}')"


def qpow(h: int) -> QScalar:
    """q^(h/2)."""
    return QScalar._raw({int(h): 1})


def scalar_arith(a, b, op: str) -> QScalar:
    """Dispatch helper mirroring the ring operations by name."""
    a = QScalar.coerce(a)
    if op == "neg":
        return -a
    b = QScalar.coerce(b)
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


ZERO = QScalar()
ONE = QScalar(1)
