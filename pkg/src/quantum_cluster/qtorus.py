"""The quantum torus: Lambda-twisted Laurent polynomials in X^e, e in Z^m.

Multiplication is defined on the monomial basis by

    X^e X^f = q^((1/2) e Lambda f^T) X^(e+f)

and extended bilinearly.  Exponent vectors are plain ``tuple[int, ...]`` and
matrices are tuples of row tuples; all functions take the twisting matrix
explicitly so the same element can be read in different tori.

Nothing here requires Lambda to be skew-symmetric: the glued algebras in
``decomp`` reuse the same product with a general integer bilinear form.
"""

from __future__ import annotations

import itertools

from .errors import DimensionError, DivisionByZero, NotDivisible
from .qring import ONE, QScalar


def _vec_mat(e, lam):
    return tuple(sum(e[i] * lam[i][j] for i in range(len(e)) if e[i]) for j in range(len(lam)))


def twist(e, f, lam) -> int:
    """e Lambda f^T, i.e. the q exponent of X^e X^f in half-units."""
    s = 0
    for i, ei in enumerate(e):
        if ei:
            row = lam[i]
            for j, fj in enumerate(f):
                if fj:
                    s += ei * row[j] * fj
    return s


def monomial_mul(e, f, lam):
    """Return ``(twist, e+f)`` with X^e X^f = q^(twist/2) X^(e+f)."""
    if len(e) != len(f) or len(e) != len(lam):
        raise DimensionError(f"dimension mismatch: {len(e)}, {len(f)}, {len(lam)}")
    return twist(e, f, lam), tuple(a + b for a, b in zip(e, f))


class TorusElement:
    """Finite sum of QScalar multiples of X^e; immutable and canonical."""

    __slots__ = ("m", "_t", "_hash")

    def __init__(self, m: int, terms=None):
        self.m = m
        d = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != m:
                raise DimensionError(f"exponent {e} has length {len(e)}, expected {m}")
            c = QScalar.coerce(c)
            if c:
                d[e] = d[e] + c if e in d else c
        self._t = {e: c for e, c in d.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, m, d):
        obj = cls.__new__(cls)
        obj.m = m
        obj._t = d
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, e, coeff=ONE) -> "TorusElement":
        e = tuple(e)
        coeff = QScalar.coerce(coeff)
        return cls._raw(len(e), {e: coeff} if coeff else {})

    @classmethod
    def scalar(cls, m: int, c) -> "TorusElement":
        return cls.monomial((0,) * m, c)

    @classmethod
    def zero(cls, m: int) -> "TorusElement":
        return cls._raw(m, {})

    @classmethod
    def one(cls, m: int) -> "TorusElement":
        return cls.monomial((0,) * m)

    @classmethod
    def parse(cls, text: str, m: int | None = None) -> "TorusElement":
        from .textform import parse_element

        return parse_element(text, m)

    # -- inspection ---------------------------------------------------------

    def items(self):
        return self._t.items()

    def exponents(self):
        return self._t.keys()

    def coeff(self, e) -> QScalar:
        return self._t.get(tuple(e), QScalar())

    def __len__(self):
        return len(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def is_scalar(self) -> bool:
        return all(not any(e) for e in self._t)

    def scalar_part(self) -> QScalar:
        return self._t.get((0,) * self.m, QScalar())

    def as_scalar(self) -> QScalar:
        if not self.is_scalar():
            raise ValueError(f"{self} is not a scalar")
        return self.scalar_part()

    def leading(self):
        """Lexicographically largest ``(exponent, coefficient)``."""
        e = max(self._t)
        return e, self._t[e]

    def specialize(self, half: int = 1):
        """Commutative Laurent polynomial at q^(1/2) = ``half``: {e: value}."""
        out = {}
        for e, c in self._t.items():
            v = c.specialize(half)
            if v:
                out[e] = v
        return out

    def sort_key(self):
        return tuple((e, c.terms) for e, c in sorted(self._t.items(), reverse=True))

    # -- module operations --------------------------------------------------

    def _check(self, other):
        if self.m != other.m:
            raise DimensionError(f"dimension mismatch: {self.m} vs {other.m}")

    def __eq__(self, other):
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self.m == other.m and self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.m, frozenset(self._t.items())))
        return self._hash

    def __neg__(self):
        return TorusElement._raw(self.m, {e: -c for e, c in self._t.items()})

    def __add__(self, other):
        if not isinstance(other, TorusElement):
            return NotImplemented
        self._check(other)
        d = dict(self._t)
        for e, c in other._t.items():
            if e in d:
                v = d[e] + c
                if v:
                    d[e] = v
                else:
                    del d[e]
            else:
                d[e] = c
        return TorusElement._raw(self.m, d)

    def __sub__(self, other):
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "TorusElement":
        c = QScalar.coerce(c)
        if not c:
            return TorusElement.zero(self.m)
        return TorusElement._raw(self.m, {e: v * c for e, v in self._t.items() if v * c})

    def __str__(self):
        from .textform import format_element

        return format_element(self)

    def __repr__(self):
        return f"TorusElement({self.m}, '{self}')"


def elem_mul(a: TorusElement, b: TorusElement, lam) -> TorusElement:
    """Twisted product ``a * b`` in the torus defined by ``lam``."""
    if a.m != b.m or a.m != len(lam):
        raise DimensionError(f"dimension mismatch: {a.m}, {b.m}, {len(lam)}")
    m = a.m
    d = {}
    bt = list(b.items())
    for e, ca in a.items():
        el = _vec_mat(e, lam)
        for f, cb in bt:
            h = 0
            for x, y in zip(el, f):
                if x and y:
                    h += x * y
            g = tuple(x + y for x, y in zip(e, f))
            c = (ca * cb).shift(h)
            if g in d:
                v = d[g] + c
                if v:
                    d[g] = v
                else:
                    del d[g]
            else:
                d[g] = c
    return TorusElement._raw(m, d)


def mul_all(factors, lam) -> TorusElement:
    out = None
    for x in factors:
        out = x if out is None else elem_mul(out, x, lam)
    return out


def commutator(a: TorusElement, b: TorusElement, lam) -> TorusElement:
    """ab - ba."""
    if a.m != b.m or a.m != len(lam):
        raise DimensionError(f"dimension mismatch: {a.m}, {b.m}, {len(lam)}")
    # [X^e, X^f] = (q^(eLf/2) - q^(fLe/2)) X^(e+f); both twists are used so a
    # non-skew form works too
    d = {}
    for e, ca in a.items():
        for f, cb in b.items():
            h1 = twist(e, f, lam)
            h2 = twist(f, e, lam)
            if h1 == h2:
                continue
            cc = ca * cb
            c = cc.shift(h1) - cc.shift(h2)
            g = tuple(x + y for x, y in zip(e, f))
            if g in d:
                v = d[g] + c
                if v:
                    d[g] = v
                else:
                    del d[g]
            elif c:
                d[g] = c
    return TorusElement._raw(a.m, d)


def _box(a: TorusElement):
    lo = [min(e[i] for e in a.exponents()) for i in range(a.m)]
    hi = [max(e[i] for e in a.exponents()) for i in range(a.m)]
    return lo, hi


def exact_div(a: TorusElement, b: TorusElement, lam) -> TorusElement:
    """The unique ``c`` with ``b * c == a`` (left quotient b^-1 a).

    Leading-term elimination in lexicographic order.  The exponents of any
    genuine quotient lie in the coordinate box [min(a) - min(b), max(a) - max(b)],
    which both bounds the loop and detects non-divisibility early.
    """
    if a.m != b.m or a.m != len(lam):
        raise DimensionError(f"dimension mismatch: {a.m}, {b.m}, {len(lam)}")
    if b.is_zero():
        raise DivisionByZero()
    m = a.m
    if a.is_zero():
        return TorusElement.zero(m)
    alo, ahi = _box(a)
    blo, bhi = _box(b)
    lo = [x - y for x, y in zip(alo, blo)]
    hi = [x - y for x, y in zip(ahi, bhi)]
    if any(x > y for x, y in zip(lo, hi)):
        raise NotDivisible()
    beta, bc = b.leading()
    rem = a
    quot = {}
    while not rem.is_zero():
        alpha, rc = rem.leading()
        gamma = tuple(x - y for x, y in zip(alpha, beta))
        if any(g < l or g > h for g, l, h in zip(gamma, lo, hi)):
            raise NotDivisible()
        c = rc.shift(-twist(beta, gamma, lam)).divexact(bc)
        quot[gamma] = c
        rem = rem - elem_mul(b, TorusElement.monomial(gamma, c), lam)
    return TorusElement._raw(m, quot)


def is_central_exponent(e, lam) -> bool:
    return not any(_vec_mat(e, lam))


def box_window(m: int, radius: int):
    """All e in Z^m with |e_i| <= radius, in lexicographic order."""
    r = range(-radius, radius + 1)
    return [tuple(e) for e in itertools.product(r, repeat=m)]


def degree_window(m: int, radius: int):
    """All e in Z^m with sum |e_i| <= radius.

    Ordered by total degree, then descending lexicographically, so the
    generators X^(e_1), X^(e_2), ... come right after the constant.
    """
    out = [e for e in box_window(m, radius) if sum(map(abs, e)) <= radius]
    return sorted(out, key=lambda e: (sum(map(abs, e)), tuple(-x for x in e)))


def graded_order(window):
    return sorted(window, key=lambda e: (sum(map(abs, e)), tuple(-x for x in e)))


def central_exponents(lam, window_radius: int):
    """Exponents e in the box window with e Lambda = 0 (central monomials)."""
    if window_radius < 0:
        raise ValueError("window_radius must be >= 0")
    return [e for e in box_window(len(lam), window_radius) if is_central_exponent(e, lam)]


def is_central(a: TorusElement, lam) -> bool:
    # commuting with X^f acts diagonally on monomials, so an element is
    # central iff each of its monomials is
    return all(is_central_exponent(e, lam) for e in a.exponents())


def check_skew(lam) -> None:
    m = len(lam)
    for row in lam:
        if len(row) != m:
            raise DimensionError("Lambda must be square")
    for i in range(m):
        if lam[i][i] != 0:
            raise DimensionError(f"Lambda not skew-symmetric: diagonal entry {i + 1}")
        for j in range(i + 1, m):
            if lam[i][j] != -lam[j][i]:
                raise DimensionError(f"Lambda not skew-symmetric at ({i + 1},{j + 1})")


def as_matrix(rows):
    return tuple(tuple(int(x) for x in row) for row in rows)
