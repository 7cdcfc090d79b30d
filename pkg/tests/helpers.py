"""Independent oracles and hypothesis strategies shared by the test modules.

The oracles deliberately avoid the package's own arithmetic: scalars are
sympy polynomials in t = q^(1/2), torus products are recomputed from the
defining relation, and classical cluster variables come from rational
functions in sympy.
"""

import itertools

import sympy
from hypothesis import strategies as st

from quantum_cluster.qring import QScalar
from quantum_cluster.qtorus import TorusElement

t = sympy.Symbol("t")  # q^(1/2)

A2_LAM = ((0, 1), (-1, 0))
KRON_LAM = ((0, 2), (-2, 0))
LAM3 = ((0, 1, -1), (-1, 0, 2), (1, -2, 0))  # singular 3x3, fine for torus algebra


# -- sympy views -------------------------------------------------------------


def sym_scalar(c: QScalar):
    return sympy.expand(sum(v * t**h for h, v in c.terms))


def scalar_from_sym(expr) -> QScalar:
    expr = sympy.expand(expr)
    if expr == 0:
        return QScalar()
    poly = sympy.Poly(expr * t**200, t)
    return QScalar({int(k[0]) - 200: int(v) for k, v in poly.terms()})


def sym_element(a: TorusElement):
    return {e: sym_scalar(c) for e, c in a.items()}


def oracle_mul(a: TorusElement, b: TorusElement, lam):
    """Product straight from X^e X^f = q^((1/2) e Lambda f) X^(e+f), in sympy."""
    out = {}
    m = len(lam)
    for e, c in sym_element(a).items():
        for f, d in sym_element(b).items():
            h = sum(e[i] * lam[i][j] * f[j] for i in range(m) for j in range(m))
            g = tuple(x + y for x, y in zip(e, f))
            out[g] = sympy.expand(out.get(g, 0) + c * d * t**h)
    return TorusElement(m, {g: scalar_from_sym(v) for g, v in out.items() if v != 0})


# -- Leibniz oracle for generator tables --------------------------------------


def oracle_log_canonical(omega, lam):
    """{X^e, X^f} for the table omega, peeling factors off the right end.

    The library expands both arguments left to right in one pass; this
    recursion splits X^f = q^(-(1/2) f' Lambda u) X^f' X^u with u the last
    unit step and applies the Leibniz rule to each slot separately.
    """
    m = len(lam)
    memo = {}

    def mono(e, c=1):
        return TorusElement.monomial(e, QScalar(c) if isinstance(c, int) else c)

    def mul(a, b):
        return oracle_mul(a, b, lam)

    def unit(i, s):
        return tuple(s if k == i else 0 for k in range(m))

    def last_step(e):
        for i in reversed(range(m)):
            if e[i]:
                s = 1 if e[i] > 0 else -1
                return unit(i, s), tuple(x - (s if k == i else 0) for k, x in enumerate(e))
        return None, e

    def tw(e, f):
        return sum(e[i] * lam[i][j] * f[j] for i in range(m) for j in range(m))

    def gen(u, v):
        # u, v are +-unit vectors
        i = next(k for k in range(m) if u[k])
        j = next(k for k in range(m) if v[k])
        core = mono(tuple(int(k == i) + int(k == j) for k in range(m)), omega[i][j])
        xi, xj = mono(unit(i, -1)), mono(unit(j, -1))
        if u[i] > 0 and v[j] > 0:
            return core
        if u[i] > 0:
            return -mul(mul(xj, core), xj)
        if v[j] > 0:
            return -mul(mul(xi, core), xi)
        return mul(mul(mul(xi, xj), core), mul(xj, xi))

    def br(e, f):
        key = (e, f)
        if key in memo:
            return memo[key]
        if not any(e) or not any(f):
            res = TorusElement.zero(m)
        elif sum(map(abs, f)) > 1:
            u, rest = last_step(f)
            # X^f = q^(-(1/2) rest.Lambda.u) X^rest X^u
            scale = QScalar({-tw(rest, u): 1})
            res = (mul(br(e, rest), mono(u)) + mul(mono(rest), br(e, u))).scale(scale)
        elif sum(map(abs, e)) > 1:
            u, rest = last_step(e)
            scale = QScalar({-tw(rest, u): 1})
            # {a b, c} = a {b, c} + {a, c} b
            res = (mul(mono(rest), br(u, f)) + mul(br(rest, f), mono(u))).scale(scale)
        else:
            res = gen(e, f)
        memo[key] = res
        return res

    return br


# -- classical cluster variables --------------------------------------------


def classical_variables(b, words):
    """Classical cluster variables (q = 1) reached by the given words, via sympy."""
    m, n = len(b), len(b[0])
    xs0 = sympy.symbols(f"x1:{m + 1}")
    found = set()
    for word in words:
        bb = [list(r) for r in b]
        xs = list(xs0)
        for k in word:
            k -= 1
            p = sympy.Integer(1)
            q = sympy.Integer(1)
            for i in range(m):
                if bb[i][k] > 0:
                    p *= xs[i] ** bb[i][k]
                elif bb[i][k] < 0:
                    q *= xs[i] ** (-bb[i][k])
            xs[k] = sympy.cancel((p + q) / xs[k])
            new = [[0] * n for _ in range(m)]
            for i in range(m):
                for j in range(n):
                    if i == k or j == k:
                        new[i][j] = -bb[i][j]
                    else:
                        new[i][j] = bb[i][j] + (abs(bb[i][k]) * bb[k][j] + bb[i][k] * abs(bb[k][j])) // 2
            bb = new
        for x in xs[:n]:
            found.add(sympy.factor(x))
    return found, xs0


def specialize_to_sympy(a: TorusElement, xs):
    out = 0
    for e, c in a.items():
        term = c.specialize(1)
        for x, k in zip(xs, e):
            term *= x**k
        out += term
    return sympy.factor(out)


def all_words(n, max_len):
    for r in range(max_len + 1):
        yield from itertools.product(range(1, n + 1), repeat=r)


# -- strategies --------------------------------------------------------------

small_ints = st.integers(-3, 3)


@st.composite
def scalars(draw, max_terms=3, h_range=4, coeff=5):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        h = draw(st.integers(-h_range, h_range))
        terms[h] = terms.get(h, 0) + draw(st.integers(-coeff, coeff))
    return QScalar(terms)


@st.composite
def nonzero_scalars(draw, **kw):
    c = draw(scalars(**kw))
    return c if c else QScalar(draw(st.sampled_from([1, -1, 2])))


def exponents(m, r=2):
    return st.tuples(*[st.integers(-r, r)] * m)


@st.composite
def elements(draw, m, r=2, max_terms=3):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        terms[draw(exponents(m, r))] = draw(nonzero_scalars(max_terms=2, h_range=2, coeff=3))
    return TorusElement(m, terms)


@st.composite
def nonzero_elements(draw, m, r=2, max_terms=3):
    a = draw(elements(m, r, max_terms))
    return a if not a.is_zero() else TorusElement.monomial(draw(exponents(m, r)))


@st.composite
def skew_matrices(draw, m, r=2):
    lam = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            v = draw(st.integers(-r, r))
            lam[i][j], lam[j][i] = v, -v
    return tuple(tuple(row) for row in lam)
