"""Poisson brackets on the quantum torus and the checks built on them.

A bracket is always finite data: a scalar (``Standard``), a table of
generator brackets (``LogCanonical``) or a g-transform (``InnerG``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import (DimensionError, InputError, NotDivisible, NotLocallyStandard,
                     NotLogCanonical, TableIncomplete)
from .inner import GTransform, bracket_from_g, gtransform_from_dict
from .qring import ONE, QScalar, qpow
from .qtorus import (TorusElement, as_matrix, box_window, commutator, degree_window,
                     elem_mul, exact_div)
from .seeds import Seed, enumerate_exchange_graph, frame_monomial


def _unit(m, i):
    return tuple(int(t == i) for t in range(m))


@dataclass(frozen=True)
class Standard:
    """lambda times the commutator."""

    scale: QScalar = ONE

    def bracket(self, a, b, lam):
        return commutator(a, b, lam).scale(self.scale)

    def to_dict(self):
        return {"kind": "standard", "lambda": str(self.scale)}


@dataclass(frozen=True, eq=False)
class LogCanonical:
    """Bracket fixed by {X_i, X_j} = omega_ij X^(e_i+e_j) and the Leibniz rule.

    Inverse generators follow from {a, b b^-1} = 0:
    {a, b^-1} = -b^-1 {a, b} b^-1, and likewise in the first slot.
    Monomial brackets are cached per (e, f, Lambda).
    """

    omega: tuple
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        m = len(self.omega)
        if any(row is None or len(row) != m or any(x is None for x in row) for row in self.omega):
            raise TableIncomplete()
        object.__setattr__(self, "omega",
                           tuple(tuple(QScalar.coerce(x) for x in row) for row in self.omega))

    @property
    def m(self):
        return len(self.omega)

    def is_skew(self):
        m = self.m
        return all(self.omega[i][j] == -self.omega[j][i] for i in range(m) for j in range(m))

    def _gen(self, i, si, j, sj, lam):
        m = self.m
        core = TorusElement.monomial(tuple(a + b for a, b in zip(_unit(m, i), _unit(m, j))),
                                     self.omega[i][j])
        if si > 0 and sj > 0:
            return core
        xi_inv = TorusElement.monomial(tuple(-x for x in _unit(m, i)))
        xj_inv = TorusElement.monomial(tuple(-x for x in _unit(m, j)))
        if si > 0:
            return -elem_mul(elem_mul(xj_inv, core, lam), xj_inv, lam)
        if sj > 0:
            return -elem_mul(elem_mul(xi_inv, core, lam), xi_inv, lam)
        left = elem_mul(xi_inv, xj_inv, lam)
        right = elem_mul(xj_inv, xi_inv, lam)
        return elem_mul(elem_mul(left, core, lam), right, lam)

    def monomial_bracket(self, e, f, lam):
        key = (e, f, lam)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        m = self.m
        if len(e) != m or len(f) != m:
            raise DimensionError(f"table is {m} x {m}, exponents have length {len(e)}, {len(f)}")
        fe = _factors(e)
        ff = _factors(f)
        out = TorusElement.zero(m)
        for a, (i, si) in enumerate(fe):
            for b, (j, sj) in enumerate(ff):
                g = self._gen(i, si, j, sj, lam)
                if g.is_zero():
                    continue
                # Y_<a Z_<b {Y_a, Z_b} Z_>b Y_>a
                t = elem_mul(_prod(fe[:a], m, lam), _prod(ff[:b], m, lam), lam)
                t = elem_mul(t, g, lam)
                t = elem_mul(t, _prod(ff[b + 1:], m, lam), lam)
                t = elem_mul(t, _prod(fe[a + 1:], m, lam), lam)
                out = out + t
        # the factor products differ from X^e, X^f by a normalising power of q
        out = out.scale(qpow(-_order_twist(e, lam) - _order_twist(f, lam)))
        self._cache[key] = out
        return out

    def bracket(self, a, b, lam):
        out = TorusElement.zero(a.m)
        for e, c in a.items():
            for f, d in b.items():
                out = out + self.monomial_bracket(e, f, lam).scale(c * d)
        return out

    def to_dict(self):
        return {"kind": "log-canonical", "omega": [[str(x) for x in row] for row in self.omega]}


def _factors(e):
    # X^e as an ordered word in generators, e.g. (2,-1) -> X1 X1 X2^-1
    out = []
    for i, x in enumerate(e):
        out.extend([(i, 1 if x > 0 else -1)] * abs(x))
    return out


def _prod(factors, m, lam):
    out = TorusElement.one(m)
    for i, s in factors:
        out = elem_mul(out, TorusElement.monomial(tuple(s * x for x in _unit(m, i))), lam)
    return out


def _order_twist(e, lam):
    # ordered product X1^e1 ... Xm^em = q^((1/2) sum_{i<j} e_i e_j lambda_ij) X^e
    m = len(e)
    return sum(e[i] * e[j] * lam[i][j] for i in range(m) for j in range(i + 1, m))


@dataclass(frozen=True)
class InnerG:
    g: GTransform

    def bracket(self, a, b, lam):
        return bracket_from_g(self.g, a, b, lam)

    def to_dict(self):
        return {"kind": "inner", "g": self.g.to_dict()}


def bracket_eval(p, a: TorusElement, b: TorusElement, lam) -> TorusElement:
    lam = as_matrix(lam)
    if a.m != b.m or a.m != len(lam):
        raise DimensionError(f"dimensions {a.m}, {b.m} and Lambda {len(lam)} disagree")
    return p.bracket(a, b, lam)


def standard_table(lam, scale=1) -> LogCanonical:
    """The generator table of scale * [-,-]."""
    return locally_standard_table(lam, [list(range(1, len(lam) + 1))], [scale])


def locally_standard_table(lam, blocks, scales) -> LogCanonical:
    """scales[r] * [-,-] inside block r, zero between blocks and on unlisted indices."""
    lam = as_matrix(lam)
    m = len(lam)
    omega = [[QScalar() for _ in range(m)] for _ in range(m)]
    for block, a in zip(blocks, scales):
        a = QScalar.coerce(a)
        for i in block:
            for j in block:
                if i != j:
                    h = lam[i - 1][j - 1]
                    omega[i - 1][j - 1] = a * (qpow(h) - qpow(-h))
    return LogCanonical(tuple(tuple(r) for r in omega))


def poisson_from_dict(data, m=None):
    kind = data.get("kind") if isinstance(data, dict) else None
    if kind == "standard":
        return Standard(QScalar.parse(str(data.get("lambda", "1"))))
    if kind == "log-canonical":
        rows = data.get("omega")
        if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
            raise TableIncomplete()
        if m is not None and len(rows) != m:
            raise DimensionError(f"omega is {len(rows)} x ?, expected {m} x {m}")
        return LogCanonical(tuple(tuple(None if x is None else QScalar.parse(str(x)) for x in r)
                                  for r in rows))
    if kind == "inner":
        return InnerG(gtransform_from_dict(data.get("g", {}), m))
    raise InputError(f"unknown Poisson kind {kind!r}; expected standard, log-canonical or inner")


# -- axioms ------------------------------------------------------------------


@dataclass
class AxiomReport:
    ok: bool
    condition: str | None = None  # "antisymmetry", "leibniz" or "jacobi"
    witness: tuple | None = None  # exponents (a, b) or (a, b, c)
    checked: int = 0

    def summary(self):
        if self.ok:
            return f"pass ({self.checked} checks)"
        pretty = ", ".join(f"X^({','.join(map(str, e))})" for e in self.witness)
        return f"fail: {self.condition} at ({pretty})"


def verify_poisson_axioms(p, lam, radius: int) -> AxiomReport:
    """Check Leibniz, antisymmetry and Jacobi on monomials of degree <= radius.

    Leibniz runs over ordered triples, Jacobi over unordered ones (its
    cyclic sum is symmetric once antisymmetry has passed).  Witnesses come in
    window order, so the first failure is deterministic.
    """
    lam = as_matrix(lam)
    m = len(lam)
    window = degree_window(m, radius)
    mono = {e: TorusElement.monomial(e) for e in window}
    cache = {}

    def br(e, f):
        key = (e, f)
        if key not in cache:
            cache[key] = p.bracket(mono[e], mono[f], lam)
        return cache[key]

    n = 0
    for e in window:
        for f in window:
            for g in window:
                n += 1
                lhs = p.bracket(mono[e], elem_mul(mono[f], mono[g], lam), lam)
                rhs = elem_mul(br(e, f), mono[g], lam) + elem_mul(mono[f], br(e, g), lam)
                if lhs != rhs:
                    return AxiomReport(False, "leibniz", (e, f, g), n)
    for e in window:
        for f in window:
            n += 1
            if not (br(e, f) + br(f, e)).is_zero():
                return AxiomReport(False, "antisymmetry", (e, f), n)
    for e, f, g in itertools.combinations_with_replacement(window, 3):
        n += 1
        total = (p.bracket(mono[e], br(f, g), lam)
                 + p.bracket(mono[f], br(g, e), lam)
                 + p.bracket(mono[g], br(e, f), lam))
        if not total.is_zero():
            return AxiomReport(False, "jacobi", (e, f, g), n)
    return AxiomReport(True, checked=n)


# -- log-canonical clusters and compatibility --------------------------------


def check_log_canonical(p, frame: Seed, cluster=None):
    """The table omega_ij with {x_i, x_j} = omega_ij X_t^(e_i+e_j), or NotLogCanonical."""
    xs = frame.vars if cluster is None else tuple(cluster)
    m = frame.m
    if len(xs) != m:
        raise DimensionError(f"cluster has {len(xs)} variables, seed has {m}")
    lam0 = frame.lambda0
    table = []
    for i in range(m):
        row = []
        for j in range(m):
            val = p.bracket(xs[i], xs[j], lam0)
            if val.is_zero():
                row.append(QScalar())
                continue
            e = tuple(a + b for a, b in zip(_unit(m, i), _unit(m, j)))
            try:
                quot = exact_div(val, frame_monomial(frame, e), lam0)
            except NotDivisible:
                raise NotLogCanonical(i + 1, j + 1) from None
            if not quot.is_scalar():
                raise NotLogCanonical(i + 1, j + 1, quot)
            row.append(quot.as_scalar())
        table.append(tuple(row))
    return tuple(table)


@dataclass
class CompatibilityReport:
    ok: bool
    depth: int
    clusters_checked: int
    witness: dict | None = None  # seed hash, mutation word, failing pair

    def summary(self):
        head = f"compatible to depth {self.depth}" if self.ok else "not compatible"
        text = f"{head} ({self.clusters_checked} clusters checked; depth-bounded check)"
        if self.witness:
            w = self.witness
            text += (f"\nwitness: seed {w['seed']} word [{','.join(map(str, w['word']))}]"
                     f" pair ({w['pair'][0]},{w['pair'][1]})")
        return text

    def to_dict(self):
        return {"ok": self.ok, "depth": self.depth, "clusters_checked": self.clusters_checked,
                "witness": self.witness, "note": "depth-bounded check, not a proof"}


def check_compatible(p, s: Seed, depth: int) -> CompatibilityReport:
    graph = enumerate_exchange_graph(s, depth)
    for idx, seed in enumerate(graph.seeds):
        try:
            check_log_canonical(p, seed)
        except NotLogCanonical as exc:
            w = {"seed": graph.hashes[idx], "word": list(seed.history), "pair": list(exc.pair)}
            return CompatibilityReport(False, depth, idx + 1, w)
    return CompatibilityReport(True, depth, len(graph.seeds))


# -- locally standard --------------------------------------------------------


def _check_partition(blocks, n):
    flat = sorted(i for b in blocks for i in b)
    if flat != list(range(1, n + 1)):
        raise InputError(f"blocks {blocks} do not partition 1..{n}")


def check_locally_standard(p, blocks, lam, radius: int, n=None):
    """Per-block scalars a_r with {X_i, X_j} = a_r [X_i, X_j], zero across blocks.

    A block with no non-commuting generator pair gets ``None``.  Cross-block
    vanishing is tested on generator pairs, then on window monomials
    supported in two different blocks.
    """
    lam = as_matrix(lam)
    m = len(lam)
    n = m if n is None else n
    blocks = [sorted(b) for b in blocks]
    _check_partition(blocks, n)
    gens = {i: TorusElement.monomial(_unit(m, i - 1)) for i in range(1, m + 1)}
    scalars = []
    for r, block in enumerate(blocks, 1):
        a = None  # (num, den) so fractional scalars can be compared
        for i, j in itertools.permutations(block, 2):
            br = p.bracket(gens[i], gens[j], lam)
            cm = commutator(gens[i], gens[j], lam)
            if cm.is_zero():
                if not br.is_zero():
                    raise NotLocallyStandard(f"inconsistent scalar in block {r}", r, (i, j))
                continue
            ratio = _monomial_ratio(br, cm)
            if ratio is None or (a is not None and ratio[0] * a[1] != a[0] * ratio[1]):
                raise NotLocallyStandard(f"inconsistent scalar in block {r}", r, (i, j))
            a = a or ratio
        scalars.append(None if a is None else _simplify(*a))
    where = {i: r for r, b in enumerate(blocks) for i in b}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if where[i] != where[j] and not p.bracket(gens[i], gens[j], lam).is_zero():
                raise NotLocallyStandard(f"nonzero cross-block bracket ({i},{j})", None, (i, j))
    for r, s in itertools.permutations(range(len(blocks)), 2):
        for e in _block_window(m, blocks[r], radius):
            for f in _block_window(m, blocks[s], radius):
                if not p.bracket(TorusElement.monomial(e), TorusElement.monomial(f), lam).is_zero():
                    x, y = (",".join(map(str, v)) for v in (e, f))
                    raise NotLocallyStandard(
                        f"nonzero cross-block bracket (X^({x}),X^({y}))", None, (e, f))
    return tuple(scalars)


@dataclass(frozen=True, eq=False)
class ScalarRatio:
    """num/den with den not dividing num; the bracket can still be integral,
    e.g. [a, b]/(q^(1/2) - q^(-1/2))."""
    num: QScalar
    den: QScalar

    def __eq__(self, other):
        if isinstance(other, ScalarRatio):
            return self.num * other.den == other.num * self.den
        return self.num == self.den * other

    __hash__ = None

    def __str__(self):
        return f"({self.num})/({self.den})"


def _monomial_ratio(br, cm):
    # both are single monomials for generator pairs; ratio of coefficients
    if br.is_zero():
        return (QScalar(), ONE)
    if len(br) != 1 or len(cm) != 1:
        return None
    (e, t), = br.items()
    (f, c), = cm.items()
    return (t, c) if e == f else None


def _simplify(num, den):
    try:
        return num.divexact(den)
    except NotDivisible:
        return ScalarRatio(num, den)


def _block_window(m, block, radius):
    for sub in box_window(len(block), radius):
        if any(sub):
            e = [0] * m
            for i, x in zip(block, sub):
                e[i - 1] = x
            yield tuple(e)

