"""Inner Poisson structures on a coefficient-free quantum torus.

An inner bracket is ``{a, b} = [g(a), b]`` for a linear map ``g``.  Here
``g`` is known only on a finite box of monomials (a ``GTransform``); the
membership test, the pattern solver, the generic-vector search and the
classifier all work on that window.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (DimensionError, InputError, LambdaSingular, NotInP,
                     NotStandardShape, OutsideWindow, ScalarMismatch)
from .linalg import inverse
from .qring import QScalar
from .qtorus import (TorusElement, as_matrix, box_window, commutator,
                     graded_order, is_central, is_central_exponent, twist)


@dataclass(frozen=True)
class GTransform:
    """A linear map given by its values on X^e for |e_i| <= radius.

    ``images`` covers the nonzero window exponents; the image of 1 is the
    scalar ``constant``.
    """

    m: int
    radius: int
    images: dict = field(hash=False)
    constant: QScalar = QScalar()

    def __post_init__(self):
        for e in box_window(self.m, self.radius):
            if any(e) and e not in self.images:
                raise InputError(f"g-transform has no image for {e}")
        for e, v in self.images.items():
            if len(e) != self.m or v.m != self.m:
                raise DimensionError(f"image for {e} has the wrong dimension")

    @classmethod
    def from_function(cls, m, radius, fn):
        """Tabulate ``fn(e) -> TorusElement`` over the window; fn(0) must be scalar."""
        images = {}
        const = QScalar()
        for e in box_window(m, radius):
            v = fn(e)
            if any(e):
                images[e] = v
            else:
                const = v.as_scalar() if isinstance(v, TorusElement) else QScalar.coerce(v)
        return cls(m, radius, images, const)

    @classmethod
    def scalar_map(cls, m, radius, k, constants=None):
        """k * id, plus an optional central constant per exponent."""
        k = QScalar.coerce(k)
        constants = constants or {}

        def fn(e):
            v = TorusElement.monomial(e, k) if any(e) else TorusElement.scalar(m, k)
            c = constants.get(e)
            return v + TorusElement.scalar(m, c) if c is not None else v

        return cls.from_function(m, radius, fn)

    def in_window(self, e) -> bool:
        return all(abs(x) <= self.radius for x in e)

    def image(self, e) -> TorusElement:
        e = tuple(e)
        if not any(e):
            return TorusElement.scalar(self.m, self.constant)
        try:
            return self.images[e]
        except KeyError:
            raise OutsideWindow(e) from None

    def __call__(self, a: TorusElement) -> TorusElement:
        out = TorusElement.zero(self.m)
        for e, c in a.items():
            out = out + self.image(e).scale(c)
        return out

    def replace(self, e, value) -> "GTransform":
        e = tuple(e)
        if not any(e):
            return GTransform(self.m, self.radius, dict(self.images), value.as_scalar())
        images = dict(self.images)
        images[e] = value
        return GTransform(self.m, self.radius, images, self.constant)

    def to_dict(self):
        return {
            "radius": self.radius,
            "images": [{"e": list(e), "value": str(v)} for e, v in sorted(self.images.items())],
            "constant": str(self.constant),
        }


def gtransform_from_dict(data, m=None) -> GTransform:
    try:
        radius = int(data["radius"])
        entries = data["images"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"g file needs 'radius' and 'images': {exc}") from None
    images = {}
    const = QScalar.parse(str(data.get("constant", "0")))
    for item in entries:
        e = tuple(int(x) for x in item["e"])
        if m is None:
            m = len(e)
        v = TorusElement.parse(str(item["value"]), len(e))
        if not any(e):
            const = v.as_scalar()
        else:
            images[e] = v
    if m is None:
        raise InputError("cannot infer dimension of an empty g file")
    return GTransform(m, radius, images, const)


# -- membership in P(A) ------------------------------------------------------


@dataclass
class MembershipReport:
    ok: bool
    condition: str | None = None  # "symmetry" or "center"
    pair: tuple | None = None
    pairs_checked: int = 0
    untested: list = field(default_factory=list)

    def summary(self):
        if self.ok:
            return f"pass ({self.pairs_checked} pairs, {len(self.untested)} untested for the center condition)"
        x, y = (",".join(map(str, e)) for e in self.pair)
        return f"{self.condition} condition fails at x=X^({x}), y=X^({y})"


def check_p_membership(g: GTransform, lam) -> MembershipReport:
    """Test [g(x),y] = [x,g(y)] and [g(x),g(y)] - g([g(x),y]) central on the window.

    Pairs run over the window in graded order.  For the center test, pairs
    whose inner value [g(x), y] leaves the window are listed as untested.
    """
    lam = as_matrix(lam)
    if len(lam) != g.m:
        raise DimensionError(f"g has m={g.m}, Lambda is {len(lam)} x {len(lam)}")
    window = graded_order(box_window(g.m, g.radius))
    gx = {e: g.image(e) for e in window}
    mono = {e: TorusElement.monomial(e) for e in window}
    rep = MembershipReport(ok=True)
    for e in window:
        for f in window:
            rep.pairs_checked += 1
            left = commutator(gx[e], mono[f], lam)
            right = commutator(mono[e], gx[f], lam)
            if left != right:
                return MembershipReport(False, "symmetry", (e, f), rep.pairs_checked, rep.untested)
            if any(not g.in_window(x) for x in left.exponents()):
                rep.untested.append((e, f))
                continue
            defect = commutator(gx[e], gx[f], lam) - g(left)
            if not is_central(defect, lam):
                return MembershipReport(False, "center", (e, f), rep.pairs_checked, rep.untested)
    return rep


# -- exponent patterns -------------------------------------------------------


@dataclass(frozen=True)
class PatternSolutionSet:
    h: int
    solutions: tuple  # of (pattern: tuple of 1-based indices, a: exponent tuple)

    def exponents(self):
        return [a for _, a in self.solutions]


def _solve_left(v, inv):
    return tuple(sum(Fraction(v[i]) * inv[i][j] for i in range(len(v))) for j in range(len(inv)))


def pattern_solutions(lam, h: int) -> PatternSolutionSet:
    """Integer a with a Lambda = (row h of Lambda, with some entries zeroed).

    Patterns list the kept positions p (1-based).  Positions where
    lambda_hp = 0 make no difference and are left out of every pattern.
    """
    lam = as_matrix(lam)
    m = len(lam)
    if not 1 <= h <= m:
        raise InputError(f"index h={h} out of range 1..{m}")
    inv = inverse(lam)
    if inv is None:
        raise LambdaSingular()
    row = lam[h - 1]
    support = [p for p in range(m) if row[p]]
    sols = []
    for r in range(len(support) + 1):
        for pattern in itertools.combinations(support, r):
            v = [row[p] if p in pattern else 0 for p in range(m)]
            a = _solve_left(v, inv)
            if all(x.denominator == 1 for x in a):
                sols.append((tuple(p + 1 for p in pattern), tuple(int(x) for x in a)))
    return PatternSolutionSet(h, tuple(sols))


def satisfies_generic_condition(v, lam) -> bool:
    """sum_t v_t lambda_th avoids 0 and every lambda_ih, for each column h."""
    m = len(lam)
    if any(x < 0 for x in v):
        return False
    for h in range(m):
        s = sum(v[t] * lam[t][h] for t in range(m))
        if s == 0 or any(s == lam[i][h] for i in range(m)):
            return False
    return True


def generic_vector(lam):
    """Lexicographically smallest nonnegative vector meeting the generic condition.

    Coordinates are fixed greedily from the left.  A prefix is extendable as
    long as every column form that is already fully determined avoids its
    forbidden values: undetermined forms are nonconstant in a free
    coordinate and can dodge finitely many values by taking it large.
    """
    lam = as_matrix(lam)
    m = len(lam)
    if inverse(lam) is None:
        raise LambdaSingular()
    last = [max(t for t in range(m) if lam[t][h]) for h in range(m)]
    forbidden = [{0} | {lam[i][h] for i in range(m)} for h in range(m)]
    v = []
    for t in range(m):
        x = 0
        while True:
            cand = v + [x]
            ok = True
            for h in range(m):
                if last[h] <= t:
                    s = sum(cand[i] * lam[i][h] for i in range(t + 1))
                    if s in forbidden[h]:
                        ok = False
                        break
            if ok:
                v = cand
                break
            x += 1
    v = tuple(v)
    assert satisfies_generic_condition(v, lam)
    return v


# -- classification ----------------------------------------------------------


@dataclass
class InnerClassification:
    k0: QScalar
    remainder: dict  # exponent -> the scalar g(X^e) - k0 X^e
    normalized: GTransform  # k0 * id with g(1) = 0
    chain: dict  # exponent -> neighbour it was tied to (None for the root)

    @property
    def remainder_is_zero(self):
        return all(not c for c in self.remainder.values())


def classify_inner(g: GTransform, lam, check_membership=True) -> InnerClassification:
    """Show that g is k0 * id up to central terms, and find k0.

    Every window image must look like k_e X^e + c_e.  The k_e of two
    non-commuting monomials agree by the symmetry condition; the classifier
    ties all non-central window monomials together through such pairs and
    reports the first disagreement.  Commuting pairs get linked through a
    common non-commuting partner, which a connected tie-graph supplies.
    """
    lam = as_matrix(lam)
    if len(lam) != g.m:
        raise DimensionError(f"g has m={g.m}, Lambda is {len(lam)} x {len(lam)}")
    if inverse(lam) is None:
        raise LambdaSingular()
    if check_membership:
        rep = check_p_membership(g, lam)
        if not rep.ok:
            raise NotInP(rep)
    m = g.m
    zero = (0,) * m
    window = graded_order(box_window(m, g.radius))
    k, c = {}, {}
    for e in window:
        if e == zero:
            continue
        img = g.image(e)
        extra = [x for x in img.exponents() if x != e and x != zero]
        if extra:
            raise NotStandardShape(e)
        k[e] = img.coeff(e)
        c[e] = img.coeff(zero)
    noncentral = [e for e in window if e != zero and not is_central_exponent(e, lam)]
    if not noncentral:
        raise LambdaSingular()
    root = noncentral[0]
    chain = {root: None}
    frontier = [root]
    while frontier:
        nxt = []
        for e in frontier:
            for f in noncentral:
                if twist(e, f, lam) == twist(f, e, lam):
                    continue
                if k[f] != k[e]:
                    raise ScalarMismatch(e, f, k[e], k[f])
                if f not in chain:
                    chain[f] = e
                    nxt.append(f)
        frontier = nxt
    missing = [e for e in noncentral if e not in chain]
    if missing:
        raise ScalarMismatch(root, missing[0], k[root], k[missing[0]])
    k0 = k[root]
    for e in window:
        if e != zero and is_central_exponent(e, lam) and k[e] != k0:
            # central monomials only exist for degenerate Lambda, excluded above
            raise ScalarMismatch(root, e, k0, k[e])
    c[zero] = g.constant - k0
    normalized = GTransform.scalar_map(m, g.radius, k0).replace(zero, TorusElement.zero(m))
    return InnerClassification(k0, c, normalized, chain)


def bracket_from_g(g: GTransform, a: TorusElement, b: TorusElement, lam) -> TorusElement:
    """The inner bracket {a, b} = [g(a), b]."""
    for e in a.exponents():
        if not g.in_window(e):
            raise OutsideWindow(e)
    return commutator(g(a), b, as_matrix(lam))
