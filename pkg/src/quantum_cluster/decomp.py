"""Splitting a seed along the connected blocks of its exchange matrix.

Gluing two block tori with an integer matrix Theta gives the twisted
product (a x b)(c x d) = sum k_i l_j q^((1/2) s_j Theta r_i) a X^s_j x X^r_i d,
where b = sum k_i X^r_i and c = sum l_j X^s_j.  On monomials this is the
torus product for the (non-skew) form [[L1, 0], [Theta^T, L2]], which is
how associativity gets tested.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .errors import ClusterError, DimensionError
from .linalg import integer_kernel, rank, transpose
from .qring import qpow
from .qtorus import TorusElement, as_matrix, degree_window, elem_mul, twist
from .seeds import validate_seed

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class BlockPartition:
    blocks: tuple  # 1-based column indices per block, ordered by smallest index
    frozen: tuple  # 1-based frozen rows attached to each block
    warnings: tuple = ()

    def rows(self, r):
        return tuple(self.blocks[r]) + tuple(self.frozen[r])


def find_blocks(b) -> BlockPartition:
    """Connected components of the columns, joined when some principal entry links them.

    Frozen rows go to every block whose columns they touch; a row touching
    several blocks is copied into each, with a warning.
    """
    b = as_matrix(b)
    m = len(b)
    n = len(b[0]) if m else 0
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        for j in range(n):
            if b[i][j] or b[j][i]:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    groups = {}
    for j in range(n):
        groups.setdefault(find(j), []).append(j + 1)
    blocks = sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])
    frozen = [[] for _ in blocks]
    warnings = []
    for i in range(n, m):
        touched = [r for r, blk in enumerate(blocks) if any(b[i][j - 1] for j in blk)]
        if len(touched) > 1:
            msg = f"frozen row {i + 1} touches blocks {[t + 1 for t in touched]}; copied to each"
            log.warning(msg)
            warnings.append(msg)
        elif not touched:
            msg = f"frozen row {i + 1} touches no block; left out"
            log.warning(msg)
            warnings.append(msg)
        for r in touched:
            frozen[r].append(i + 1)
    return BlockPartition(tuple(blocks), tuple(tuple(f) for f in frozen), tuple(warnings))


def restrict(b, lam, part: BlockPartition, r: int):
    """(B_r, Lambda_r) on the rows of block r (0-based r)."""
    rows = part.rows(r)
    cols = part.blocks[r]
    b_r = tuple(tuple(b[i - 1][j - 1] for j in cols) for i in rows)
    lam_r = tuple(tuple(lam[i - 1][j - 1] for j in rows) for i in rows)
    return b_r, lam_r


def theta_space(b1, b2, m1=None, m2=None):
    """Integer basis of {Theta : B1^T Theta = 0, Theta B2 = 0}.

    Every such Theta has columns in ker B1^T and rows in ker B2^T, so the
    outer products of the two kernel bases span the lattice.  ``m1``/``m2``
    give the row counts for blocks with no columns.
    """
    m1 = len(b1) if m1 is None else m1
    m2 = len(b2) if m2 is None else m2
    n1 = len(b1[0]) if b1 and b1[0] else 0
    n2 = len(b2[0]) if b2 and b2[0] else 0
    k1 = integer_kernel(transpose(b1, n1) if n1 else [], m1)
    k2 = integer_kernel(transpose(b2, n2) if n2 else [], m2)
    out = [tuple(tuple(u[i] * v[j] for j in range(m2)) for i in range(m1)) for u in k1 for v in k2]
    expected = (m1 - (rank(b1, n1) if n1 else 0)) * (m2 - (rank(b2, n2) if n2 else 0))
    assert len(out) == expected
    return out


def is_theta(theta, b1, b2) -> bool:
    m1, m2 = len(theta), len(theta[0]) if theta else 0
    n1 = len(b1[0]) if b1 and b1[0] else 0
    n2 = len(b2[0]) if b2 and b2[0] else 0
    left = all(sum(b1[i][k] * theta[i][j] for i in range(m1)) == 0
               for k in range(n1) for j in range(m2))
    right = all(sum(theta[i][j] * b2[j][k] for j in range(m2)) == 0
                for i in range(m1) for k in range(n2))
    return left and right


def tensor(x: TorusElement, y: TorusElement) -> TorusElement:
    """x (block 1) tensor y (block 2) on the concatenated exponent lattice."""
    terms = {}
    for e, c in x.items():
        for f, d in y.items():
            terms[e + f] = c * d
    return TorusElement(x.m + y.m, terms)


def twisted_mul(theta, a, b, c, d, lam1, lam2) -> TorusElement:
    """(a x b)(c x d) in the Theta-glued product of the two block tori."""
    m1, m2 = len(lam1), len(lam2)
    if a.m != m1 or c.m != m1 or b.m != m2 or d.m != m2:
        raise DimensionError("a, c must live in block 1 and b, d in block 2")
    if theta and (len(theta) != m1 or len(theta[0]) != m2):
        raise DimensionError(f"Theta must be {m1} x {m2}")
    out = TorusElement.zero(m1 + m2)
    for r, k in b.items():
        left_b = TorusElement.monomial(r, k)
        bd = elem_mul(left_b, d, lam2)
        for s, l in c.items():
            h = sum(s[i] * theta[i][j] * r[j] for i in range(m1) for j in range(m2)) if theta else 0
            ac = elem_mul(a, TorusElement.monomial(s, l), lam1)
            out = out + tensor(ac, bd).scale(qpow(h))
    return out


def glued_form(lams, thetas=None):
    """Block form with the Lambda_r on the diagonal and Theta_rs^T below it.

    ``thetas`` maps (r, s), r < s (0-based), to the Theta gluing block r to
    block s.  The torus product for this form is the iterated glued product.
    """
    thetas = thetas or {}
    sizes = [len(x) for x in lams]
    off = [sum(sizes[:r]) for r in range(len(sizes))]
    m = sum(sizes)
    f = [[0] * m for _ in range(m)]
    for r, lam in enumerate(lams):
        for i in range(sizes[r]):
            for j in range(sizes[r]):
                f[off[r] + i][off[r] + j] = lam[i][j]
    for (r, s), th in thetas.items():
        for i in range(sizes[r]):
            for j in range(sizes[s]):
                f[off[s] + j][off[r] + i] = th[i][j]
    return tuple(tuple(row) for row in f)


# -- whole-seed report -------------------------------------------------------


@dataclass
class DecompositionReport:
    blocks: list
    frozen: list
    warnings: list
    pair_error: str | None  # None when the full pair validates, else the error text
    block_seeds: list = field(default_factory=list)
    thetas: dict = field(default_factory=dict)
    factorization: dict | None = None

    @property
    def ok(self):
        fact = self.factorization is None or self.factorization["ok"]
        return (self.pair_error is None and fact
                and all(bs["error"] is None for bs in self.block_seeds))

    def to_dict(self):
        return {
            "ok": self.ok,
            "blocks": self.blocks,
            "frozen": self.frozen,
            "warnings": self.warnings,
            "pair_error": self.pair_error,
            "block_seeds": self.block_seeds,
            "theta_bases": {f"{r},{s}": v for (r, s), v in self.thetas.items()},
            "factorization": self.factorization,
        }

    def summary(self):
        lines = [f"blocks = {' '.join('{' + ','.join(map(str, b)) + '}' for b in self.blocks)}"]
        if self.pair_error:
            lines.append(f"full pair: {self.pair_error}")
        for r, bs in enumerate(self.block_seeds, 1):
            if bs["error"]:
                lines.append(f"block {r}: {bs['error']}")
            else:
                lines.append(f"block {r}: D = diag({','.join(map(str, bs['D']))})")
        for (r, s), basis in self.thetas.items():
            lines.append(f"Theta({r},{s}) basis size {len(basis)}" + (" (Theta = O)" if not basis else ""))
        if self.factorization is not None:
            fz = self.factorization
            if fz["ok"]:
                lines.append(f"factorization holds on {fz['pairs']} window pairs")
            else:
                lines.append(f"factorization fails at X^({','.join(map(str, fz['pair'][0]))}),"
                             f" X^({','.join(map(str, fz['pair'][1]))})")
        lines.extend(f"warning: {w}" for w in self.warnings)
        return "\n".join(lines)


def verify_decomposition(b, lam, radius: int = 2) -> DecompositionReport:
    """Split (B, Lambda) into blocks and check each piece and the gluing.

    The full pair is validated but not required to be compatible, so a
    Lambda with cross-block entries still reaches the factorization check.
    For coefficient-free input, the window check compares the torus product
    with the block-wise (Theta = O) product on every monomial pair.
    """
    b, lam = as_matrix(b), as_matrix(lam)
    part = find_blocks(b)
    try:
        validate_seed(b, lam)
        pair_err = None
    except ClusterError as exc:
        pair_err = str(exc)
    rep = DecompositionReport([list(x) for x in part.blocks], [list(x) for x in part.frozen],
                              list(part.warnings), pair_err)
    pieces = []
    for r in range(len(part.blocks)):
        b_r, lam_r = restrict(b, lam, part, r)
        pieces.append(b_r)
        entry = {"rows": list(part.rows(r)), "B": [list(x) for x in b_r],
                 "Lambda": [list(x) for x in lam_r], "D": None, "error": None}
        try:
            entry["D"] = list(validate_seed(b_r, lam_r))
        except ClusterError as exc:
            entry["error"] = f"block restriction not compatible: {exc}"
        rep.block_seeds.append(entry)
    for r in range(len(pieces)):
        for s in range(r + 1, len(pieces)):
            basis = theta_space(pieces[r], pieces[s])
            rep.thetas[(r + 1, s + 1)] = [[list(x) for x in th] for th in basis]
    m, n = len(b), len(b[0])
    if m == n:
        where = {i: r for r, blk in enumerate(part.blocks) for i in blk}
        split = tuple(tuple(lam[i][j] if where[i + 1] == where[j + 1] else 0 for j in range(m))
                      for i in range(m))
        window = degree_window(m, radius)
        count = 0
        rep.factorization = {"ok": True, "pairs": 0, "pair": None}
        for e in window:
            for f in window:
                count += 1
                if twist(e, f, lam) != twist(e, f, split):
                    rep.factorization = {"ok": False, "pairs": count, "pair": [list(e), list(f)]}
                    return rep
        rep.factorization["pairs"] = count
    return rep
