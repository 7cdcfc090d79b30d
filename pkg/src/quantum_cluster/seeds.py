"""Quantum seeds: compatible pairs, mutation, and exchange-graph search.

Directions are 1-based (k in 1..n), as are the indices in error messages.
Cluster variables are always stored as Laurent expansions in the initial
torus, multiplied with the initial Lambda; the current Lambda(t) only enters
through normalisation twists of frame monomials.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from collections import deque
from dataclasses import dataclass, field

from .errors import (DimensionError, InputError, NotCompatible,
                     NotSkewSymmetrizable, RankDeficient)
from .linalg import rank
from .qring import qpow
from .qtorus import TorusElement, as_matrix, elem_mul, exact_div, twist
from .textform import format_matrix


def _shape(b):
    m = len(b)
    n = len(b[0]) if m else 0
    if any(len(row) != n for row in b):
        raise DimensionError("exchange matrix rows have unequal length")
    return m, n


def validate_seed(b, lam):
    """Check that (B~, Lambda) is a compatible pair and return D as a tuple.

    B~^T Lambda must equal (D | 0) with D a positive integer diagonal; that
    same D then certifies D B skew-symmetric.
    """
    b, lam = as_matrix(b), as_matrix(lam)
    m, n = _shape(b)
    if n == 0 or n > m:
        raise DimensionError(f"exchange matrix must be m x n with 1 <= n <= m, got {m} x {n}")
    if len(lam) != m or any(len(row) != m for row in lam):
        raise DimensionError(f"Lambda must be {m} x {m}")
    for i in range(m):
        for j in range(m):
            if lam[i][j] != -lam[j][i]:
                raise NotCompatible(f"not compatible: Lambda not skew-symmetric at ({i + 1},{j + 1})")
    if rank(b, n) < n:
        raise RankDeficient("rank deficient: exchange matrix lacks full column rank")
    d = []
    for i in range(n):
        for j in range(m):
            v = sum(b[l][i] * lam[l][j] for l in range(m))
            if i == j:
                if v <= 0:
                    raise NotCompatible(f"not compatible: diagonal entry ({i + 1},{i + 1}) is {v}")
                d.append(v)
            elif v:
                raise NotCompatible(f"not compatible: entry ({i + 1},{j + 1}) of B^T Lambda is {v}")
    for i in range(n):
        for j in range(n):
            if d[i] * b[i][j] != -d[j] * b[j][i]:
                raise NotSkewSymmetrizable(f"not skew-symmetrizable at ({i + 1},{j + 1})")
    return tuple(d)


def _check_k(k, n):
    if not isinstance(k, int) or not 1 <= k <= n:
        raise InputError(f"direction {k} out of range 1..{n}")


def mutate_matrix(b, k):
    b = as_matrix(b)
    m, n = _shape(b)
    _check_k(k, n)
    kk = k - 1
    out = []
    for i in range(m):
        row = []
        for j in range(n):
            if i == kk or j == kk:
                row.append(-b[i][j])
            else:
                bik, bkj = b[i][kk], b[kk][j]
                sgn = (bik > 0) - (bik < 0)
                row.append(b[i][j] + sgn * max(bik * bkj, 0))
        out.append(tuple(row))
    return tuple(out)


def mutate_lambda(lam, b, k):
    lam, b = as_matrix(lam), as_matrix(b)
    m, n = _shape(b)
    _check_k(k, n)
    kk = k - 1
    pos = [max(b[l][kk], 0) for l in range(m)]
    out = [list(row) for row in lam]
    for j in range(m):
        if j == kk:
            continue
        v = -lam[kk][j] + sum(pos[l] * lam[l][j] for l in range(m))
        out[kk][j] = v
        out[j][kk] = -lam[j][kk] + sum(pos[l] * lam[j][l] for l in range(m))
    return tuple(tuple(row) for row in out)


@dataclass(frozen=True)
class Seed:
    B: tuple
    Lambda: tuple
    D: tuple
    vars: tuple
    lambda0: tuple
    history: tuple = ()
    names: tuple | None = field(default=None, compare=False)

    @property
    def m(self):
        return len(self.B)

    @property
    def n(self):
        return len(self.B[0])

    def column(self, k):
        return tuple(row[k - 1] for row in self.B)

    def to_dict(self):
        out = {
            "m": self.m,
            "n": self.n,
            "B": [list(r) for r in self.B],
            "Lambda": [list(r) for r in self.Lambda],
            "D": list(self.D),
            "history": list(self.history),
            "vars": [str(v) for v in self.vars],
        }
        if self.names:
            out["names"] = list(self.names)
        return out


def initial_seed(b, lam, names=None) -> Seed:
    b, lam = as_matrix(b), as_matrix(lam)
    d = validate_seed(b, lam)
    m = len(b)
    xs = tuple(TorusElement.monomial(tuple(int(i == j) for j in range(m))) for i in range(m))
    if names is not None and len(names) != m:
        raise DimensionError(f"expected {m} names, got {len(names)}")
    return Seed(b, lam, d, xs, lam, (), tuple(names) if names else None)


def seed_from_dict(data) -> Seed:
    try:
        b, lam = data["B"], data["Lambda"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"seed file needs 'B' and 'Lambda': {exc}") from None
    b, lam = as_matrix(b), as_matrix(lam)
    m, n = _shape(b)
    if data.get("m", m) != m or data.get("n", n) != n:
        raise DimensionError(f"declared m,n = {data.get('m')},{data.get('n')} but B is {m} x {n}")
    return initial_seed(b, lam, data.get("names"))


def load_seed(path) -> Seed:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read seed file {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return seed_from_dict(data)


def _power(x, k, lam0):
    out = TorusElement.one(x.m)
    for _ in range(k):
        out = elem_mul(out, x, lam0)
    return out


def _nonneg_frame(s: Seed, e):
    # X_t^e for e >= 0: ordered product times q^(-(1/2) sum_{i<j} e_i e_j lambda_ij(t))
    m = s.m
    out = TorusElement.one(m)
    for i in range(m):
        if e[i]:
            out = elem_mul(out, _power(s.vars[i], e[i], s.lambda0), s.lambda0)
    h = 0
    for i in range(m):
        for j in range(i + 1, m):
            h += e[i] * e[j] * s.Lambda[i][j]
    return out.scale(qpow(-h))


def frame_monomial(s: Seed, e) -> TorusElement:
    """Laurent expansion in the initial torus of the normalised monomial X_t^e.

    Negative parts are removed by exact division, which raises
    ``NotDivisible`` when the monomial is not a Laurent polynomial in the
    initial cluster.
    """
    e = tuple(e)
    if len(e) != s.m:
        raise DimensionError(f"exponent has length {len(e)}, expected {s.m}")
    ep = tuple(max(x, 0) for x in e)
    em = tuple(max(-x, 0) for x in e)
    top = _nonneg_frame(s, ep)
    if not any(em):
        return top
    bottom = _nonneg_frame(s, em)
    # X^e = q^((1/2) e- Lambda e+^T) (X^e-)^-1 X^e+
    return exact_div(top, bottom, s.lambda0).scale(qpow(twist(em, ep, s.Lambda)))


def exchange_numerator(s: Seed, k):
    """X_k * mu_k(X_k): the two frame monomials with X_k^-1 pulled out.

    Each term X_t^(-e_k + v) equals q^((1/2) e_k Lambda v^T) X_k^-1 X_t^v,
    so the new variable is a single left division of this sum by X_k.
    """
    col = s.column(k)
    ek = tuple(int(i == k - 1) for i in range(s.m))
    total = TorusElement.zero(s.m)
    for v in (tuple(max(x, 0) for x in col), tuple(max(-x, 0) for x in col)):
        total = total + _nonneg_frame(s, v).scale(qpow(twist(ek, v, s.Lambda)))
    return total


def mutate_seed(s: Seed, k: int) -> Seed:
    _check_k(k, s.n)
    new_var = exact_div(exchange_numerator(s, k), s.vars[k - 1], s.lambda0)
    xs = list(s.vars)
    xs[k - 1] = new_var
    hist = s.history[:-1] if s.history and s.history[-1] == k else s.history + (k,)
    return Seed(
        mutate_matrix(s.B, k),
        mutate_lambda(s.Lambda, s.B, k),
        s.D,
        tuple(xs),
        s.lambda0,
        hist,
        s.names,
    )


def mutate_word(s: Seed, word) -> Seed:
    for k in word:
        s = mutate_seed(s, k)
    return s


def parse_word(text: str):
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"bad mutation word {text!r}; expected e.g. 1,2,1") from None


# -- exchange graph ----------------------------------------------------------


def canonical_key(s: Seed):
    """Minimal form of the seed over simultaneous permutations of 1..n."""
    m, n = s.m, s.n
    best = None
    for sigma in itertools.permutations(range(n)):
        p = tuple(sigma) + tuple(range(n, m))
        key = (
            tuple(s.vars[p[i]].sort_key() for i in range(m)),
            tuple(tuple(s.B[p[i]][sigma[j]] for j in range(n)) for i in range(m)),
            tuple(tuple(s.Lambda[p[i]][p[j]] for j in range(m)) for i in range(m)),
        )
        if best is None or key < best:
            best = key
    return best


def seed_hash(key) -> str:
    return hashlib.sha256(repr(key).encode()).hexdigest()[:12]


@dataclass
class ExchangeGraph:
    seeds: list
    hashes: list
    depths: list
    arcs: dict  # node -> list of (direction, node)

    @property
    def edges(self):
        """Undirected edges as sorted ``(i, j)`` node pairs (i < j, loops kept)."""
        out = set()
        for a, nbrs in self.arcs.items():
            for _, b in nbrs:
                out.add((min(a, b), max(a, b)))
        return sorted(out)

    def neighbours(self, i):
        return sorted({b for _, b in self.arcs.get(i, [])})

    def cluster_variables(self):
        """Distinct mutable cluster variables over all nodes, sorted."""
        seen = {}
        for s in self.seeds:
            for v in s.vars[: s.n]:
                seen.setdefault(v, None)
        return sorted(seen, key=lambda v: v.sort_key())

    def is_cycle(self) -> bool:
        k = len(self.seeds)
        if k < 3 or len(self.edges) != k:
            return False
        if any(len(self.neighbours(i)) != 2 for i in range(k)):
            return False
        return _connected(k, self.edges)

    def is_path(self) -> bool:
        k = len(self.seeds)
        if len(self.edges) != k - 1 or not _connected(k, self.edges):
            return False
        return all(len(self.neighbours(i)) <= 2 for i in range(k))

    def to_dict(self):
        return {
            "nodes": [
                {
                    "id": h,
                    "depth": d,
                    "word": list(s.history),
                    "vars": [str(v) for v in s.vars],
                }
                for s, h, d in zip(self.seeds, self.hashes, self.depths)
            ],
            "adjacency": {
                self.hashes[a]: [[k, self.hashes[b]] for k, b in sorted(self.arcs.get(a, []))]
                for a in range(len(self.seeds))
            },
            "cluster_variables": [str(v) for v in self.cluster_variables()],
        }


def _connected(k, edges):
    adj = {i: set() for i in range(k)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    seen, stack = {0}, [0]
    while stack:
        for b in adj[stack.pop()]:
            if b not in seen:
                seen.add(b)
                stack.append(b)
    return len(seen) == k


def enumerate_exchange_graph(s: Seed, max_depth: int) -> ExchangeGraph:
    """Breadth-first search of the exchange graph up to ``max_depth`` mutations."""
    if max_depth < 0:
        raise ValueError("max_depth must be >= 0")
    root_key = canonical_key(s)
    index = {root_key: 0}
    g = ExchangeGraph([s], [seed_hash(root_key)], [0], {})
    queue = deque([0])
    while queue:
        a = queue.popleft()
        if g.depths[a] >= max_depth:
            continue
        arcs = []
        for k in range(1, s.n + 1):
            child = mutate_seed(g.seeds[a], k)
            key = canonical_key(child)
            b = index.get(key)
            if b is None:
                b = len(g.seeds)
                index[key] = b
                g.seeds.append(child)
                g.hashes.append(seed_hash(key))
                g.depths.append(g.depths[a] + 1)
                queue.append(b)
            arcs.append((k, b))
        g.arcs[a] = arcs
    return g


def seed_summary(s: Seed) -> str:
    lines = [
        f"word = {','.join(map(str, s.history))}",
        f"B = {format_matrix(s.B)}",
        f"Lambda = {format_matrix(s.Lambda)}",
        f"D = diag({','.join(map(str, s.D))})",
    ]
    for i, v in enumerate(s.vars, 1):
        name = s.names[i - 1] if s.names else f"x{i}"
        lines.append(f"{name} = {v}")
    return "\n".join(lines)
