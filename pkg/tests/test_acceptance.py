"""Acceptance suite: one test per criterion, each with its own time budget.

Run ``pytest tests/test_acceptance.py -v``; a PASS/FAIL line per criterion is
printed in the terminal summary.
"""

import itertools
import random
import time
from contextlib import contextmanager

import pytest
import sympy

from helpers import all_words, classical_variables, specialize_to_sympy
from quantum_cluster import catalog
from quantum_cluster.decomp import tensor, theta_space, twisted_mul
from quantum_cluster.inner import (GTransform, bracket_from_g, check_p_membership, classify_inner,
                                   pattern_solutions)
from quantum_cluster.poisson import (LogCanonical, Standard, bracket_eval, check_compatible,
                                     check_locally_standard, locally_standard_table, verify_poisson_axioms)
from quantum_cluster.qring import QScalar
from quantum_cluster.qtorus import (TorusElement, box_window, central_exponents, degree_window, elem_mul,
                                    exact_div, twist)
from quantum_cluster.seeds import (enumerate_exchange_graph, exchange_numerator, frame_monomial,
                                   mutate_lambda, mutate_matrix, mutate_seed, mutate_word, validate_seed)

X = TorusElement.monomial
W12 = QScalar.parse("q^(1/2) - q^(-1/2)")
Z = QScalar()


@contextmanager
def budget(seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.2f}s, budget {seconds}s"


def catalog_seeds():
    return [(name, catalog.CATALOG[name]()) for name in sorted(catalog.CATALOG)]


# 1 --------------------------------------------------------------------------


@pytest.mark.criterion(1, "compatible pair kept with the same D along all words of length <= 5")
def test_criterion_1_compatibility_preserved():
    with budget(5):
        for name, s in catalog_seeds():
            assert s.D == {"A2": (1, 1), "Kronecker": (2, 2), "A2+A2": (1, 1, 1, 1)}[name]
            count = 0
            stack = [(s.B, s.Lambda, 0)]
            while stack:
                b, lam, depth = stack.pop()
                assert validate_seed(b, lam) == s.D
                count += 1
                if depth < 5:
                    for k in range(1, s.n + 1):
                        stack.append((mutate_matrix(b, k), mutate_lambda(lam, b, k), depth + 1))
            assert count == sum(s.n ** d for d in range(6))


# 2 --------------------------------------------------------------------------


@pytest.mark.criterion(2, "mutation is an involution on B, Lambda and variables")
def test_criterion_2_involution():
    with budget(1):
        for _, s in catalog_seeds():
            for start in (s, mutate_word(s, [1, 2])):
                for k in range(1, s.n + 1):
                    back = mutate_seed(mutate_seed(start, k), k)
                    assert back.B == start.B and back.Lambda == start.Lambda
                    assert back.vars == start.vars


# 3 --------------------------------------------------------------------------


@pytest.mark.criterion(3, "quantum A2: 5 variables, 5-cycle, classical specialization")
def test_criterion_3_a2_finite():
    with budget(5):
        g = enumerate_exchange_graph(catalog.a2(), 6)
        assert len(g.seeds) == 5 and g.is_cycle()
        variables = g.cluster_variables()
        assert len(variables) == 5
        found, xs = classical_variables(catalog.A2_B, all_words(2, 6))
        x1, x2 = xs
        expected = {sympy.factor(e) for e in (x1, x2, (1 + x2) / x1, (1 + x1) / x2, (1 + x1 + x2) / (x1 * x2))}
        assert found == expected
        assert {specialize_to_sympy(v, xs) for v in variables} == expected


# 4 --------------------------------------------------------------------------


@pytest.mark.criterion(4, "Kronecker to depth 4: every exchange division and frame monomial is exact")
def test_criterion_4_kronecker_laurent():
    with budget(30):
        s0 = catalog.kronecker()
        g = enumerate_exchange_graph(s0, 4)
        assert len(g.seeds) == 9
        for s in g.seeds:
            for k in (1, 2):
                num = exchange_numerator(s, k)
                new = exact_div(num, s.vars[k - 1], s.lambda0)
                assert elem_mul(s.vars[k - 1], new, s.lambda0) == num
            for e in itertools.product(range(3), repeat=2):
                v = frame_monomial(s, e)
                assert not v.is_zero()
                # positivity of the bar-invariant expansions
                assert all(c > 0 for _, coeff in v.items() for _, c in coeff.terms)


# 5 --------------------------------------------------------------------------


@pytest.mark.criterion(5, "standard brackets satisfy the axioms; a perturbed table fails with a triple")
def test_criterion_5_axioms():
    with budget(10):
        lams = {s.Lambda for _, s in catalog_seeds()}
        for lam in lams:
            rep = verify_poisson_axioms(Standard(QScalar.parse("2 - q")), lam, 2)
            assert rep.ok, rep.summary()
        perturbed = LogCanonical(((Z, W12), (-W12 + 1, Z)))
        lam = catalog.A2_LAMBDA
        rep = verify_poisson_axioms(perturbed, lam, 2)
        assert not rep.ok and rep.condition == "leibniz" and len(rep.witness) == 3
        a, b, c = (X(e) for e in rep.witness)
        left = perturbed.bracket(a, elem_mul(b, c, lam), lam)
        right = (elem_mul(perturbed.bracket(a, b, lam), c, lam)
                 + elem_mul(b, perturbed.bracket(a, c, lam), lam))
        assert left != right


# 6 --------------------------------------------------------------------------


def brute_force_patterns(lam, h, box=4):
    m = len(lam)
    row = lam[h - 1]
    out = set()
    for a in itertools.product(range(-box, box + 1), repeat=m):
        v = [sum(a[i] * lam[i][j] for i in range(m)) for j in range(m)]
        if all(v[p] in (0, row[p]) for p in range(m)):
            out.add(a)
    return out


@pytest.mark.criterion(6, "pattern solutions on A2 are {0, e_h} and match a brute-force scan")
def test_criterion_6_patterns():
    with budget(1):
        lam = catalog.A2_LAMBDA
        for h in (1, 2):
            got = set(pattern_solutions(lam, h).exponents())
            e_h = tuple(int(i == h - 1) for i in range(2))
            assert got == {(0, 0), e_h}
            assert got == brute_force_patterns(lam, h)
        kron = catalog.KRONECKER_LAMBDA
        for h in (1, 2):
            assert set(pattern_solutions(kron, h).exponents()) == brute_force_patterns(kron, h)


# 7 --------------------------------------------------------------------------


def random_scalar(rng):
    return QScalar({rng.randint(-3, 3): rng.randint(-4, 4) for _ in range(rng.randint(1, 2))})


def random_nonzero_scalar(rng):
    while True:
        c = random_scalar(rng)
        if c:
            return c


@pytest.mark.criterion(7, "inner brackets: scalar maps classify, perturbations are rejected, brackets agree")
def test_criterion_7_inner_classification():
    rng = random.Random(2024)
    lams = [catalog.A2_LAMBDA, ((0, 2), (-2, 0)), ((0, 3), (-3, 0))]
    zero = (0, 0)
    with budget(60):
        window = box_window(2, 2)
        # (a) g(X^e) = k0 X^e + c_e with scalars c_e (central for invertible Lambda)
        for _ in range(100):
            lam = rng.choice(lams)
            k0 = random_nonzero_scalar(rng)
            consts = {e: random_scalar(rng) for e in rng.sample(window, rng.randint(0, 4))}
            g = GTransform.scalar_map(2, 2, k0, consts)
            assert check_p_membership(g, lam).ok
            res = classify_inner(g, lam)
            assert res.k0 == k0
            assert all(res.remainder[e] == c for e, c in consts.items() if e != zero)
            # (c) the bracket is k0 times the commutator
            for e in degree_window(2, 2):
                for f in degree_window(2, 2):
                    assert bracket_from_g(g, X(e), X(f), lam) == bracket_eval(Standard(k0), X(e), X(f), lam)
        # (b) rescale one image or swap it with a non-commuting partner
        window = [e for e in window if any(e)]
        for trial in range(100):
            lam = rng.choice(lams)
            k0 = random_nonzero_scalar(rng)
            g = GTransform.scalar_map(2, 2, k0)
            e = rng.choice(window)
            if trial % 2:
                other = k0 + random_nonzero_scalar(rng)
                bad = g.replace(e, X(e, other))
            else:
                partner = rng.choice([f for f in window if twist(e, f, lam) != twist(f, e, lam)])
                bad = g.replace(e, g.image(partner)).replace(partner, g.image(e))
            assert not check_p_membership(bad, lam).ok


# 8 --------------------------------------------------------------------------


@pytest.mark.criterion(8, "A2+A2: locally standard iff compatible, with witnesses")
def test_criterion_8_locally_standard_equivalence():
    with budget(30):
        lam = catalog.A2A2_LAMBDA
        blocks = [[1, 2], [3, 4]]
        good = locally_standard_table(lam, blocks, [2, 3])
        assert check_locally_standard(good, blocks, lam, 2) == (QScalar(2), QScalar(3))
        assert check_compatible(good, catalog.a2a2(), 3).ok
        om = [list(r) for r in good.omega]
        om[0][2], om[2][0] = QScalar(1), QScalar(-1)
        cross = LogCanonical(tuple(map(tuple, om)))
        with pytest.raises(Exception) as exc:
            check_locally_standard(cross, blocks, lam, 2)
        assert "nonzero cross-block bracket (1,3)" in str(exc.value)
        rep = check_compatible(cross, catalog.a2a2(), 3)
        assert not rep.ok and rep.witness["pair"] == [2, 3]


# 9 --------------------------------------------------------------------------


@pytest.mark.criterion(9, "Theta = O between coefficient-free A2 blocks; glued product is componentwise")
def test_criterion_9_theta_zero():
    with budget(5):
        assert theta_space(catalog.A2_B, catalog.A2_B) == []
        lam = catalog.A2_LAMBDA
        zero = ((0, 0), (0, 0))
        # pairs of monomials X^(s,r) in the radius-2 window of the glued torus
        for x, y in itertools.product(degree_window(4, 2), repeat=2):
            a, b, c, d = X(x[:2]), X(x[2:]), X(y[:2]), X(y[2:])
            got = twisted_mul(zero, a, b, c, d, lam, lam)
            assert got == tensor(elem_mul(a, c, lam), elem_mul(b, d, lam))


# 10 -------------------------------------------------------------------------


@pytest.mark.criterion(10, "only the zero monomial is central for invertible catalog Lambda")
def test_criterion_10_center():
    with budget(1):
        for _, s in catalog_seeds():
            lam = s.Lambda
            assert sympy.Matrix(lam).det() != 0
            assert central_exponents(lam, 4) == [(0,) * len(lam)]
