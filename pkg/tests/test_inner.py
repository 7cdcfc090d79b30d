import itertools
import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import A2_LAM, KRON_LAM, LAM3, nonzero_scalars, scalars
from quantum_cluster import catalog
from quantum_cluster.errors import (InputError, LambdaSingular, NotInP, NotStandardShape, OutsideWindow,
                                    ScalarMismatch)
from quantum_cluster.inner import (GTransform, bracket_from_g, check_p_membership, classify_inner,
                                   generic_vector, gtransform_from_dict, pattern_solutions,
                                   satisfies_generic_condition)
from quantum_cluster.poisson import Standard, bracket_eval
from quantum_cluster.qring import QScalar
from quantum_cluster.qtorus import TorusElement, box_window, commutator

X = TorusElement.monomial
A2A2_LAM = catalog.A2A2_LAMBDA
LAM3_REG = ((0, 1, 2), (-1, 0, 1), (-2, -1, 0))  # has a kernel; used for singular checks
LAM4 = ((0, 1, 0, 2), (-1, 0, 3, 0), (0, -3, 0, 1), (-2, 0, -1, 0))


def swapped(m=2, r=1):
    # g exchanges X^(1,0) and X^(0,1): fails the symmetry test at once
    base = GTransform.scalar_map(m, r, 1)
    return base.replace((1, 0), X((0, 1))).replace((0, 1), X((1, 0)))


# -- membership --------------------------------------------------------------


def test_identity_is_member():
    rep = check_p_membership(GTransform.scalar_map(2, 2, 1), A2_LAM)
    assert rep.ok and rep.pairs_checked == 625
    assert rep.summary().startswith("pass (625 pairs")


def test_scaled_identity_plus_constants_member():
    g = GTransform.scalar_map(2, 2, QScalar.parse("2 + q"), {(1, 1): QScalar(3), (0, 0): QScalar(5)})
    assert check_p_membership(g, KRON_LAM).ok


def test_swap_fails_symmetry():
    rep = check_p_membership(swapped(), A2_LAM)
    assert not rep.ok and rep.condition == "symmetry"
    assert rep.summary() == "symmetry condition fails at x=X^(1,0), y=X^(1,0)"


def test_noncentral_addition_fails():
    # g(X^e) = X^e + X^(1,0) for every e: symmetric pairs break
    g = GTransform.from_function(2, 1, lambda e: X(e) + X((1, 0)) if any(e) else TorusElement.zero(2))
    assert not check_p_membership(g, A2_LAM).ok


def test_membership_dimension_error():
    with pytest.raises(InputError):
        check_p_membership(GTransform.scalar_map(2, 1, 1), LAM3)


# -- patterns ----------------------------------------------------------------


def brute_force_patterns(lam, h, box=4):
    m = len(lam)
    row = lam[h - 1]
    found = set()
    for a in itertools.product(range(-box, box + 1), repeat=m):
        v = [sum(a[i] * lam[i][j] for i in range(m)) for j in range(m)]
        if all(v[p] == 0 or v[p] == row[p] for p in range(m)):
            pattern = tuple(p + 1 for p in range(m) if row[p] and v[p] == row[p])
            found.add((pattern, a))
    return found


@pytest.mark.parametrize("lam", [A2_LAM, KRON_LAM, A2A2_LAM, LAM4])
def test_patterns_match_brute_force(lam):
    for h in range(1, len(lam) + 1):
        sols = pattern_solutions(lam, h)
        assert sols.h == h
        got = set(sols.solutions)
        assert got == brute_force_patterns(lam, h)


def test_pattern_examples():
    sols = pattern_solutions(A2_LAM, 1)
    assert set(sols.solutions) == {((), (0, 0)), ((2,), (1, 0))}
    assert (0, 0) in sols.exponents()
    kron = pattern_solutions(KRON_LAM, 2)
    assert set(kron.solutions) == {((), (0, 0)), ((1,), (0, 1))}


def test_pattern_errors():
    with pytest.raises(LambdaSingular):
        pattern_solutions(LAM3_REG, 1)
    with pytest.raises(InputError):
        pattern_solutions(A2_LAM, 3)


# -- generic vector ----------------------------------------------------------


def scan_generic(lam, bound=8):
    for v in itertools.product(range(bound + 1), repeat=len(lam)):
        if satisfies_generic_condition(v, lam):
            return v
    return None


@pytest.mark.parametrize("lam", [A2_LAM, KRON_LAM, A2A2_LAM, LAM4, ((0, 3), (-3, 0))])
def test_generic_vector_is_lex_min(lam):
    assert generic_vector(lam) == scan_generic(lam)


def test_generic_vector_examples():
    assert generic_vector(A2_LAM) == (2, 2)
    assert generic_vector(KRON_LAM) == (2, 2)
    assert not satisfies_generic_condition((1, 1), A2_LAM)
    with pytest.raises(LambdaSingular):
        generic_vector(LAM3_REG)


@settings(deadline=None, max_examples=30)
@given(st.integers(1, 4), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_generic_vector_property(a, b, c, d):
    lam = ((0, a, b, c), (-a, 0, d, b), (-b, -d, 0, a), (-c, -b, -a, 0))
    try:
        v = generic_vector(lam)
    except LambdaSingular:
        return
    assert satisfies_generic_condition(v, lam)
    # nothing smaller in the box before it
    assert scan_generic(lam, max(v)) == v


# -- classification ----------------------------------------------------------


def test_classify_scaled_identity():
    res = classify_inner(GTransform.scalar_map(2, 2, 2), A2_LAM)
    assert res.k0 == 2
    assert res.remainder[(0, 0)] == 0 and res.remainder_is_zero
    assert res.normalized.image((1, 1)) == X((1, 1), QScalar(2))
    assert res.normalized.constant == 0


def test_classify_with_constants():
    g = GTransform.scalar_map(2, 2, 2, {(1, 0): QScalar(1), (0, 0): QScalar(1)})
    res = classify_inner(g, A2_LAM)
    assert res.k0 == 2
    assert res.remainder[(1, 0)] == 1
    assert res.remainder[(0, 0)] == 1  # g(1) = 3 = k0 + 1
    assert not res.remainder_is_zero


def test_classify_rejects():
    with pytest.raises(NotInP):
        classify_inner(swapped(), A2_LAM)
    with pytest.raises(NotStandardShape):
        classify_inner(swapped(), A2_LAM, check_membership=False)
    bad = GTransform.scalar_map(2, 1, 1).replace((1, 0), X((1, 0), QScalar(2)))
    with pytest.raises(ScalarMismatch):
        classify_inner(bad, A2_LAM, check_membership=False)
    with pytest.raises(LambdaSingular):
        classify_inner(GTransform.scalar_map(3, 1, 1), LAM3_REG)


def test_classify_chain_reaches_every_noncentral():
    res = classify_inner(GTransform.scalar_map(2, 2, 3), KRON_LAM)
    assert len(res.chain) == 24
    root = [e for e, parent in res.chain.items() if parent is None]
    assert len(root) == 1


@settings(deadline=None, max_examples=25)
@given(nonzero_scalars(max_terms=2), st.dictionaries(st.sampled_from(box_window(2, 1)), scalars(max_terms=2),
                                                      max_size=3),
       st.sampled_from([A2_LAM, KRON_LAM]))
def test_classifier_sound(k, consts, lam):
    g = GTransform.scalar_map(2, 1, k, consts)
    res = classify_inner(g, lam)
    assert res.k0 == k
    for e in box_window(2, 1):
        expected = consts.get(e, QScalar())
        if e == (0, 0):
            assert res.remainder[e] == g.constant - k
        else:
            assert res.remainder[e] == expected


# -- brackets from g ---------------------------------------------------------


def test_bracket_from_g():
    g = GTransform.scalar_map(2, 2, 2)
    a = X((1, 0)) + X((0, 1))
    b = X((2, -1), QScalar(3))
    assert bracket_from_g(g, a, b, A2_LAM) == bracket_eval(Standard(QScalar(2)), a, b, A2_LAM)
    with pytest.raises(OutsideWindow) as exc:
        bracket_from_g(g, X((3, 0)), b, A2_LAM)
    assert exc.value.exponent == (3, 0)


def test_central_constants_do_not_change_bracket():
    g = GTransform.scalar_map(2, 1, 1, {(1, 0): QScalar(4)})
    x, y = X((1, 0)), X((0, 1))
    assert bracket_from_g(g, x, y, A2_LAM) == commutator(x, y, A2_LAM)


# -- GTransform plumbing -----------------------------------------------------


def test_gtransform_validation():
    with pytest.raises(InputError):
        GTransform(2, 1, {}, QScalar())
    g = GTransform.scalar_map(2, 1, 1)
    with pytest.raises(OutsideWindow):
        g.image((2, 0))
    assert g.in_window((1, -1)) and not g.in_window((0, 2))


def test_gtransform_json_round_trip():
    g = GTransform.scalar_map(2, 1, QScalar.parse("q - 1"), {(0, 0): QScalar(2), (1, 1): QScalar(-1)})
    data = json.loads(json.dumps(g.to_dict()))
    h = gtransform_from_dict(data)
    assert h.to_dict() == g.to_dict() and h.constant == g.constant
    with pytest.raises(InputError):
        gtransform_from_dict({"images": []})


def test_random_scalar_maps_agree_with_standard():
    rng = random.Random(3)
    for _ in range(10):
        k = rng.randint(-5, 5) or 1
        g = GTransform.scalar_map(2, 1, k)
        e = (rng.randint(-1, 1), rng.randint(-1, 1))
        f = (rng.randint(-2, 2), rng.randint(-2, 2))
        assert bracket_from_g(g, X(e), X(f), KRON_LAM) == bracket_eval(Standard(QScalar(k)), X(e), X(f), KRON_LAM)
