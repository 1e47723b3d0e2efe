import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from binquad.clifford import QuadraticAlgebra
from binquad.errors import NotAModule, NotAPerfectSquare, NotTraceable
from binquad.form import BinaryQuadraticForm, bqf, similar
from binquad.pairs import (
    CliffordPair,
    clifford_form_to_wood_form,
    dual_conic,
    dual_form,
    dual_form_trace,
    form_to_pair,
    normalize_pair,
    pair_to_form,
    pairs_isomorphic,
    pairs_isomorphic_search,
    wood_pair,
)
from binquad.ring import ModularRing, QQ, ZZ

small = st.integers(min_value=-7, max_value=7)


def test_normalize_pair_example():
    p = CliffordPair(QuadraticAlgebra(ZZ, 9, 20), ((7, 6), (-1, 2)))
    n, shift = normalize_pair(p)
    assert shift == 2
    assert n.m == ((5, 6), (-1, 0))
    assert (n.alg.t, n.alg.nm) == (5, 6)
    # relations survive the shift
    assert n.is_traceable()


def test_normalize_pair_fixed_points():
    p = CliffordPair(QuadraticAlgebra(ZZ, 1, 6), ((1, 3), (-2, 0)))
    n, shift = normalize_pair(p)
    assert shift == 0 and n == p
    p = CliffordPair(QuadraticAlgebra(ZZ, 0, -1), ((0, 1), (1, 0)))
    n, shift = normalize_pair(p)
    assert shift == 0 and n == p


def test_pair_to_form_examples():
    p = CliffordPair(QuadraticAlgebra(ZZ, 1, 6), ((1, 3), (-2, 0)))
    assert pair_to_form(p) == bqf(2, 1, 3)
    p = CliffordPair(QuadraticAlgebra(ZZ, 9, 20), ((7, 6), (-1, 2)))
    assert pair_to_form(p) == bqf(1, 5, 6)
    assert pair_to_form(form_to_pair(bqf(1, 5, 6))) == bqf(1, 5, 6)
    p = CliffordPair(QuadraticAlgebra(ZZ, 0, -1), ((0, 1), (1, 0)))
    assert pair_to_form(p) == bqf(-1, 0, 1)


def test_form_to_pair_examples():
    p = form_to_pair(bqf(2, 1, 3))
    assert p.alg == QuadraticAlgebra(ZZ, 1, 6)
    assert p.m == ((1, 3), (-2, 0))
    z = form_to_pair(bqf(0, 0, 0))
    assert z.alg == QuadraticAlgebra(ZZ, 0, 0) and z.m == ((0, 0), (0, 0))


@given(small, small, small)
def test_round_trip_is_exact(a, b, c):
    q = bqf(a, b, c)
    assert pair_to_form(form_to_pair(q)) == q


def test_not_traceable_rejected():
    p = CliffordPair(QuadraticAlgebra(ZZ, 1, 0), ((1, 0), (0, 1)))
    assert not p.is_traceable()
    with pytest.raises(NotTraceable):
        pair_to_form(p)
    with pytest.raises(NotTraceable):
        pairs_isomorphic(p, p)


def test_pair_construction_validates_module_axiom():
    with pytest.raises(NotAModule):
        CliffordPair(QuadraticAlgebra(ZZ, 1, 6), ((1, 0), (0, 1)))


def test_pairs_isomorphic_examples():
    p1 = form_to_pair(bqf(4, 5, 3))
    p2 = form_to_pair(bqf(2, -1, 3))
    v = pairs_isomorphic(p1, p2)
    assert v.is_isomorphic and v.witness is not None and v.witness.verify(p1, p2)

    v = pairs_isomorphic(form_to_pair(bqf(1, 0, 1)), form_to_pair(bqf(1, 1, 1)))
    assert v.verdict == "not_isomorphic" and v.reason == "discriminant"

    v = pairs_isomorphic(p1, p1)
    assert v.is_isomorphic and v.witness.verify(p1, p1)


def test_pairs_oracle_agrees_with_fast_path():
    rng = random.Random(37)
    forms = []
    while len(forms) < 8:
        a, b, c = rng.randint(1, 4), rng.randint(-4, 4), rng.randint(1, 4)
        if b * b - 4 * a * c < 0:
            forms.append(bqf(a, b, c))
    for q1 in forms:
        for q2 in forms:
            p1, p2 = form_to_pair(q1), form_to_pair(q2)
            fast = pairs_isomorphic(p1, p2).is_isomorphic
            brute = pairs_isomorphic_search(p1, p2, bound=8)
            assert fast == (brute is not None)
            assert similar(q1, q2).is_similar == fast
            if brute is not None:
                assert brute.verify(p1, p2)


def test_similarity_matches_pair_isomorphism_on_grid_sample():
    # sampled from the definite primitive grid with |coefficients| <= 6;
    # the exhaustive version of this equivalence runs in the acceptance
    # suite against the brute-force oracle
    from math import gcd
    from itertools import product as iproduct

    grid = []
    for a, b, c in iproduct(range(-6, 7), repeat=3):
        if a == 0 or c == 0 or b * b - 4 * a * c >= 0:
            continue
        if gcd(gcd(a, b), c) != 1:
            continue
        grid.append(bqf(a, b, c))
    rng = random.Random(59)
    for _ in range(600):
        q1, q2 = rng.choice(grid), rng.choice(grid)
        s = similar(q1, q2).is_similar
        v = pairs_isomorphic(form_to_pair(q1), form_to_pair(q2))
        assert s == v.is_isomorphic
        if v.is_isomorphic:
            assert v.witness is not None
            assert v.witness.verify(form_to_pair(q1), form_to_pair(q2))


def test_pairs_isomorphic_over_modular_ring_carries_unit_witness():
    R = ModularRing(7)
    q1 = BinaryQuadraticForm(R, 2, 1, 3)
    q2 = q1.act(((1, 2), (0, 1)), 3)
    p1, p2 = form_to_pair(q1), form_to_pair(q2)
    v = pairs_isomorphic(p1, p2)
    assert v.is_isomorphic and v.witness.verify(p1, p2)
    # the algebra twist here is a unit other than +-1
    assert v.witness.phi.eps not in (1, R.n - 1)


def test_wood_form_examples():
    assert clifford_form_to_wood_form(bqf(2, 1, 3)) == bqf(3, -1, 2)
    assert clifford_form_to_wood_form(bqf(1, 1, 1)) == bqf(1, -1, 1)
    assert clifford_form_to_wood_form(bqf(5, 0, 7)) == bqf(7, 0, 5)


def test_wood_recipe_reproduces_the_clifford_pair():
    # reading the Wood form of a pair back through the opposite-sign
    # relations lands on the original action data
    for coeffs in ((2, 1, 3), (1, -2, 5), (0, 3, -1)):
        q = bqf(*coeffs)
        assert wood_pair(clifford_form_to_wood_form(q)) == form_to_pair(q)


def test_wood_recipe_matches_dual_stage():
    q = bqf(2, 1, 3)
    stage3 = dual_form_trace(q)[2]
    p = wood_pair(clifford_form_to_wood_form(q))
    v = pairs_isomorphic(p, stage3.pair)
    assert v.is_isomorphic


def test_dual_form_examples():
    assert dual_form(bqf(1, 1, 1)) == bqf(1, -1, 1)
    assert dual_form(dual_form(bqf(1, 1, 1))) == bqf(1, 1, 1)
    assert dual_form(bqf(0, 5, 0)) == bqf(0, -5, 0)


@given(small, small, small)
def test_dual_form_is_an_involution(a, b, c):
    q = bqf(a, b, c)
    assert dual_form(dual_form(q)) == q


def test_dual_trace_stages():
    st = dual_form_trace(bqf(2, 1, 3))
    assert [s.label for s in st] == [
        "classical",
        "wood",
        "kneser_dual",
        "wood_dual",
        "classical_double_dual",
    ]
    assert [s.form.coeffs() for s in st] == [
        (2, 1, 3),
        (3, -1, 2),
        (3, -1, 2),
        (2, 1, 3),
        (2, 1, 3),
    ]
    assert [s.module for s in st] == ["E", "E", "E_dual", "E_dual", "E"]
    # the dual-module relations: shifted generator squares to -b*tau - ac
    k = st[2].pair
    assert (k.alg.t, k.alg.nm) == (-1, 6)
    assert k.m == ((-1, 2), (-3, 0))


def test_dual_conic_examples():
    assert dual_conic(bqf(1, 0, 1)).coeffs() == (1, 0, 1)
    got = dual_conic(bqf(1, 3, 1))
    assert got.coeffs() == (Fraction(-4, 5), Fraction(12, 5), Fraction(-4, 5))
    assert dual_conic(bqf(1, 4, 4)).coeffs() == (4, -4, 1)


def test_dual_conic_against_matrix_inverse():
    # oracle: invert the Gram matrix [[a, b/2], [b/2, c]] exactly
    rng = random.Random(41)
    n = 0
    while n < 40:
        a, b, c = rng.randint(-5, 5), rng.randint(-5, 5), rng.randint(-5, 5)
        det = Fraction(a) * c - Fraction(b, 2) ** 2
        if det == 0:
            continue
        got = dual_conic(bqf(a, b, c))
        inv = (
            (Fraction(c) / det, Fraction(-b, 2) / det),
            (Fraction(-b, 2) / det, Fraction(a) / det),
        )
        assert got.coeffs() == (inv[0][0], 2 * inv[0][1], inv[1][1])
        n += 1


def test_dual_conic_double_application_is_projectively_trivial():
    rng = random.Random(43)
    n = 0
    while n < 40:
        a, b, c = rng.randint(-5, 5), rng.randint(-5, 5), rng.randint(-5, 5)
        if 4 * a * c - b * b == 0:
            continue
        q = BinaryQuadraticForm(QQ, a, b, c)
        assert dual_conic(dual_conic(q)) == q
        n += 1


def test_dual_conic_degenerate_branch():
    # (x + 2y)^2: the limit of duals of nearby smooth conics
    assert dual_conic(bqf(1, 4, 4)).coeffs() == (4, -4, 1)
    assert dual_conic(bqf(0, 0, 1)).coeffs() == (1, 0, 0)
    assert dual_conic(bqf(9, -12, 4)).coeffs() == (4, 12, 9)
    with pytest.raises(NotAPerfectSquare):
        dual_conic(bqf(2, 4, 2))
    with pytest.raises(NotAPerfectSquare):
        dual_conic(BinaryQuadraticForm(QQ, Fraction(1, 2), Fraction(1), Fraction(1, 2)))
    # a rational square with fractional root is still fine
    q = BinaryQuadraticForm(QQ, 1, 1, Fraction(1, 4))
    assert dual_conic(q).coeffs() == (Fraction(1, 4), Fraction(-1), Fraction(1))


def test_pair_json_round_trip():
    p = form_to_pair(bqf(2, 1, 3))
    assert CliffordPair.from_json(p.to_json()) == p
