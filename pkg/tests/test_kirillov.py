import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from heisenrank import exact
from heisenrank.kirillov import (
    KirillovError,
    LinearFunctional,
    classify_rank,
    coadjoint_action,
    float_orbit_dimension,
    orbit_dimension,
    rank_threshold,
    rankable_functional,
    skew_form,
    stabilizer_dimension,
)
from heisenrank.rootsys import all_types
from heisenrank.suites import random_functional, semicontinuity_trials, tower_and_algebra

from conftest import T

TYPES6 = all_types(6, min_rank=2)


@pytest.fixture
def heis():
    """3-dim Heisenberg algebra of A2 and the indices of X, Y, Z."""
    _, L, D = tower_and_algebra(T("A2"))
    z = D.center(1)
    x, y = [i for i in range(3) if i != z]
    return L, x, y, z


def dual(n, i, c=1):
    v = [Fraction(0)] * n
    v[i] = Fraction(c)
    return LinearFunctional(tuple(v))


def test_heisenberg_skew_form(heis):
    L, x, y, z = heis
    B = skew_form(L, dual(3, z))
    assert abs(B[x][y]) == 1 and B[y][x] == -B[x][y]
    assert all(B[i][j] == 0 for i in range(3) for j in range(3) if {i, j} != {x, y})
    assert exact.rank(B) == 2
    assert skew_form(L, LinearFunctional.zero(3)) == [[0] * 3] * 3
    assert not any(any(row) for row in skew_form(L, dual(3, x)))


def test_dimension_mismatch(heis):
    L = heis[0]
    with pytest.raises(KirillovError):
        skew_form(L, LinearFunctional.zero(4))
    with pytest.raises(KirillovError):
        coadjoint_action(L, [0, 0], LinearFunctional.zero(3))


def test_orbit_and_stabilizer_examples(heis):
    L, x, y, z = heis
    assert orbit_dimension(L, LinearFunctional.zero(3)) == 0
    assert stabilizer_dimension(L, LinearFunctional.zero(3)) == 3
    assert stabilizer_dimension(L, dual(3, z)) == 1
    tw, L3, D3 = tower_and_algebra(T("A3"))
    lam = rankable_functional(L3, D3, 1, [1])
    assert orbit_dimension(L3, lam) == 4
    assert stabilizer_dimension(L3, lam) == 1
    tw, Lc, Dc = tower_and_algebra(T("C3"))
    assert orbit_dimension(Lc, rankable_functional(Lc, Dc, 2, [1, Fraction(-3, 2)])) == 6


def test_rankable_construction():
    _, L, D = tower_and_algebra(T("A3"))
    lam = rankable_functional(L, D, 1, [1])
    assert lam == dual(L.dim, D.center(1))
    _, L, D = tower_and_algebra(T("C3"))
    lam = rankable_functional(L, D, 2, [1, Fraction(-3, 2)])
    support = {i: c for i, c in enumerate(lam.coeffs) if c}
    assert support == {D.center(1): 1, D.center(2): Fraction(-3, 2)}
    for d, scalars in [(0, []), (3, [1, 1, 1])]:
        with pytest.raises(KirillovError):
            rankable_functional(L, D, d, scalars)
    with pytest.raises(KirillovError):
        rankable_functional(L, D, 2, [1, 0])
    with pytest.raises(KirillovError):
        rankable_functional(L, D, 2, [1])


def test_thresholds():
    tw, _, _ = tower_and_algebra(T("C3"))
    assert rank_threshold(tw, 0) == 0
    assert rank_threshold(tw, 2) == 6
    f4, _, _ = tower_and_algebra(T("F4"))
    assert rank_threshold(f4, 3) == 15 + 5 + 3 - 3
    with pytest.raises(KirillovError):
        rank_threshold(tw, 3)
    with pytest.raises(KirillovError):
        rank_threshold(tw, -1)


@pytest.mark.parametrize("t", TYPES6, ids=str)
def test_thresholds_strictly_increase(t):
    tw, _, _ = tower_and_algebra(t)
    th = [rank_threshold(tw, d) for d in range(tw.r + 1)]
    assert all(b - a >= 2 for a, b in zip(th, th[1:]))


def test_classify_examples():
    tw, L, D = tower_and_algebra(T("G2"))
    assert classify_rank(L, tw, LinearFunctional.zero(L.dim)) == 0
    lam = rankable_functional(L, D, 1, [1])
    assert orbit_dimension(L, lam) == 4 == rank_threshold(tw, 1)
    assert classify_rank(L, tw, lam) == 1


@pytest.mark.parametrize("t", TYPES6, ids=str)
def test_classify_rankable_is_exact(t):
    tw, L, D = tower_and_algebra(t)
    rng = random.Random(str(t))
    for d in range(1, tw.r + 1):
        lam = rankable_functional(L, D, d, [exact.random_rational(rng) for _ in range(d)])
        assert orbit_dimension(L, lam) == sum(s.layer_dim for s in tw.steps[:d]) - d
        assert classify_rank(L, tw, lam) == d


def test_coadjoint_examples(heis):
    L, x, y, z = heis
    lam = dual(3, z)
    assert coadjoint_action(L, [0, 0, 0], lam) == lam
    t = Fraction(5, 3)
    xv = [0, 0, 0]
    xv[x] = t
    moved = coadjoint_action(L, xv, lam)
    sign = L.constants[(x, y)][1]  # [X, Y] = sign * Z
    want = [Fraction(0)] * 3
    want[z] = Fraction(1)
    want[y] = -sign * t
    assert list(moved.coeffs) == want


@pytest.mark.parametrize("token", ["A3", "C3", "G2", "A4"])
def test_coadjoint_matches_matrix_exponential(token):
    _, L, _ = tower_and_algebra(T(token))
    rng = random.Random(11)
    for _ in range(3):
        x = exact.random_vector(rng, L.dim)
        lam = LinearFunctional.of(exact.random_vector(rng, L.dim))
        M = sympy.Matrix(L.ad_matrix(x)).applyfunc(sympy.nsimplify)
        G = (-M).exp()
        row = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in lam.coeffs]]) * G
        want = [Fraction(int(sympy.fraction(v)[0]), int(sympy.fraction(v)[1])) for v in row]
        assert list(coadjoint_action(L, x, lam).coeffs) == want


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["A3", "C3", "B4", "G2"]), st.integers(0, 10**6))
def test_coadjoint_inverse_and_skew_form_transport(token, seed):
    _, L, _ = tower_and_algebra(T(token))
    rng = random.Random(seed)
    x = exact.random_vector(rng, L.dim, 0.5)
    lam = random_functional(rng, L.dim)
    moved = coadjoint_action(L, x, lam)
    assert coadjoint_action(L, [-v for v in x], moved) == lam
    assert orbit_dimension(L, moved) == orbit_dimension(L, lam)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(TYPES6), st.integers(0, 10**6))
def test_skew_form_even_rank_and_float_agreement(t, seed):
    _, L, _ = tower_and_algebra(t)
    lam = random_functional(random.Random(seed), L.dim)
    B = skew_form(L, lam)
    assert all(B[i][j] == -B[j][i] for i in range(L.dim) for j in range(L.dim))
    r = orbit_dimension(L, lam)
    assert r % 2 == 0
    assert r == float_orbit_dimension(L, lam)


@pytest.mark.parametrize("token", ["A3", "C3", "B2"])
def test_orbit_dimension_matches_sympy(token):
    _, L, _ = tower_and_algebra(T(token))
    rng = random.Random(3)
    for _ in range(5):
        lam = random_functional(rng, L.dim)
        assert orbit_dimension(L, lam) == sympy.Matrix(skew_form(L, lam)).rank()


def test_semicontinuity_on_special_line():
    # along lam + t mu with lam generic and mu = -lam, rank drops exactly at t = 1
    _, L, D = tower_and_algebra(T("A3"))
    lam = rankable_functional(L, D, 1, [2])
    mu = lam.scaled(-1)
    assert orbit_dimension(L, lam + mu.scaled(1)) == 0 < orbit_dimension(L, lam)
    assert all(orbit_dimension(L, lam + mu.scaled(Fraction(k, 7))) == 4 for k in range(-5, 7))


def test_semicontinuity_trials_helper():
    _, L, _ = tower_and_algebra(T("B3"))
    holds, problems = semicontinuity_trials(L, random.Random(2), 20)
    assert holds >= 18 and not problems
