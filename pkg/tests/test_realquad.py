import random
from fractions import Fraction
from math import isqrt

import pytest

from eisenlift.modsym import MatZ, in_gamma1
from eisenlift.realquad import (
    QuadInt,
    QuadraticData,
    diagonal_restriction,
    fundamental_unit,
    fundamental_unit_bruteforce,
    primitivity,
    quad_data,
    quad_invariants,
    unit_matrix,
)
from eisenlift.thetalift import lift_cycle

from _support import random_hyperbolic

G = MatZ(1, 1, 4, 5)


def test_invariants_reference():
    qd = quad_invariants(G, 4)
    assert qd.D == 32 and qd.Delta == 32 and qd.form == (4, 4, -1)
    # nu = -(1 + sqrt 2)/2 = -1/2 - sqrt(32)/8
    assert qd.nu == (Fraction(-1, 2), Fraction(-1, 8))
    # eps = (6 + sqrt 32)/2 = 3 + 2 sqrt 2
    assert qd.eps == QuadInt(6, 1, 32)
    assert qd.eps.norm() == 1 and qd.eps.is_totally_positive()


def test_invariants_level5():
    qd = quad_invariants(MatZ(1, 1, 5, 6), 5)
    assert qd.D == 45 and qd.eps == QuadInt(7, 1, 45)  # (7 + 3 sqrt 5)/2


def test_invariants_reject_parabolic():
    with pytest.raises(ValueError):
        quad_invariants(MatZ(1, 1, 0, 1), 4)


def _nu_is_root(g, qd):
    # c nu^2 + (d - a) nu - b = 0 with nu = x + y sqrt(D)
    x, y, D = qd.nu[0], qd.nu[1], qd.D
    sq = (x * x + y * y * D, 2 * x * y)
    val = (g.c * sq[0] + (g.d - g.a) * x - g.b, g.c * sq[1] + (g.d - g.a) * y)
    return val == (0, 0)


@pytest.mark.parametrize("N", [4, 5, 7])
def test_invariants_random(N):
    rng = random.Random(N)
    for _ in range(20):
        g = random_hyperbolic(N, rng)
        qd = quad_invariants(g, N)
        assert _nu_is_root(g, qd)
        assert qd.D % qd.Delta == 0 and isqrt(qd.D // qd.Delta) ** 2 == qd.D // qd.Delta
        assert qd.eps.norm() == 1 and qd.eps.is_totally_positive()
        assert qd.eps0.norm() == 1 and qd.eps0.is_totally_positive()


@pytest.mark.parametrize("Delta,want", [(5, (3, 1)), (32, (6, 1)), (8, (6, 2)), (12, (4, 1)), (13, (11, 3))])
def test_fundamental_unit_examples(Delta, want):
    assert fundamental_unit(Delta).to_list() == list(want)


def test_fundamental_unit_rejects():
    for bad in (0, -3, 16, 7):
        with pytest.raises(ValueError):
            fundamental_unit(bad)


@pytest.mark.parametrize("Delta", [d for d in range(5, 73) if d % 4 in (0, 1) and isqrt(d) ** 2 != d])
def test_fundamental_unit_matches_bruteforce(Delta):
    assert fundamental_unit(Delta) == fundamental_unit_bruteforce(Delta)


def test_unit_matrix_reproduces_gamma():
    qd = quad_invariants(G, 4)
    assert unit_matrix(qd.form, QuadInt(6, 1, 32)) == G


def test_primitivity_examples():
    assert primitivity(G, 4) == (G, 1)
    assert primitivity(G ** 2, 4) == (G, 2)
    assert primitivity(G.inv() ** 3, 4) == (G.inv(), 3)
    # least Gamma1(4) power of eps0 is the cube: the matrix is primitive although eps = eps0^3
    h = MatZ(29, -40, 8, -11)
    qd = quad_data(h, 4)
    assert (qd.m, qd.k, qd.primitive) == (3, 1, True)
    assert QuadInt(qd.eps.t, isqrt(qd.D // qd.Delta), qd.Delta) == qd.eps0 ** 3
    assert not in_gamma1(unit_matrix(qd.form, qd.eps0), 4)


def test_primitivity_negative_trace():
    h = MatZ(1, 1, -5, -4)  # trace -3 in Gamma1(5)
    assert primitivity(h, 5) == (h, 1)
    assert primitivity(h ** 3, 5) == (h, 3)


@pytest.mark.parametrize("N", [4, 5, 6])
def test_primitivity_powers(N):
    rng = random.Random(N)
    for _ in range(6):
        g1, _ = primitivity(random_hyperbolic(N, rng, 4), N)
        for j in (1, 2, 3):
            assert primitivity(g1 ** j, N) == (g1, j)


def test_quad_data_json():
    qd = quad_data(G ** 2, 4)
    d = qd.to_dict()
    assert set(d) >= {"D", "form", "Delta", "eps", "eps0", "m", "k", "primitive"}
    assert QuadraticData.from_dict(d) == qd


def test_diagonal_restriction():
    d1 = diagonal_restriction(G, 4, 10)
    assert d1.series == lift_cycle(G, 4, 10) and d1.k == 1 and d1.data.D == 32
    d2 = diagonal_restriction(G ** 2, 4, 10)
    assert d2.series == d1.series * 2 and d2.k == 2
    assert d2.restriction == d1.restriction
    with pytest.raises(ValueError):
        diagonal_restriction(MatZ(1, 1, 0, 1), 4, 10)
