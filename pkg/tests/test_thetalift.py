import random
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from eisenlift.eisenstein import expand_G, expand_H
from eisenlift.modsym import IDENTITY, MatZ, gamma_k, in_gamma1, minus_cf
from eisenlift.qseries import QSeries
from eisenlift.thetalift import (
    CAP_SIGN,
    RelationReport,
    boundary_zero,
    build_triangle,
    lift_cap,
    lift_cycle,
    lift_cycle_closed_form,
    lift_unimodular,
    polygon_weights,
    verify_polygon,
    verify_triangle,
)

from _support import admissible_triples, random_hyperbolic, random_sl2, random_word

P = 12


def G1(r, N, prec=P):
    return expand_G(1, r, N, prec)


def test_lift_cap_examples():
    N = 5
    assert lift_cap(IDENTITY, N, P) == expand_H(1, 0, N, P)
    assert lift_cap(MatZ(0, -1, 1, 0), N, P) == expand_G(2, N - 1, N, P)
    cf = minus_cf(1, 4)
    for k in range(cf.n):
        assert lift_cap(gamma_k(cf, k), 4, P) == expand_H(cf.qk(k - 1), cf.qk(k), 4, P)


def test_lift_unimodular_examples():
    N = 5
    assert lift_unimodular(IDENTITY, N, P).is_zero()
    assert lift_unimodular(MatZ(0, -1, 1, 0), N, P).is_zero()
    assert lift_unimodular(MatZ(-1, 1, -1, 0), N, P).is_zero()
    g = MatZ(1, 1, 2, 3)
    assert lift_unimodular(g, N, P) == -(G1(3, N) * G1(2, N))


def test_lift_cycle_simple():
    assert lift_cycle(IDENTITY, 4, P).is_zero()
    assert lift_cycle(MatZ(1, 4, 0, 1), 4, P) == expand_H(1, 0, 4, P) * 4
    with pytest.raises(ValueError):
        lift_cycle(MatZ(1, 1, 4, 5), 5, P)


def test_lift_cycle_reference_matrix():
    # (1,1;4,5) at N = 4: cap at oo with coefficient 3, caps 2 at 1, 1/2, 1/3, four symbols
    N = 4
    H = lambda p, q: expand_H(p, q, N, P)
    want = H(1, 0) * 3 + H(0, 1) * 2 + H(1, 2) * 2 + H(2, 3) * 2
    want = want + G1(1, N) * G1(0, N) + G1(2, N) * G1(1, N) + G1(3, N) * G1(2, N) + G1(0, N) * G1(3, N)
    got = lift_cycle(MatZ(1, 1, 4, 5), N, P)
    assert got == want
    assert got.is_rational()
    assert got.coeff(0) == Fraction(-1, 8)


@pytest.mark.parametrize("N", [4, 5, 6, 7, 8])
def test_closed_form_agrees(N):
    rng = random.Random(100 + N)
    for _ in range(15):
        g = random_word(N, rng)
        if g == IDENTITY:
            continue
        assert lift_cycle(g, N, 10) == lift_cycle_closed_form(g, N, 10)


@pytest.mark.parametrize("N", [4, 5, 6, 7, 8])
def test_additivity(N):
    rng = random.Random(N)
    for _ in range(10):
        a, b = random_word(N, rng, 4), random_word(N, rng, 4)
        assert lift_cycle(a @ b, N, 10) == lift_cycle(a, N, 10) + lift_cycle(b, N, 10)


@pytest.mark.parametrize("N", [4, 5, 7])
def test_inverse_and_conjugation(N):
    rng = random.Random(2 * N)
    for _ in range(10):
        g, d = random_word(N, rng, 4), random_word(N, rng, 3)
        assert lift_cycle(g.inv(), N, 10) == -lift_cycle(g, N, 10)
        assert lift_cycle(d @ g @ d.inv(), N, 10) == lift_cycle(g, N, 10)


@given(st.integers(0, 10**6), st.sampled_from([4, 5, 7]), st.integers(-20, 20))
def test_cap_representatives(seed, N, t):
    g = random_sl2(random.Random(seed))
    base = lift_cap(g, N, 8)
    assert lift_cap(g @ MatZ(1, t, 0, 1), N, 8) == base
    assert lift_cap(-g, N, 8) == base


def test_build_triangle():
    t = build_triangle(5, 1, 1, 3)
    assert sum(t.n) == 0 and sum(t.m) == 0
    assert t.m[0] * t.n[1] - t.m[1] * t.n[0] == 1
    assert all(g.det() == 1 for g in t.sides)
    with pytest.raises(ValueError):
        build_triangle(4, 1, 1, 2)


@pytest.mark.parametrize("N", [5, 7, 9, 11])
def test_build_triangle_all(N):
    for tri in admissible_triples(N):
        t = build_triangle(N, *tri)
        assert [(a - b) % N for a, b in zip(t.n, tri)] == [0, 0, 0]
        g12, g23, g31 = t.sides
        assert g12.det() == g23.det() == g31.det() == 1


def test_verify_triangle_anchor():
    rep = verify_triangle(5, 1, 1, 3, 20)
    assert rep.status == "verified" and rep.meaningful
    g = [G1(n, 5, 20) for n in (1, 1, 3)]
    lhs = g[0] * g[1] + g[1] * g[2] + g[2] * g[0]
    rhs = expand_G(2, 1, 5, 20) * 2 + expand_G(2, 3, 5, 20)
    for side in (lhs, rhs):
        assert side.coeff(0) == Fraction(3, 100)
        assert side.coeff(5) == Fraction(2, 5)
    assert expand_G(2, 1, 5, 3).coeff(0) == Fraction(-1, 300)
    assert expand_G(2, 1, 5, 3).coeff(5) == Fraction(1, 5)


def test_verify_triangle_N7_doubled_precision():
    a = verify_triangle(7, 1, 2, 4, 15)
    b = verify_triangle(7, 1, 2, 4, 30)
    assert a.status == b.status == "verified"
    assert b.nonzero_compared >= a.nonzero_compared


def test_verify_triangle_rejections():
    rep = verify_triangle(4, 1, 1, 2, 10)
    assert rep.status == "rejected" and rep.exit_code == 2 and "coprime" in rep.reason
    assert verify_triangle(5, 1, 1, 1, 10).status == "rejected"


def test_verify_triangle_detects_a_wrong_identity():
    # a relation with one index moved off the line n1 + n2 + n3 = 0 must fail when forced
    N, prec = 7, 10
    lhs = G1(1, N, prec) * G1(2, N, prec) + G1(2, N, prec) * G1(3, N, prec) + G1(3, N, prec) * G1(1, N, prec)
    rhs = expand_G(2, 1, N, prec) + expand_G(2, 2, N, prec) + expand_G(2, 3, N, prec)
    assert lhs.first_difference(rhs) is not None


def test_report_round_trip():
    rep = verify_triangle(5, 1, 1, 3, 10)
    assert RelationReport.from_dict(rep.to_dict()) == rep
    rej = verify_triangle(4, 1, 1, 2, 10)
    assert RelationReport.from_dict(rej.to_dict()) == rej


def test_cap_sign_reference_triangle():
    # the cap orientation is pinned by the N = 5 reference triangle
    verts = build_triangle(5, 1, 1, 3).vertices()
    assert boundary_zero(5, verts, 20, cap_sign=1).status == "verified"
    assert boundary_zero(5, verts, 20, cap_sign=-1).status == "failed"
    assert CAP_SIGN == 1


def test_boundary_zero_reversed():
    verts = build_triangle(7, 1, 2, 4).vertices()
    assert boundary_zero(7, verts[::-1], 15).status == "verified"


def _quad(N, rng):
    std = [(1, 0), (0, 1), (1, 2), (1, 1)]
    while True:
        g = random_sl2(rng, 12)
        vs = [(g.a * m + g.b * n, g.c * m + g.d * n) for m, n in std]
        if all(gcd(v[1], N) == 1 for v in vs):
            return vs


def test_polygon_triangle_reduces_to_triangle():
    verts = build_triangle(5, 1, 1, 3).vertices()
    eps, widths = polygon_weights(verts)
    assert eps == [-1, -1, -1] or eps == [1, 1, 1]
    assert verify_polygon(5, verts, 15).status == "verified"


def test_polygon_quadrilateral():
    rng = random.Random(3)
    vs = _quad(5, rng)
    eps, widths = polygon_weights(vs)
    assert sorted(map(abs, widths)) == [1, 1, 2, 2]
    assert verify_polygon(5, vs, 20).status == "verified"
    assert boundary_zero(5, vs, 20).status == "verified"


def test_polygon_rejects_bad_side():
    rep = verify_polygon(5, [(1, 1), (2, 1), (3, 2), (1, 3)], 10)
    assert rep.status == "rejected" and "side" in rep.reason
    assert verify_polygon(5, [(1, 1), (0, 1)], 10).status == "rejected"


def test_polygon_representative_sign_is_irrelevant():
    vs = _quad(7, random.Random(9))
    flipped = [vs[0], (-vs[1][0], -vs[1][1])] + vs[2:]
    assert verify_polygon(7, flipped, 12).status == "verified"


@pytest.mark.parametrize("N", [2, 3, 4, 6, 9, 12])
def test_no_quadrilateral_when_N_shares_a_factor_with_6(N):
    # any unimodular quadrilateral is u, v, u + v, u - v up to signs and order
    for nu in range(-20, 21):
        for nv in range(-20, 21):
            if gcd(nu, N) == 1 and gcd(nv, N) == 1:
                assert gcd(nu + nv, N) > 1 or gcd(nu - nv, N) > 1
