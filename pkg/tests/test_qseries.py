from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from eisenlift.exactcore import CycElem, zeta_pow
from eisenlift.qseries import QSeries, invert, mul, q_ddq

N = 5


def q(e=1, level=N, prec=50):
    """q^(e/level) as a series."""
    return QSeries.monomial(level, e, 1, prec)


@st.composite
def series(draw, level=N, zero_const=False):
    prec = draw(st.integers(3, 25))
    n = draw(st.integers(0, 8))
    terms = {}
    for _ in range(n):
        e = draw(st.integers(0, prec - 1))
        terms[e] = CycElem(level, draw(st.lists(st.integers(-6, 6), min_size=4, max_size=4)))
    if zero_const:
        terms.pop(0, None)
    return QSeries(level, terms, prec)


def test_examples():
    one = QSeries.one(N, 20)
    x = q(N)  # q^1
    assert (one + x) + (one - x) == QSeries(N, {0: 2}, 20)
    assert (QSeries.one(N, 10) + QSeries.one(N, 7)).prec == 7
    assert (one + x) * (one - x) == one - x * x
    geo = invert(one - x)
    assert geo.terms == {e: CycElem.rational(N, 1) for e in range(0, 20, N)}
    assert invert(QSeries(N, {0: 2}, 20)) == QSeries(N, {0: Fraction(1, 2)}, 20)


def test_invert_with_roots_of_unity():
    z = zeta_pow(N, 1)
    a = QSeries(N, {0: 1, 1: -z}, 12)
    inv = invert(a)
    for e in range(12):
        assert inv[e] == zeta_pow(N, e)
    assert mul(a, inv) == QSeries.one(N, 12)


def test_mul_precision_rule():
    a = QSeries(N, {1: 1}, 10)  # q^(1/5) + O(q^(10/5))
    b = QSeries(N, {1: 1}, 10)
    assert mul(a, b).prec == 11


def test_q_ddq_examples():
    assert q_ddq(QSeries.one(N, 10)).is_zero()
    assert q_ddq(q(N)) == q(N)
    assert q_ddq(q(2)) == QSeries(N, {2: Fraction(2, 5)}, 50)


def test_getitem_beyond_precision():
    s = QSeries.one(N, 5)
    assert s[4] == 0
    with pytest.raises(IndexError):
        s[5]


def test_rejects_negative_exponent_and_bad_prec():
    with pytest.raises(ValueError):
        QSeries(N, {-1: 1}, 5)
    with pytest.raises(ValueError):
        QSeries(N, {}, 0)


def test_level_mismatch():
    with pytest.raises(ValueError):
        QSeries.one(4, 5) + QSeries.one(5, 5)


def test_format():
    s = QSeries(5, {0: Fraction(3, 10), 5: 1, 10: 1, 15: 1}, 25)
    assert s.format(integral=True) == "3/10 + q + q^2 + q^3"
    assert QSeries(5, {2: -1}, 10).format() == "-q^(2/5)"


@given(series(), series(), series())
def test_ring_laws(a, b, c):
    assert mul(a, b) == mul(b, a)
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, b + c) == mul(a, b) + mul(a, c)


@given(series())
def test_invert_is_inverse(a):
    if a.terms.get(0) is None:
        with pytest.raises(ZeroDivisionError):
            invert(a)
        return
    assert mul(a, invert(a)) == QSeries.one(N, a.prec)


@given(series(), series())
def test_q_ddq_leibniz(a, b):
    assert q_ddq(mul(a, b)) == mul(q_ddq(a), b) + mul(a, q_ddq(b))


@given(series())
def test_json_round_trip(a):
    back = QSeries.from_json(a.to_json())
    assert back == a and back.prec == a.prec


@given(series())
def test_rescale(a):
    b = a.rescale(3)
    assert b.prec == 3 * a.prec
    assert all(e % 3 == 0 for e in b.terms)
