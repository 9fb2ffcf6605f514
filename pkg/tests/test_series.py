from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gjcluster.series import (
    ArityError,
    NoSeriesRootError,
    NotAUnitError,
    NotDivisibleError,
    TPoly,
    XSeries,
    coeff_extract,
    format_tpoly,
    series_arith,
    series_div_exact,
    series_invert,
    series_sqrt,
)

N = 8


def geometric(order):
    return XSeries([1] * (order + 1), order)


def test_telescoping():
    x = XSeries.x(N)
    assert series_arith(1 - x, geometric(N), "mul") == XSeries.one(N)


def test_add_two_variables():
    x = XSeries.x(N, 2)
    s = series_arith(x.scale(TPoly.var(1, 2)), x.scale(TPoly.var(2, 2)), "add")
    assert s.coeff(1) == TPoly.var(1, 2) + TPoly.var(2, 2)


def test_truncation_contract():
    x = XSeries.x(3, 1)
    sq = (x * x).scale(TPoly.var(1, 1))
    assert (sq * sq).is_zero()


def test_mismatched_order_or_arity():
    with pytest.raises(ArityError):
        XSeries.x(4) + XSeries.x(5)
    with pytest.raises(ArityError):
        XSeries.x(4, 1) * XSeries.x(4, 2)


def test_floats_refused():
    with pytest.raises(TypeError):
        XSeries.x(3).scale(0.5)


def test_invert_examples():
    x = XSeries.x(N)
    assert series_invert(1 - x) == geometric(N)
    assert series_invert(1 - 3 * x).integers() == [3**n for n in range(N + 1)]
    a = [1, 1]
    while len(a) <= N:
        a.append(a[-1] + 4 * a[-2])
    assert series_invert(1 - x - 4 * x * x).integers() == a


def test_invert_needs_unit():
    x = XSeries.x(N, 1)
    with pytest.raises(NotAUnitError):
        series_invert(x)
    with pytest.raises(NotAUnitError):
        series_invert(XSeries.constant(TPoly.var(1, 1), N, 1))


def test_div_exact_examples():
    x = XSeries.x(N)
    q = series_div_exact(x * x + x**3, x * x)
    assert q.N == N - 2
    assert q == (1 + x).truncate(N - 2)
    num = 2 * x - x * x + x**4
    den = 1 - x - 3 * x * x + 2 * x**3 - x**5
    f = series_div_exact(num, den)
    assert f.integers()[:4] == [0, 2, 1, 7]
    assert f * den == num


def test_div_exact_errors():
    x = XSeries.x(N)
    with pytest.raises(NotDivisibleError):
        series_div_exact(1 + x, x * x)
    with pytest.raises(ZeroDivisionError):
        series_div_exact(x, XSeries.zero(N))


def test_sqrt_examples():
    x = XSeries.x(N + 1)
    assert series_sqrt(XSeries.one(N)) == XSeries.one(N)
    catalan = series_div_exact(1 - series_sqrt(1 - 4 * x), 2 * x)
    assert catalan.integers() == [comb(2 * n, n) // (n + 1) for n in range(N + 1)]
    x2 = XSeries.x(N + 2)
    motzkin = series_div_exact(1 - x2 - series_sqrt(1 - 2 * x2 - 3 * x2 * x2), 2 * x2 * x2)
    assert motzkin.integers()[:7] == [1, 1, 2, 4, 9, 21, 51]


def test_sqrt_needs_unit_constant():
    with pytest.raises(NoSeriesRootError):
        series_sqrt(XSeries.constant(4, N))


def test_coeff_extract():
    x = XSeries.x(N, 1)
    f = 1 + (x**2).scale(TPoly.var(1, 1) * 3 + 1)
    assert coeff_extract(f, 0) == 1
    assert coeff_extract(f, 2, [2]) == 7
    with pytest.raises(IndexError):
        coeff_extract(f, N + 1)


def test_format():
    t = TPoly.var(1, 1)
    assert format_tpoly(1 + 14 * t + 6 * t * t) == "1 + 14*t + 6*t^2"
    t1, t2 = TPoly.var(1, 2), TPoly.var(2, 2)
    assert format_tpoly(t1 * t1 * t2 - Fraction(1, 2)) == "-1/2 + t1^2*t2"


# -- ring properties ----------------------------------------------------------

small = st.integers(-3, 3)
ORDER = 6


@st.composite
def tpolys(draw, k=2):
    terms = draw(st.dictionaries(st.tuples(*[st.integers(0, 2)] * k), small, max_size=3))
    return TPoly(terms, k)


@st.composite
def series(draw, unit=False):
    coeffs = draw(st.lists(tpolys(), min_size=ORDER + 1, max_size=ORDER + 1))
    if unit:
        coeffs[0] = TPoly.constant(draw(st.sampled_from([1, -1, 2, Fraction(1, 3)])), 2)
    return XSeries(coeffs, ORDER, 2)


@settings(max_examples=40, deadline=None)
@given(series(), series(), series())
def test_ring_axioms(f, g, h):
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + g - g == f


@settings(max_examples=40, deadline=None)
@given(series(unit=True))
def test_invert_properties(f):
    assert f * f.invert() == XSeries.one(ORDER, 2)
    assert f.invert().invert() == f


@settings(max_examples=40, deadline=None)
@given(series(), series(unit=True))
def test_div_exact_recovers(f, g):
    assert series_div_exact(f * g, g) == f


@settings(max_examples=40, deadline=None)
@given(series())
def test_sqrt_properties(f):
    f = XSeries([TPoly.constant(1, 2)] + list(f.coeffs[1:]), ORDER, 2)
    r = series_sqrt(f)
    assert r * r == f
    assert r.coeff(0) == 1
    assert series_sqrt(f * f) == f


@settings(max_examples=30, deadline=None)
@given(series(), st.integers(-2, 2))
def test_shift_round_trip(f, d):
    assert f.shift_t(d).shift_t(-d) == f
    vals = [Fraction(1), Fraction(-1)]
    assert f.shift_t(d).evaluate_t(vals) == f.evaluate_t([v + d for v in vals])
