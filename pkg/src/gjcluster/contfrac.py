"""Continued fractions, determinant recurrences and radical closed forms.

These give routes to the path generating functions that avoid matrix
inversion entirely; they exist mainly to cross-check ``paths``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .network import SeriesMatrix, invert_I_minus, step_matrix
from .paths import PathModel, build_network, path_homomorphism, resolve_bound, statistic
from .series import NotAUnitError, TPoly, XSeries

__all__ = [
    "CFSpec",
    "CFEvaluationError",
    "PolyRecurrence",
    "cf_eval",
    "recurrence_seq",
    "stat_recurrence",
    "stat_cf",
    "bounded_ratio",
    "asc_restricted_cf",
    "pv_restricted_cf",
    "plateau_closed_entry",
    "pv_c_terms",
    "closed_form",
    "CLOSED_FORMS",
    "corollary_values",
    "corollary_check",
    "COROLLARIES",
    "fib",
]


class CFEvaluationError(ArithmeticError):
    def __init__(self, level, msg):
        super().__init__(f"level {level}: {msg}")
        self.level = level


@dataclass(frozen=True)
class CFSpec:
    """``a0 + b1/(a1 + b2/(a2 + ... + bm/am))``; depth is ``len(partials)``."""

    a0: XSeries
    partials: tuple

    @property
    def depth(self):
        return len(self.partials)


def cf_eval(spec, order=None):
    """Evaluate bottom-up; each intermediate denominator must be a unit."""
    if not spec.partials:
        value = spec.a0
    else:
        value = spec.partials[-1][1]
        for level in range(spec.depth - 1, -1, -1):
            b = spec.partials[level][0]
            try:
                frac = b * value.invert()
            except NotAUnitError as exc:
                raise CFEvaluationError(level + 1, str(exc)) from None
            value = (spec.a0 if level == 0 else spec.partials[level - 1][1]) + frac
    return value if order is None else value.truncate(order)


@dataclass(frozen=True)
class PolyRecurrence:
    """``P_m = alpha * P_(m-1) - beta * P_(m-2)`` from seeds ``P_0, P_1``."""

    p0: XSeries
    p1: XSeries
    alpha: XSeries
    beta: XSeries


def recurrence_seq(rec, m):
    seq = [rec.p0, rec.p1]
    while len(seq) <= m:
        seq.append(rec.alpha * seq[-1] - rec.beta * seq[-2])
    return seq[: m + 1]


def pv_c_terms(order):
    """The three correction series for peaks (t1) and valleys (t2)."""
    x = XSeries.x(order, 2)
    s1, s2 = TPoly.var(1, 2) - 1, TPoly.var(2, 2) - 1
    den = (1 - (x * x).scale(s1 * s2)).invert()
    return (x * x).scale(s1) * den, (x * x).scale(s2) * den, (x**3).scale(s1 * s2) * den


def _level_terms(stat, order):
    """(first diagonal, middle diagonal, last diagonal, off-diagonal product)."""
    stat = statistic(stat)
    k = stat.arity
    x = XSeries.x(order, k)
    if stat.name == "pv":
        c1, c2, c3 = pv_c_terms(order)
        off = (x + c3) * (x + c3)
        return 1 - x - c1, 1 - x - c1 - c2, 1 - x - c2, off
    t1 = TPoly.var(1, 1) - 1
    if stat.name == "asc":
        a = 1 - x - (x * x).scale(t1)
        return a, a, 1 - x, x * x + (x**3).scale(t1)
    if stat.name in ("plt_k", "peak", "plt"):
        if stat.name == "plt":
            corr = (x * x).scale(t1) * (1 - x).invert()
        else:
            kk = stat.k if stat.name == "plt_k" else 0
            corr = (x ** (kk + 2)).scale(t1)
        a = 1 - x - corr
        return a, a, 1 - x, x * x
    raise ValueError(f"no continued fraction for {stat}")


def stat_cf(stat, m, order=12):
    """Depth ``m + 1`` continued fraction for the height-``m`` generating function."""
    if m < 1:
        raise ValueError("m must be >= 1")
    first, mid, last, off = _level_terms(stat, order)
    zero = XSeries.zero(order, first.k)
    partials = [(XSeries.one(order, first.k), first)]
    partials += [(-off, mid)] * (m - 1)
    partials.append((-off, last))
    return CFSpec(zero, tuple(partials))


def stat_recurrence(stat, order=12):
    """Determinant recurrence whose consecutive ratios give the bounded series."""
    stat = statistic(stat)
    first, mid, last, off = _level_terms(stat, order)
    one = XSeries.one(order, first.k)
    # P_1 is the one-row determinant of the bottom corner
    return PolyRecurrence(one, last, mid, off)


def bounded_ratio(stat, m, order=12):
    """Height-``m`` generating function as a ratio of recurrence terms."""
    stat = statistic(stat)
    if m < 1:
        raise ValueError("m must be >= 1")
    seq = recurrence_seq(stat_recurrence(stat, order), m + 1)
    if stat.name == "pv":
        first, _, _, off = _level_terms(stat, order)
        return seq[m].div_exact(first * seq[m] - off * seq[m - 1])
    return seq[m].div_exact(seq[m + 1])


def asc_restricted_cf(allowed, m, order=12):
    """Continued fraction for ascents ending only at heights in ``allowed``."""
    x = XSeries.x(order)
    corr = [x * x if i not in allowed else XSeries.zero(order) for i in range(m + 2)]
    partials = [(XSeries.one(order), 1 - x + corr[1])]
    for i in range(1, m + 1):
        a = 1 - x + corr[i + 1] if i < m else 1 - x
        partials.append((-(x * x - x * corr[i]), a))
    return CFSpec(XSeries.zero(order), tuple(partials))


def _pv_restricted_terms(peaks, valleys, order):
    x = XSeries.x(order)
    inv = (1 - x * x).invert()
    zero = XSeries.zero(order)

    def c1(i):
        if i in peaks:
            return zero
        return x * x * inv if (i + 1) not in valleys else x * x

    def c2(i):
        if i in valleys:
            return zero
        return x * x * inv if (i - 1) not in peaks else x * x

    def c3(i):
        return x**3 * inv if i not in peaks and (i + 1) not in valleys else zero

    return x, c1, c2, c3


def pv_restricted_cf(peaks, valleys, m, order=12):
    """Continued fraction for peaks in ``peaks`` and valleys in ``valleys`` (bound ``m``)."""
    x, c1, c2, c3 = _pv_restricted_terms(peaks, valleys, order)
    partials = [(XSeries.one(order), 1 - x + c1(0))]
    for i in range(1, m + 1):
        a = 1 - x + c2(i) + (c1(i) if i < m else 0)
        partials.append((-((x + c3(i - 1)) ** 2), a))
    return CFSpec(XSeries.zero(order), tuple(partials))


def plateau_closed_entry(m, order=12):
    """All-plateau series with the cluster matrix entries summed in closed form.

    Each nonzero cluster entry is ``U (1 - F)^(-1) D (t - 1)``, so no pattern
    set truncation is involved.
    """
    model = PathModel("motzkin", m)
    net = build_network(model)
    hom = path_homomorphism(model, order, 1)
    x = XSeries.x(order, 1)
    entry = ((x * x) * (1 - x).invert()).scale(TPoly.var(1, 1) - 1)
    steps = step_matrix(net, hom)
    z = XSeries.zero(order, 1)
    rows = [[entry if i == j and i < m else z for j in range(m + 1)] for i in range(m + 1)]
    return invert_I_minus(steps + SeriesMatrix(rows), columns=[0])[0, 0]


# -- closed forms ---------------------------------------------------------

def _root_form(num_poly, radicand, den, order, branch="-"):
    """``(num -/+ sqrt(radicand)) / den`` with exactness tracked through x-shifts."""
    root = radicand.sqrt()
    num = num_poly - root if branch == "-" else num_poly + root
    return num.div_exact(den)


def _closed_asc(order, branch="-"):
    W = order + 2
    x, s = XSeries.x(W, 1), TPoly.var(1, 1) - 1
    b = 1 - x - (x * x).scale(s)
    rad = 1 - 2 * x - (x * x).scale(2 * TPoly.var(1, 1) + 1) - (x**3).scale(2 * s) + (x**4).scale(s * s)
    return _root_form(b, rad, 2 * (x * x + (x**3).scale(s)), W, branch).truncate(order)


def _closed_plt_k(k, order, branch="-"):
    W = order + 2
    x, s = XSeries.x(W, 1), TPoly.var(1, 1) - 1
    b = 1 - x - (x ** (k + 2)).scale(s)
    return _root_form(b, b * b - 4 * x * x, 2 * x * x, W, branch).truncate(order)


def _closed_plt(order, branch="-"):
    W = order + 2
    x, t = XSeries.x(W, 1), TPoly.var(1, 1)
    b = 1 - 2 * x - (x * x).scale(t - 2)
    rad = 1 - 4 * x - (x * x).scale(2 * (t - 2)) + (x**3).scale(4 * t) + (x**4).scale(t * (t - 4))
    return _root_form(b, rad, 2 * (x * x - x**3), W, branch).truncate(order)


def _closed_pv(order, branch="+"):
    x = XSeries.x(order, 2)
    c1, c2, c3 = pv_c_terms(order)
    rad = (1 - x - c1 - c2) ** 2 - 4 * (x + c3) ** 2
    root = rad.sqrt()
    den = 1 - x - c1 + c2 + (root if branch == "+" else -root)
    return XSeries.constant(2, order, 2).div_exact(den)


def _poly(coeffs, order):
    return XSeries(coeffs, order, 0)


def _restricted_form(num, rad, den, order):
    W = order + 2
    return _root_form(_poly(num, W), _poly(rad, W), _poly(den, W), W).truncate(order)


def _over_root(num, base, rad, order):
    # num / (base + sqrt(rad))
    return _poly(num, order).div_exact(_poly(base, order) + _poly(rad, order).sqrt())


_RAD_E = [1, -4, 4, 0, -4, 4]
_RAD_PV = [1, -4, 4, 0, -4]
_RAD_PV2 = [1, -4, 6, -8, 5, -4, 4]

CLOSED_FORMS = {
    "asc": _closed_asc,
    "plt": _closed_plt,
    "pv": _closed_pv,
    "peak": lambda order: _closed_plt_k(0, order),
    "motzkin": lambda order: _restricted_form([1, -1], [1, -2, -3], [0, 0, 2], order),
    "catalan": lambda order: _restricted_form([1], [1, -4], [0, 2], order),
    "asc-E": lambda order: _restricted_form([1, -2, 2], _RAD_E, [0, 0, 2, -2, 2], order),
    "asc-O": lambda order: _restricted_form([1, -2, 2, -2], _RAD_E, [0, 0, 2, -4, 2], order),
    "pv-O-E0": lambda order: _restricted_form([1, -2, 2, 0, -2], _RAD_PV, [0, 0, 2, -2, 0, 2], order),
    "pv-E0-O": lambda order: _over_root([2, -2, 0, 2], [1, -2, 0, 2], _RAD_PV, order),
    "pv-O-O": lambda order: _over_root([2, -2], [1, -2, 1], _RAD_PV2, order),
    "pv-E0-E0": lambda order: _restricted_form([1, -2, 3, -2], _RAD_PV2, [0, 0, 2, -2], order),
}


def closed_form(name, order=12):
    """Evaluate a named radical closed form through ``x^order``.

    Names: ``asc``, ``peak``, ``pltK``, ``plt``, ``pv``, ``motzkin``,
    ``catalan`` and the parity-restricted ``asc-E``, ``asc-O``,
    ``pv-O-E0``, ``pv-E0-O``, ``pv-O-O``, ``pv-E0-E0``.
    """
    if name in CLOSED_FORMS:
        out = CLOSED_FORMS[name](order)
    elif name.startswith("plt") and name[3:].isdigit():
        out = _closed_plt_k(int(name[3:]), order)
    else:
        raise KeyError(f"unknown closed form {name!r}")
    if out.coeffs[0] != 1:
        raise ArithmeticError(f"{name}: constant coefficient {out.coeffs[0]} != 1 (wrong branch)")
    return out


# -- corollaries ------------------------------------------------------------

@lru_cache(maxsize=None)
def fib(n):
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def _one_peak_sum(n):
    return sum(comb(k + 1, n - k + 1) * comb(k, n - k) for k in range(n - 1))


COROLLARIES = {
    # name: (formula, statistic, t-degree, length as a function of n, min n)
    "one-ascent": (lambda n: fib(n + 3) - n - 2, "asc", lambda n: 1, lambda n: n, 1),
    "one-plateau": (lambda n: 2 ** (n - 1) - 1, "plt", lambda n: 1, lambda n: n, 1),
    "two-plateaus": (lambda n: Fraction((n - 3) * n) * Fraction(2) ** (n - 6), "plt", lambda n: 2, lambda n: n, 3),
    "max-ascents": (lambda n: comb(n + 2, 2), "asc", lambda n: n, lambda n: 2 * n + 1, 0),
    "one-peak": (_one_peak_sum, "peak", lambda n: 1, lambda n: n, 2),
}


def corollary_values(name, n):
    """Closed-form integer from the named corollary."""
    formula, *_, n_min = COROLLARIES[name]
    if n < n_min:
        raise ValueError(f"{name} holds for n >= {n_min}")
    v = Fraction(formula(n))
    if v.denominator != 1:
        raise ArithmeticError(f"{name}({n}) = {v} is not an integer")
    return int(v)


def corollary_check(name, n, series=None):
    """``(formula value, extracted coefficient)`` for one corollary instance."""
    _, stat, degree, length, _ = COROLLARIES[name]
    L = length(n)
    if series is None:
        series = closed_form(stat, L)
    return corollary_values(name, n), int(series.coeff(L).coefficient((degree(n),)))
