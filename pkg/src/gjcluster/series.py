"""Exact truncated power series in ``x`` with polynomial coefficients in ``t1..tk``.

Every generating function in the package lives in this ring: a dense list of
``N + 1`` coefficients (``x^0 .. x^N``), each a sparse multivariate polynomial
in the marking variables.  Scalars are exact rationals; floats are refused.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb

__all__ = [
    "ArityError",
    "NotAUnitError",
    "NotDivisibleError",
    "NoSeriesRootError",
    "TPoly",
    "XSeries",
    "rational",
    "series_arith",
    "series_invert",
    "series_div_exact",
    "series_sqrt",
    "coeff_extract",
]

DEFAULT_ORDER = 12


class ArityError(ValueError):
    """Operands disagree on truncation order or number of t-variables."""


class NotAUnitError(ArithmeticError):
    pass


class NotDivisibleError(ArithmeticError):
    pass


class NoSeriesRootError(ArithmeticError):
    pass


def rational(c):
    """Coerce ``c`` to an exact rational (``int`` when integral, else ``Fraction``)."""
    if isinstance(c, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, str):
        return rational(Fraction(c))
    raise TypeError(f"exact rational expected, got {type(c).__name__}")


def _is_scalar(c):
    return isinstance(c, (int, Fraction)) and not isinstance(c, bool)


class TPoly:
    """Sparse polynomial in ``t1..tk`` with rational coefficients.

    ``terms`` maps exponent tuples of length ``k`` to nonzero coefficients.
    Instances are immutable and hashable.
    """

    __slots__ = ("k", "terms", "_hash")

    def __init__(self, terms=None, k=0):
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != k or any(e < 0 for e in exps):
                raise ArityError(f"exponent vector {exps} does not have arity {k}")
            c = rational(c)
            if c:
                clean[exps] = rational(clean.get(exps, 0) + c)
                if not clean[exps]:
                    del clean[exps]
        self.k = k
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms, k):
        p = cls.__new__(cls)
        p.k = k
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c, k=0):
        c = rational(c)
        return cls._raw({(0,) * k: c} if c else {}, k)

    @classmethod
    def var(cls, v, k):
        """The variable ``t_v`` (1-based) in a ``k``-variable ring."""
        if not 1 <= v <= k:
            raise ArityError(f"variable t{v} out of range for arity {k}")
        exps = [0] * k
        exps[v - 1] = 1
        return cls._raw({tuple(exps): 1}, k)

    @classmethod
    def monomial(cls, exps, c=1):
        c = rational(c)
        exps = tuple(exps)
        return cls._raw({exps: c} if c else {}, len(exps))

    def _coerce(self, other):
        if isinstance(other, TPoly):
            if other.k != self.k:
                raise ArityError(f"t-arity mismatch: {self.k} vs {other.k}")
            return other
        if _is_scalar(other):
            return TPoly.constant(other, self.k)
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.k, 0)

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def __neg__(self):
        return TPoly._raw({e: -c for e, c in self.terms.items()}, self.k)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = rational(s)
            else:
                out.pop(e, None)
        return TPoly._raw(out, self.k)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other):
            c = rational(other)
            if not c:
                return TPoly._raw({}, self.k)
            return TPoly._raw({e: rational(v * c) for e, v in self.terms.items()}, self.k)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return TPoly._raw(_poly_mul(self.terms, other.terms), self.k)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("non-negative integer exponent required")
        out = TPoly.constant(1, self.k)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, TPoly):
            return self.k == other.k and self.terms == other.terms
        if _is_scalar(other):
            return self.terms == ({(0,) * self.k: other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.k, frozenset(self.terms.items())))
        return self._hash

    def coefficient(self, exps):
        return Fraction(self.terms.get(tuple(exps), 0))

    def items(self):
        """Terms sorted by total degree, then exponent vector."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def evaluate(self, values):
        """Value at ``t = values`` as an exact rational."""
        values = [rational(v) for v in values]
        if len(values) != self.k:
            raise ArityError(f"assignment has {len(values)} values, arity is {self.k}")
        total = 0
        for exps, c in self.terms.items():
            term = c
            for v, e in zip(values, exps):
                if e:
                    term = term * v**e
            total += term
        return Fraction(total)

    def shift(self, delta):
        """Substitute ``t_v -> t_v + delta`` for every variable."""
        delta = rational(delta)
        if not delta:
            return self
        out = {}
        for exps, c in self.terms.items():
            partial = {(): c}
            for e in exps:
                nxt = {}
                for head, hc in partial.items():
                    for j in range(e + 1):
                        w = hc * comb(e, j) * delta ** (e - j)
                        key = head + (j,)
                        nxt[key] = nxt.get(key, 0) + w
                partial = nxt
            for key, v in partial.items():
                s = out.get(key, 0) + v
                if s:
                    out[key] = rational(s)
                else:
                    out.pop(key, None)
        return TPoly._raw(out, self.k)

    def __repr__(self):
        return f"TPoly({format_tpoly(self)})"

    def __str__(self):
        return format_tpoly(self)


def _poly_mul(a, b):
    if not a or not b:
        return {}
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            s = out.get(e, 0) + ca * cb
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return {e: rational(c) for e, c in out.items()}


def _var_names(k):
    return ["t"] if k == 1 else [f"t{i + 1}" for i in range(k)]


def format_rational(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_tpoly(p, sep="*"):
    """Render in ascending degree, e.g. ``1 + 14*t + 6*t^2``."""
    if not p.terms:
        return "0"
    names = _var_names(p.k)
    parts = []
    for exps, c in p.items():
        mono = sep.join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e)
        c = Fraction(c)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not mono:
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)}{sep}{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


class XSeries:
    """Power series ``c_0 + c_1 x + ... + c_N x^N`` modulo ``x^(N+1)``.

    ``order`` is the inclusive truncation order ``N``; ``k`` is the number of
    marking variables every coefficient carries.
    """

    __slots__ = ("order", "k", "coeffs")

    def __init__(self, coeffs, order=None, k=None):
        coeffs = list(coeffs)
        if k is None:
            k = next((c.k for c in coeffs if isinstance(c, TPoly)), 0)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        polys = []
        for c in coeffs[: order + 1]:
            if not isinstance(c, TPoly):
                c = TPoly.constant(c, k)
            elif c.k != k:
                raise ArityError(f"coefficient arity {c.k} != {k}")
            polys.append(c)
        zero = TPoly._raw({}, k)
        polys.extend([zero] * (order + 1 - len(polys)))
        self.order = order
        self.k = k
        self.coeffs = tuple(polys)

    @classmethod
    def _raw(cls, coeffs, order, k):
        s = cls.__new__(cls)
        s.order = order
        s.k = k
        s.coeffs = tuple(coeffs)
        return s

    # constructors -----------------------------------------------------
    @classmethod
    def zero(cls, order=DEFAULT_ORDER, k=0):
        return cls([], order, k)

    @classmethod
    def one(cls, order=DEFAULT_ORDER, k=0):
        return cls([1], order, k)

    @classmethod
    def x(cls, order=DEFAULT_ORDER, k=0):
        return cls([0, 1], order, k)

    @classmethod
    def constant(cls, c, order=DEFAULT_ORDER, k=0):
        return cls([c], order, k)

    @classmethod
    def t(cls, v, order=DEFAULT_ORDER, k=1):
        return cls([TPoly.var(v, k)], order, k)

    # structure --------------------------------------------------------
    @property
    def N(self):
        return self.order

    def __len__(self):
        return self.order + 1

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def valuation(self):
        """Index of the first nonzero coefficient, or ``None`` for zero."""
        for i, c in enumerate(self.coeffs):
            if c.terms:
                return i
        return None

    def is_zero(self):
        return self.valuation() is None

    def truncate(self, order):
        if order > self.order:
            raise ArityError(f"cannot raise truncation order {self.order} to {order}")
        return XSeries._raw(self.coeffs[: order + 1], order, self.k)

    def with_arity(self, k):
        """Embed a t-free series into a ring with ``k`` marking variables."""
        if k == self.k:
            return self
        if self.k != 0:
            raise ArityError("only t-free series can be re-embedded")
        return XSeries._raw(
            [TPoly.constant(c.constant_term(), k) for c in self.coeffs], self.order, k
        )

    def _check(self, other):
        if other.order != self.order or other.k != self.k:
            raise ArityError(
                f"operands differ: (N={self.order}, k={self.k}) vs (N={other.order}, k={other.k})"
            )

    def _coerce(self, other):
        if isinstance(other, XSeries):
            self._check(other)
            return other
        if isinstance(other, TPoly) or _is_scalar(other):
            return XSeries([other], self.order, self.k)
        return NotImplemented

    # arithmetic -------------------------------------------------------
    def __neg__(self):
        return XSeries._raw([-c for c in self.coeffs], self.order, self.k)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return XSeries._raw(
            [a + b for a, b in zip(self.coeffs, other.coeffs)], self.order, self.k
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return XSeries._raw(
            [a - b for a, b in zip(self.coeffs, other.coeffs)], self.order, self.k
        )

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        """Multiply every coefficient by a scalar or t-polynomial."""
        if isinstance(c, TPoly) and c.k != self.k:
            raise ArityError("t-arity mismatch in scale")
        return XSeries._raw([a * c for a in self.coeffs], self.order, self.k)

    def __mul__(self, other):
        if _is_scalar(other) or isinstance(other, TPoly):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        N = self.order
        a = [c.terms for c in self.coeffs]
        b = [c.terms for c in other.coeffs]
        out = [None] * (N + 1)
        for n in range(N + 1):
            acc = {}
            for i in range(n + 1):
                ai, bj = a[i], b[n - i]
                if not ai or not bj:
                    continue
                for ea, ca in ai.items():
                    for eb, cb in bj.items():
                        e = tuple(x + y for x, y in zip(ea, eb))
                        acc[e] = acc.get(e, 0) + ca * cb
            out[n] = TPoly._raw({e: rational(c) for e, c in acc.items() if c}, self.k)
        return XSeries._raw(out, N, self.k)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("integer exponent required")
        if n < 0:
            return self.invert() ** (-n)
        out = XSeries.one(self.order, self.k)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift_x(self, d):
        """Multiply by ``x^d`` (``d >= 0``), dropping what falls past ``N``."""
        zero = TPoly._raw({}, self.k)
        return XSeries._raw(
            ([zero] * d + list(self.coeffs))[: self.order + 1], self.order, self.k
        )

    def invert(self):
        """Multiplicative inverse; the constant coefficient must be a nonzero rational."""
        c0 = self.coeffs[0]
        if not c0.terms or not c0.is_constant():
            raise NotAUnitError(f"constant coefficient {c0} is not a nonzero rational")
        inv0 = Fraction(1) / c0.constant_term()
        g = [TPoly.constant(inv0, self.k)]
        f = self.coeffs
        for n in range(1, self.order + 1):
            acc = TPoly._raw({}, self.k)
            for i in range(1, n + 1):
                if f[i].terms and g[n - i].terms:
                    acc = acc + f[i] * g[n - i]
            g.append(acc * (-inv0))
        return XSeries._raw(g, self.order, self.k)

    def div_exact(self, den):
        """Quotient ``self / den`` where ``den = x^d * unit``.

        The result is exact modulo ``x^(N - d + 1)`` and carries order ``N - d``.
        """
        den = self._coerce(den)
        if den is NotImplemented:
            raise TypeError("divisor must be a series or scalar")
        d = den.valuation()
        if d is None:
            raise ZeroDivisionError("division by the zero series")
        v = self.valuation()
        if v is not None and v < d:
            raise NotDivisibleError(f"numerator has x-order {v} < divisor order {d}")
        order = self.order - d
        num = XSeries._raw(self.coeffs[d:], order, self.k)
        unit = XSeries._raw(den.coeffs[d:], order, self.k)
        return num * unit.invert()

    def __truediv__(self, other):
        if _is_scalar(other):
            return self.scale(Fraction(1) / rational(other))
        return self.div_exact(other)

    def __rtruediv__(self, other):
        return XSeries([other], self.order, self.k).div_exact(self)

    def sqrt(self):
        """The square root with constant coefficient 1 (requires ``c_0 = 1``)."""
        if self.coeffs[0] != 1:
            raise NoSeriesRootError(f"constant coefficient {self.coeffs[0]} is not 1")
        f = self.coeffs
        g = [TPoly.constant(1, self.k)]
        half = Fraction(1, 2)
        for n in range(1, self.order + 1):
            acc = f[n]
            for i in range(1, n):
                if g[i].terms and g[n - i].terms:
                    acc = acc - g[i] * g[n - i]
            g.append(acc * half)
        return XSeries._raw(g, self.order, self.k)

    # t handling -------------------------------------------------------
    def shift_t(self, delta):
        """Substitute ``t_v -> t_v + delta`` in every coefficient."""
        return XSeries._raw([c.shift(delta) for c in self.coeffs], self.order, self.k)

    def evaluate_t(self, values):
        """Specialise all marking variables; the result is t-free (arity 0)."""
        return XSeries._raw(
            [TPoly.constant(c.evaluate(values), 0) for c in self.coeffs], self.order, 0
        )

    def coeff(self, n, t=None):
        """``[x^n]`` as a ``TPoly``, or as a rational when ``t`` is given."""
        if not 0 <= n <= self.order:
            raise IndexError(f"coefficient x^{n} outside truncation order {self.order}")
        c = self.coeffs[n]
        if t is None:
            return c
        return c.evaluate(t)

    def rationals(self):
        """Coefficient list of a t-free series as ``Fraction`` values."""
        if self.k:
            raise ArityError("series still depends on t; evaluate_t first")
        return [Fraction(c.constant_term()) for c in self.coeffs]

    def integers(self):
        vals = self.rationals()
        for n, v in enumerate(vals):
            if v.denominator != 1:
                raise ValueError(f"coefficient of x^{n} is not an integer: {v}")
        return [int(v) for v in vals]

    def __eq__(self, other):
        if isinstance(other, XSeries):
            return (self.order, self.k, self.coeffs) == (other.order, other.k, other.coeffs)
        return NotImplemented

    def __hash__(self):
        return hash((self.order, self.k, self.coeffs))

    def __repr__(self):
        terms = []
        for n, c in enumerate(self.coeffs):
            if c.terms:
                body = str(c)
                if len(c.terms) > 1:
                    body = f"({body})"
                terms.append(body if n == 0 else f"{body}*x^{n}")
        return f"XSeries({' + '.join(terms) or '0'}; N={self.order}, k={self.k})"


def series_arith(f, g, op):
    if op == "scale":
        return f.scale(g)
    if not isinstance(g, XSeries) or not isinstance(f, XSeries):
        raise TypeError("series_arith expects two series (or a scalar for 'scale')")
    f._check(g)
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown op {op!r}")


def series_invert(f):
    return f.invert()


def series_div_exact(num, den):
    return num.div_exact(den)


def series_sqrt(f):
    return f.sqrt()


def coeff_extract(f, n, t_assignment=None):
    return f.coeff(n, t_assignment)
