"""Exact polynomials in the Euler characteristic and truncated q-series.

Everything here is exact: coefficients are :class:`fractions.Fraction`
values, the variable ``x`` stands for the Euler characteristic of the
Calabi-Yau threefold, and power series are truncated at a fixed order that
never grows behind the caller's back.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Mapping, Sequence, Union

Scalar = Union[int, Fraction]


class SeriesError(ValueError):
    """Base class for series-layer failures."""


class OrderMismatchError(SeriesError):
    pass


class SeriesDomainError(SeriesError):
    pass


def _trim(coeffs: Iterable[Scalar]) -> tuple:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class ChiPoly:
    """Polynomial in ``x`` (the Euler characteristic) over the rationals.

    Stored densely as a tuple of coefficients, lowest degree first, with
    trailing zeros stripped; the zero polynomial is the empty tuple.
    Instances are immutable and hashable.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        self._c = _trim(coeffs)

    @classmethod
    def from_mapping(cls, terms: Mapping[int, Scalar]) -> "ChiPoly":
        if not terms:
            return ZERO
        if min(terms) < 0:
            raise ValueError("negative degree")
        dense = [Fraction(0)] * (max(terms) + 1)
        for d, c in terms.items():
            dense[d] += Fraction(c)
        return cls(dense)

    @classmethod
    def const(cls, c: Scalar) -> "ChiPoly":
        return cls((c,))

    @classmethod
    def x(cls) -> "ChiPoly":
        return cls((0, 1))

    @property
    def coeffs(self) -> dict:
        """Sparse view ``{degree: coefficient}`` without zero entries."""
        return {d: c for d, c in enumerate(self._c) if c != 0}

    @property
    def dense(self) -> tuple:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    def __getitem__(self, d: int) -> Fraction:
        return self._c[d] if 0 <= d < len(self._c) else Fraction(0)

    def is_zero(self) -> bool:
        return not self._c

    def is_constant(self) -> bool:
        return len(self._c) <= 1

    # arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "ChiPoly":
        if isinstance(other, ChiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return ChiPoly((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return ChiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return ChiPoly(-c for c in self._c)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return ZERO
            return ChiPoly(c * other for c in self._c)
        if not isinstance(other, ChiPoly):
            return NotImplemented
        a, b = self._c, other._c
        if not a or not b:
            return ZERO
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return ChiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._c == other._c

    def __hash__(self):
        return hash(self._c)

    def __call__(self, value: Scalar) -> Fraction:
        """Evaluate at ``x = value`` (Horner)."""
        acc = Fraction(0)
        for c in reversed(self._c):
            acc = acc * value + c
        return acc

    evaluate = __call__

    def __repr__(self):
        return f"ChiPoly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self, var="χ")


ZERO = ChiPoly()
ONE = ChiPoly((1,))


def chi_symbol(chi: Scalar | None = None) -> ChiPoly:
    """The Euler characteristic: the formal ``x`` or a specialised constant."""
    return ChiPoly.x() if chi is None else ChiPoly.const(chi)


def format_rational(c: Fraction) -> str:
    """Canonical ``p/q`` text, ``p`` alone when the denominator is one."""
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def format_poly(p: ChiPoly, var: str = "x") -> str:
    """Render terms in decreasing degree, e.g. ``-1/6*x^3 - 5/2*x^2``."""
    terms = sorted(p.coeffs.items(), reverse=True)
    if not terms:
        return "0"
    pieces = []
    for d, c in terms:
        mag = abs(c)
        if d == 0:
            body = format_rational(mag)
        else:
            mono = var if d == 1 else f"{var}^{d}"
            body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
        if not pieces:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append((" - " if c < 0 else " + ") + body)
    return "".join(pieces)


def _as_poly(c) -> ChiPoly:
    return c if isinstance(c, ChiPoly) else ChiPoly.const(c)


class PowerSeries:
    """Power series in ``q`` truncated after ``q**order``.

    Coefficients are :class:`ChiPoly`; index ``n`` holds the ``q**n``
    coefficient. Binary operations demand equal orders.
    """

    __slots__ = ("order", "_a")

    def __init__(self, coeffs: Sequence, order: int | None = None):
        coeffs = [_as_poly(c) for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("order must be >= 0")
        if len(coeffs) > order + 1:
            coeffs = coeffs[: order + 1]
        coeffs += [ZERO] * (order + 1 - len(coeffs))
        self.order = order
        self._a = tuple(coeffs)

    @classmethod
    def one(cls, order: int) -> "PowerSeries":
        return cls([ONE], order)

    @classmethod
    def zero(cls, order: int) -> "PowerSeries":
        return cls([], order)

    @classmethod
    def q(cls, order: int) -> "PowerSeries":
        return cls([ZERO, ONE], order)

    @property
    def coeffs(self) -> tuple:
        return self._a

    def __getitem__(self, n: int) -> ChiPoly:
        if not 0 <= n <= self.order:
            raise IndexError(f"q^{n} is beyond truncation order {self.order}")
        return self._a[n]

    def __len__(self):
        return self.order + 1

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise OrderMismatchError("cannot extend a truncated series")
        return PowerSeries(self._a[: order + 1], order)

    def _check(self, other: "PowerSeries"):
        if not isinstance(other, PowerSeries):
            raise TypeError("expected PowerSeries")
        if other.order != self.order:
            raise OrderMismatchError(
                f"truncation orders differ: {self.order} vs {other.order}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, ChiPoly)):
            return PowerSeries([self._a[0] + other, *self._a[1:]], self.order)
        self._check(other)
        return PowerSeries([a + b for a, b in zip(self._a, other._a)], self.order)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-a for a in self._a], self.order)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ChiPoly)):
            return self.scale(other)
        return series_mul(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "PowerSeries":
        return PowerSeries([a * c for a in self._a], self.order)

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.order == other.order and self._a == other._a

    def __hash__(self):
        return hash((self.order, self._a))

    def evaluate_chi(self, value: Scalar) -> list:
        """Numeric coefficient list with ``x`` specialised to ``value``."""
        return [a(value) for a in self._a]

    def __repr__(self):
        body = ", ".join(format_poly(a) for a in self._a)
        return f"PowerSeries([{body}], order={self.order})"


def series_mul(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    """Cauchy product truncated at the common order."""
    f._check(g)
    N = f.order
    a, b = f.coeffs, g.coeffs
    out = []
    for n in range(N + 1):
        acc = ZERO
        for k in range(n + 1):
            if a[k].is_zero() or b[n - k].is_zero():
                continue
            acc = acc + a[k] * b[n - k]
        out.append(acc)
    return PowerSeries(out, N)


def series_qdq(f: PowerSeries) -> PowerSeries:
    """``q d/dq``: multiply the ``q**n`` coefficient by ``n``."""
    return PowerSeries([a * n for n, a in enumerate(f.coeffs)], f.order)


def series_negate_q(f: PowerSeries) -> PowerSeries:
    """Substitute ``q -> -q``."""
    return PowerSeries([-a if n % 2 else a for n, a in enumerate(f.coeffs)],
                       f.order)


def series_log(f: PowerSeries) -> PowerSeries:
    """Logarithm of a series with constant term exactly one.

    Uses ``n g_n = n f_n - sum_{k=1}^{n-1} k g_k f_{n-k}`` for ``g = log f``.
    """
    a = f.coeffs
    if a[0] != ONE:
        raise SeriesDomainError("log needs constant term 1")
    N = f.order
    g = [ZERO] * (N + 1)
    for n in range(1, N + 1):
        acc = a[n] * n
        for k in range(1, n):
            if g[k].is_zero() or a[n - k].is_zero():
                continue
            acc = acc - g[k] * a[n - k] * k
        g[n] = acc * Fraction(1, n)
    return PowerSeries(g, N)


def series_exp(f: PowerSeries) -> PowerSeries:
    """Exponential of a series with zero constant term.

    Uses ``n h_n = sum_{k=1}^{n} k f_k h_{n-k}`` for ``h = exp f``.
    """
    a = f.coeffs
    if not a[0].is_zero():
        raise SeriesDomainError("exp needs constant term 0")
    N = f.order
    h = [ONE] + [ZERO] * N
    for n in range(1, N + 1):
        acc = ZERO
        for k in range(1, n + 1):
            if a[k].is_zero() or h[n - k].is_zero():
                continue
            acc = acc + a[k] * h[n - k] * k
        h[n] = acc * Fraction(1, n)
    return PowerSeries(h, N)


def series_pow_chi(f: PowerSeries, a: Scalar, chi: Scalar | None = None) -> PowerSeries:
    """``f ** (a * x)`` defined as ``exp(a * x * log f)``.

    With ``chi`` given, ``x`` is replaced by that number up front.
    """
    if f.coeffs[0] != ONE:
        raise SeriesDomainError("symbolic power needs constant term 1")
    a = Fraction(a)
    if a == 0:
        return PowerSeries.one(f.order)
    return series_exp(series_log(f).scale(chi_symbol(chi) * a))


def macmahon(N: int) -> PowerSeries:
    """MacMahon function ``prod_{k>=1} (1 - q^k)^{-k}`` to order ``N``.

    Integer arithmetic on plain lists; each factor ``1/(1-q^k)`` is applied
    ``k`` times as a running prefix sum with stride ``k``.
    """
    if N < 0:
        raise ValueError("order must be >= 0")
    c = [1] + [0] * N
    for k in range(1, N + 1):
        for _ in range(k):
            for n in range(k, N + 1):
                c[n] += c[n - k]
    return PowerSeries(c, N)


def n_series(N: int) -> PowerSeries:
    """``N(q) = q d/dq log M(q)``; the ``q**0`` coefficient is 0."""
    return series_qdq(series_log(macmahon(N)))


class DeltaPredicate:
    """Membership test for a subset of ``Z_{>=0}^arity``."""

    __slots__ = ("arity", "_test", "name")

    def __init__(self, arity: int, test: Callable[..., bool], name: str = ""):
        self.arity = arity
        self._test = test
        self.name = name

    def __call__(self, *ms: int) -> bool:
        if len(ms) != self.arity:
            raise ValueError(f"expected {self.arity} exponents, got {len(ms)}")
        return bool(self._test(*ms))

    def __repr__(self):
        return f"DeltaPredicate({self.arity}, {self.name or self._test!r})"


def always(arity: int) -> DeltaPredicate:
    return DeltaPredicate(arity, lambda *ms: True, "all")


#: ``-m3 <= m1 - m2 < m3``, the index set of the rank-two closed formula.
RANK2_DELTA = DeltaPredicate(3, lambda m1, m2, m3: -m3 <= m1 - m2 < m3,
                             "-m3 <= m1-m2 < m3")


def delta_product(fs: Sequence[PowerSeries], d: DeltaPredicate) -> PowerSeries:
    """Sum of coefficient products over exponent tuples accepted by ``d``."""
    if not fs:
        raise ValueError("need at least one factor")
    if d.arity != len(fs):
        raise ValueError(f"predicate arity {d.arity} != {len(fs)} factors")
    N = fs[0].order
    for f in fs[1:]:
        fs[0]._check(f)
    out = [ZERO] * (N + 1)
    for ms in product(range(N + 1), repeat=len(fs)):
        total = sum(ms)
        if total > N or not d(*ms):
            continue
        term = ONE
        for f, m in zip(fs, ms):
            c = f.coeffs[m]
            if c.is_zero():
                term = ZERO
                break
            term = term * c
        if not term.is_zero():
            out[total] = out[total] + term
    return PowerSeries(out, N)
