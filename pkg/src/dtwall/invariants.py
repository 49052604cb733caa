"""Boundary invariants, the wall-crossing sums, the closed rank-one and
rank-two series, the BPS-type invariant ``Omega(2, n)`` and the
verification suite tying them together.

Every function that depends on the Euler characteristic takes an optional
``chi``. Left as ``None`` the answer is a polynomial in the formal ``x``;
given an integer, ``x`` is replaced by that integer before any arithmetic
happens.
"""
from __future__ import annotations

import enum
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .combinatorics import (
    KClass,
    VertexConfig,
    enumerate_configs,
    tree_sum,
    u_coeff,
    u_pieces,
)
from .series import (
    ONE,
    RANK2_DELTA,
    ZERO,
    ChiPoly,
    PowerSeries,
    chi_symbol,
    delta_product,
    macmahon,
    n_series,
    series_negate_q,
    series_pow_chi,
)

MAX_RANK = 3


class ResourceBoundError(ValueError):
    """Requested computation exceeds the enforced size limits."""


class InvariantKind(enum.Enum):
    DT = "DT"
    EU = "Eu"


def _divisor_square_sum(n: int) -> Fraction:
    return sum((Fraction(1, m * m) for m in range(1, n + 1) if n % m == 0),
               Fraction(0))


def _boundary(k) -> KClass:
    if not isinstance(k, KClass):
        k = KClass(*k)
    if k.r > 0 and k.n > 0:
        raise ValueError(f"({k.r}, {k.n}) is not a boundary class")
    return k


def dt_seed(k, chi=None) -> ChiPoly:
    """``DT(r, 0) = 1/r**2`` and ``DT(0, n) = -x * sum_{m|n} 1/m**2``."""
    k = _boundary(k)
    if k.n == 0:
        return ChiPoly.const(Fraction(1, k.r * k.r))
    return chi_symbol(chi) * -_divisor_square_sum(k.n)


def eu_seed(k, chi=None) -> ChiPoly:
    """``Eu(r, 0) = (-1)**(r-1)/r**2`` and ``Eu(0, n) = x * sum_{m|n} 1/m**2``."""
    k = _boundary(k)
    if k.n == 0:
        return ChiPoly.const(Fraction((-1) ** (k.r - 1), k.r * k.r))
    return chi_symbol(chi) * _divisor_square_sum(k.n)


def config_weight(c: VertexConfig, kind: InvariantKind, chi=None) -> ChiPoly:
    seed = dt_seed if kind is InvariantKind.DT else eu_seed
    out = ONE
    for black, w in c.vertices:
        out = out * seed((w, 0) if black else (0, w), chi)
    return out


def _term(c: VertexConfig, kind: InvariantKind, r: int, n: int,
          chi, piece: int | None) -> ChiPoly:
    """Contribution of one configuration; ``piece`` swaps ``u`` for a part."""
    ts = tree_sum(c)
    if ts == 0:
        return ZERO
    if piece is None or piece == 0:
        u = u_coeff(c.classes)
    else:
        u = u_pieces(c.classes)[piece - 1]
    if u == 0:
        return ZERO
    if kind is InvariantKind.DT:
        scalar = (-1) ** (r * n) * u * Fraction(-1, 2) ** (len(c) - 1) * ts
    else:
        scalar = u * Fraction(1, 2) ** (len(c) - 1) * ts
    return config_weight(c, kind, chi) * scalar


def _chunk_sum(args) -> ChiPoly:
    vertex_lists, kind_value, r, n, chi, piece = args
    kind = InvariantKind(kind_value)
    acc = ZERO
    for verts in vertex_lists:
        acc = acc + _term(VertexConfig(verts), kind, r, n, chi, piece)
    return acc


def default_jobs() -> int:
    return len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") \
        else (os.cpu_count() or 1)


def _sum_configs(configs, kind: InvariantKind, r: int, n: int, chi,
                 piece: int | None, jobs: int) -> ChiPoly:
    configs = list(configs)
    if jobs <= 1 or len(configs) < 64:
        acc = ZERO
        for c in configs:
            acc = acc + _term(c, kind, r, n, chi, piece)
        return acc
    nchunks = min(len(configs), 4 * jobs)
    chunks = [[c.vertices for c in configs[i::nchunks]] for i in range(nchunks)]
    tasks = [(ch, kind.value, r, n, chi, piece) for ch in chunks]
    acc = ZERO
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # partial sums arrive in task order; exact addition makes the
        # total independent of scheduling anyway
        for part in pool.map(_chunk_sum, tasks):
            acc = acc + part
    return acc


def wallcross(kind: InvariantKind, r: int, n: int, chi=None,
              jobs: int = 1) -> ChiPoly:
    """``DT(r, n)`` or ``Eu(r, n)`` from the configuration/tree sum."""
    if r < 0 or n < 0 or (r == 0 and n == 0):
        raise ValueError("need a nonzero class")
    return _sum_configs(enumerate_configs(r, n), InvariantKind(kind), r, n,
                        chi, None, jobs)


def dt_piece(i: int, n: int, chi=None, jobs: int = 1) -> ChiPoly:
    """Part ``i`` of ``DT(2, n)``.

    Part 0 sums configurations with one black vertex. Parts 1-3 sum those
    with two black vertices, using the matching part of ``u``.
    """
    if i not in (0, 1, 2, 3):
        raise ValueError(f"piece index must be 0..3, got {i}")
    if n < 0:
        raise ValueError("n must be >= 0")
    nb = 1 if i == 0 else 2
    configs = (c for c in enumerate_configs(2, n) if c.n_black == nb)
    return _sum_configs(configs, InvariantKind.DT, 2, n, chi,
                        None if i == 0 else i, jobs)


def dt1_series(N: int, chi=None) -> PowerSeries:
    """``M(-q) ** x``, the rank-one generating series."""
    return series_pow_chi(series_negate_q(macmahon(N)), 1, chi)


def _rank2_parts(N: int, chi) -> tuple:
    M = macmahon(N)
    m_chi = series_pow_chi(M, 1, chi)
    head = series_pow_chi(M, 2, chi).scale(Fraction(1, 4))
    restricted = delta_product([m_chi, m_chi, n_series(N)], RANK2_DELTA)
    return head, restricted.scale(chi_symbol(chi) * Fraction(1, 2))


def closed_dt2_series(N: int, chi=None) -> PowerSeries:
    """``M**(2x)/4 - (x/2) {M**x . M**x . N(q)}_Delta``."""
    head, tail = _rank2_parts(N, chi)
    return head - tail


def closed_eu2_series(N: int, chi=None) -> PowerSeries:
    head, tail = _rank2_parts(N, chi)
    return tail - head


def quarter_m2chi(N: int, chi=None) -> PowerSeries:
    return series_pow_chi(macmahon(N), 2, chi).scale(Fraction(1, 4))


def omega2(n: int, chi=None) -> ChiPoly:
    """``DT(2, n)``, less ``DT(1, n/2)/4`` when ``n`` is even."""
    if n < 0:
        raise ValueError("n must be >= 0")
    value = closed_dt2_series(n, chi)[n]
    if n % 2 == 0:
        value = value - dt1_series(n // 2, chi)[n // 2] * Fraction(1, 4)
    return value


def omega2_table(max_n: int, chi=None) -> list:
    """``[Omega(2, 0), ..., Omega(2, max_n)]`` from one series expansion."""
    dt2 = closed_dt2_series(max_n, chi)
    dt1 = dt1_series(max_n // 2, chi)
    return [dt2[n] - dt1[n // 2] * Fraction(1, 4) if n % 2 == 0 else dt2[n]
            for n in range(max_n + 1)]


def is_integer_valued(p: ChiPoly) -> bool:
    """True iff ``p`` maps every integer to an integer.

    Checks that the coordinates of ``p`` in the binomial basis
    ``C(x, k)`` are integers; those are the leading forward differences of
    ``p`` at ``0, 1, ..., deg p``.
    """
    if p.is_zero():
        return True
    values = [p(k) for k in range(p.degree + 1)]
    while values:
        if values[0].denominator != 1:
            return False
        values = [b - a for a, b in zip(values, values[1:])]
    return True


_X = ChiPoly.x()

#: Omega(2, n) for n = 0..4 as printed in the literature.
PUBLISHED_OMEGA = (
    ZERO,
    ZERO,
    -_X,
    (_X ** 3 + _X ** 2 * 15 + _X * 20) * Fraction(-1, 6),
    (_X ** 4 + _X ** 3 * 30 + _X ** 2 * 119 + _X * 102) * Fraction(-1, 12),
)


@dataclass
class Check:
    name: str
    params: dict
    expected: object
    actual: object
    passed: bool
    elapsed: float


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def record(self, name: str, params: dict, compute: Callable[[], tuple]):
        t0 = time.perf_counter()
        expected, actual = compute()
        self.checks.append(Check(name, params, expected, actual,
                                 expected == actual, time.perf_counter() - t0))

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]


def check_bounds(rmax: int, nmax: int, order: int) -> None:
    if not 1 <= rmax <= MAX_RANK:
        raise ResourceBoundError(f"rmax must be in 1..{MAX_RANK}, got {rmax}")
    if nmax < 0 or nmax > order:
        raise ResourceBoundError(f"need 0 <= nmax <= order, got {nmax} > {order}")
    limit = WALLCROSS_LIMITS[rmax]
    if nmax > limit:
        raise ResourceBoundError(
            f"wall-crossing at rank {rmax} is capped at n <= {limit}")
    if order > CLOSED_ORDER_LIMIT:
        raise ResourceBoundError(f"order is capped at {CLOSED_ORDER_LIMIT}")


#: largest n the wall-crossing sum is allowed to run at for each rank
WALLCROSS_LIMITS = {1: 10, 2: 10, 3: 6}
CLOSED_ORDER_LIMIT = 16


def cached_wallcross(kind: InvariantKind, r: int, n: int, cache=None,
                     jobs: int = 1) -> ChiPoly:
    """:func:`wallcross` through an optional ``get``/``put`` result cache."""
    kind = InvariantKind(kind)
    if cache is not None:
        hit = cache.get(kind.value, r, n)
        if hit is not None:
            return hit
    value = wallcross(kind, r, n, jobs=jobs)
    if cache is not None:
        cache.put(kind.value, r, n, value)
    return value


def verify(rmax: int, nmax: int, order: int, jobs: int = 1,
           cache=None) -> VerificationReport:
    """Cross-check wall-crossing sums against closed formulas and identities."""
    check_bounds(rmax, nmax, order)
    rep = VerificationReport()
    dt1 = dt1_series(order)
    dt2 = closed_dt2_series(order) if rmax >= 2 else None
    quarter = quarter_m2chi(order) if rmax >= 2 else None
    totals = {}

    def wc(kind, r, n):
        key = (kind, r, n)
        if key not in totals:
            totals[key] = cached_wallcross(kind, r, n, cache, jobs)
        return totals[key]

    DT, EU = InvariantKind.DT, InvariantKind.EU
    for n in range(nmax + 1):
        rep.record("rank1_closed", {"n": n}, lambda: (dt1[n], wc(DT, 1, n)))
    if rmax >= 2:
        for n in range(nmax + 1):
            rep.record("rank2_closed", {"n": n}, lambda: (dt2[n], wc(DT, 2, n)))
    for r in range(1, rmax + 1):
        for n in range(nmax + 1):
            rep.record("dt_eu_sign", {"r": r, "n": n},
                       lambda: (wc(DT, r, n),
                                wc(EU, r, n) * (-1) ** (r * n + r - 1)))
    if rmax >= 2:
        for n in range(nmax + 1):
            pieces = [dt_piece(i, n, jobs=jobs) for i in range(4)]
            rep.record("piece0_head", {"n": n}, lambda: (quarter[n], pieces[0]))
            rep.record("piece2_zero", {"n": n}, lambda: (ZERO, pieces[2]))
            rep.record("piece3_zero", {"n": n}, lambda: (ZERO, pieces[3]))
            rep.record("pieces_total", {"n": n},
                       lambda: (wc(DT, 2, n), sum(pieces, ZERO)))
    table = omega2_table(order)
    for n, value in enumerate(table):
        rep.record("omega_integer_valued", {"n": n},
                   lambda: (True, is_integer_valued(value)))
    for n in range(min(order, len(PUBLISHED_OMEGA) - 1) + 1):
        rep.record("omega_published", {"n": n},
                   lambda: (PUBLISHED_OMEGA[n], table[n]))
    return rep
