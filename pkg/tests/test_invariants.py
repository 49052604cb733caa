from fractions import Fraction

import pytest

from dtwall.combinatorics import KClass, VertexConfig
from dtwall.invariants import (
    PUBLISHED_OMEGA,
    InvariantKind,
    ResourceBoundError,
    cached_wallcross,
    closed_dt2_series,
    closed_eu2_series,
    config_weight,
    dt1_series,
    dt_piece,
    dt_seed,
    eu_seed,
    is_integer_valued,
    omega2,
    omega2_table,
    quarter_m2chi,
    verify,
    wallcross,
)
from dtwall.output import ResultCache
from dtwall.series import ZERO, ChiPoly

X = ChiPoly.x()
DT, EU = InvariantKind.DT, InvariantKind.EU


def test_dt_seeds():
    assert dt_seed(KClass(2, 0)) == ChiPoly.const(Fraction(1, 4))
    assert dt_seed(KClass(0, 1)) == -X
    assert dt_seed((0, 4)) == X * Fraction(-21, 16)
    with pytest.raises(ValueError):
        dt_seed(KClass(1, 1))


def test_eu_seeds():
    assert eu_seed(KClass(2, 0)) == ChiPoly.const(Fraction(-1, 4))
    assert eu_seed(KClass(1, 0)) == ChiPoly.const(1)
    assert eu_seed(KClass(0, 2)) == X * Fraction(5, 4)
    with pytest.raises(ValueError):
        eu_seed((2, 3))


def test_config_weight():
    assert config_weight(VertexConfig.parse("B2"), DT) == ChiPoly.const(Fraction(1, 4))
    assert config_weight(VertexConfig.parse("B2,W1"), DT) == X * Fraction(-1, 4)
    assert config_weight(VertexConfig.parse("B1,B1,W1"), EU) == X


def test_wallcross_examples():
    assert wallcross(DT, 1, 1) == -X
    assert wallcross(DT, 2, 1) == ZERO
    assert wallcross(DT, 2, 0) == ChiPoly.const(Fraction(1, 4))
    assert wallcross(EU, 1, 1) == X
    assert wallcross("DT", 2, 2) == X * Fraction(-5, 4)
    with pytest.raises(ValueError):
        wallcross(DT, 0, 0)


def test_wallcross_boundary_classes_equal_seeds():
    for r in range(1, 4):
        assert wallcross(DT, r, 0) == dt_seed((r, 0))
        assert wallcross(EU, r, 0) == eu_seed((r, 0))
    for n in range(1, 5):
        assert wallcross(DT, 0, n) == dt_seed((0, n))
        assert wallcross(EU, 0, n) == eu_seed((0, n))


def test_dt1_series_examples():
    s = dt1_series(2)
    assert s[0] == ChiPoly.const(1)
    assert s[1] == -X
    assert s[2] == (X * X + 5 * X) * Fraction(1, 2)


def test_closed_dt2_examples():
    s = closed_dt2_series(2)
    assert s[0] == ChiPoly.const(Fraction(1, 4))
    assert s[1] == ZERO
    assert s[2] == X * Fraction(-5, 4)


def test_closed_eu2_is_negation():
    dt, eu = closed_dt2_series(8), closed_eu2_series(8)
    assert eu[0] == ChiPoly.const(Fraction(-1, 4))
    assert eu[2] == X * Fraction(5, 4)
    assert all(eu[n] == -dt[n] for n in range(9))


def test_dt_pieces():
    assert dt_piece(0, 1) == X * Fraction(1, 2) == quarter_m2chi(1)[1]
    for n in range(5):
        assert dt_piece(2, n) == ZERO
        assert dt_piece(3, n) == ZERO
        assert sum((dt_piece(i, n) for i in range(4)), ZERO) == wallcross(DT, 2, n)
    with pytest.raises(ValueError):
        dt_piece(4, 1)


def test_omega_examples():
    assert omega2(0) == ZERO and omega2(1) == ZERO
    assert omega2(2) == -X
    assert omega2(3) == (X ** 3 + 15 * X ** 2 + 20 * X) * Fraction(-1, 6)
    assert omega2(4) == (X ** 4 + 30 * X ** 3 + 119 * X ** 2 + 102 * X) * Fraction(-1, 12)
    assert omega2_table(4) == list(PUBLISHED_OMEGA)
    assert omega2_table(9) == [omega2(n) for n in range(10)]


def test_is_integer_valued_examples():
    assert is_integer_valued(-X)
    assert not is_integer_valued(X * Fraction(1, 2))
    assert is_integer_valued((X * X + X) * Fraction(1, 2))
    assert is_integer_valued(omega2(4))
    assert is_integer_valued(ZERO)
    assert not is_integer_valued(ChiPoly.const(Fraction(1, 3)))


@pytest.mark.parametrize("k", range(-3, 4))
def test_specialisation_consistency(k):
    for n in range(7):
        assert omega2(n, chi=k) == ChiPoly.const(omega2(n)(k))
    for n in range(4):
        assert wallcross(DT, 2, n, chi=k) == ChiPoly.const(wallcross(DT, 2, n)(k))


def test_verify_passes():
    rep = verify(2, 6, 6)
    assert rep.passed and not rep.failures()
    names = {c.name for c in rep.checks}
    assert {"rank1_closed", "rank2_closed", "dt_eu_sign", "piece0_head",
            "omega_integer_valued", "omega_published"} <= names
    assert verify(1, 10, 10).passed
    assert verify(3, 4, 4).passed


def test_verify_bounds():
    with pytest.raises(ResourceBoundError):
        verify(4, 2, 2)
    with pytest.raises(ResourceBoundError):
        verify(2, 5, 4)
    with pytest.raises(ResourceBoundError):
        verify(2, 11, 11)
    with pytest.raises(ResourceBoundError):
        verify(1, 2, 17)


def test_parallel_sum_is_identical():
    assert wallcross(DT, 2, 6, jobs=1) == wallcross(DT, 2, 6, jobs=3)


def test_cached_wallcross(tmp_path):
    cache = ResultCache(tmp_path)
    cold = cached_wallcross(DT, 2, 3, cache)
    assert cache.get("DT", 2, 3) == cold
    assert cached_wallcross(DT, 2, 3, cache) == cold == wallcross(DT, 2, 3)
