from fractions import Fraction
from itertools import combinations, product
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dtwall import _kernels_py, combinatorics
from dtwall.combinatorics import (
    KClass,
    Slope,
    VertexConfig,
    compositions,
    enumerate_configs,
    enumerate_trees,
    s_coeff,
    slope_of,
    tree_sum,
    u_coeff,
    u_pieces,
)
from dtwall.oracles import (
    bipartite_tree_count,
    brute_s,
    brute_spanning_trees,
    brute_u,
    signed_tree_sum_by_determinant,
    surjection_identity_lhs,
)

try:
    from dtwall import _kernels as _kernels_c
except ImportError:  # extension not built
    _kernels_c = None

B1, B2 = KClass(1, 0), KClass(2, 0)
W1 = KClass(0, 1)

classes = st.builds(lambda r, n: (r, n) if (r, n) != (0, 0) else (0, 1),
                    st.integers(0, 3), st.integers(0, 3))
class_lists = st.lists(classes, min_size=1, max_size=5)


def _config(colors, weights):
    return VertexConfig(tuple(zip(colors, weights)))


# -- classes and slopes -----------------------------------------------

def test_kclass_rejects_origin_and_negatives():
    with pytest.raises(ValueError):
        KClass(0, 0)
    with pytest.raises(ValueError):
        KClass(-1, 2)
    assert KClass(1, 2) + KClass(0, 3) == KClass(1, 5)


def test_slope_examples():
    assert slope_of(B1) == Slope(1, 0) and slope_of(B1).as_fraction() == 0
    assert slope_of(KClass(0, 5)).infinite
    assert slope_of(KClass(2, 3)) > slope_of(KClass(3, 4))
    assert Slope(0, 1) == Slope(0, 7)
    assert Slope(0, 1) > Slope(1, 10 ** 9)
    assert Slope(2, 4) == Slope(1, 2)


@given(classes, classes, classes)
def test_slope_total_order(a, b, c):
    sa, sb, sc = (Slope(*v) for v in (a, b, c))
    assert (sa < sb) + (sa == sb) + (sa > sb) == 1
    if sa <= sb and sb <= sc:
        assert sa <= sc


# -- s_l --------------------------------------------------------------

def test_s_examples():
    assert s_coeff([KClass(3, 1)]) == 1
    assert s_coeff([B1, W1]) == -1
    assert s_coeff([W1, B1]) == 1
    assert s_coeff([W1, W1, B1, W1]) == 0
    assert s_coeff([W1, B2, W1]) == -1


@settings(max_examples=300)
@given(class_lists)
def test_s_matches_oracle(vs):
    s = s_coeff(vs)
    assert s in (-1, 0, 1)
    assert s == brute_s(vs)


# -- u_l --------------------------------------------------------------

def test_u_examples():
    assert u_coeff([KClass(2, 3)]) == 1
    assert u_coeff([B2, KClass(0, 3)]) == -1
    assert u_coeff([KClass(0, 3), B2]) == 1
    assert u_coeff([B1, W1, B1]) == -1
    assert u_coeff([B1, B1, W1]) == Fraction(1, 2)


@settings(max_examples=150, deadline=None)
@given(st.lists(classes, min_size=1, max_size=4))
def test_u_matches_oracle(vs):
    assert u_coeff(vs) == brute_u(vs)


def _single_black_configs(lmax, wmax):
    for l in range(1, lmax + 1):
        for a in range(1, l + 1):
            for ws in product(range(1, wmax + 1), repeat=l - 1):
                whites = [KClass(0, w) for w in ws]
                yield l, a, whites[: a - 1] + [B2] + whites[a - 1:]


def test_u_single_black_closed_form():
    count = 0
    for l, a, vs in _single_black_configs(7, 3):
        expected = Fraction((-1) ** (l - a), factorial(a - 1) * factorial(l - a))
        assert u_coeff(vs) == expected, vs
        count += 1
    assert count == sum(l * 3 ** (l - 1) for l in range(1, 8))


@pytest.mark.parametrize("l", range(1, 9))
def test_surjection_identity(l):
    assert surjection_identity_lhs(l) == Fraction(1, factorial(l))


def test_u_pieces_examples():
    assert u_pieces([B1, B1, W1]) == (1, Fraction(-1, 2), 0)
    assert u_pieces([B1, W1, B1]) == (-1, 0, 0)
    with pytest.raises(ValueError):
        u_pieces([B2, W1])
    with pytest.raises(ValueError):
        u_pieces([B1, W1])


def _two_black_rank_one(lmax, wmax):
    for l in range(2, lmax + 1):
        for a, b in combinations(range(l), 2):
            for ws in product(range(1, wmax + 1), repeat=l - 2):
                it = iter(ws)
                yield [B1 if i in (a, b) else KClass(0, next(it)) for i in range(l)]


def test_u_pieces_sum_to_u():
    for vs in _two_black_rank_one(6, 2):
        assert sum(u_pieces(vs)) == u_coeff(vs), vs


def test_u_pieces_match_oracle():
    for vs in _two_black_rank_one(5, 2):
        raw = [(v.r, v.n) for v in vs]
        assert u_pieces(vs) == tuple(brute_u(raw, p) for p in (1, 2, 3)), vs


# -- configurations ---------------------------------------------------

def test_compositions():
    assert list(compositions(0)) == [()]
    assert list(compositions(3)) == [(1, 1, 1), (1, 2), (2, 1), (3,)]


def test_config_examples():
    assert [str(c) for c in enumerate_configs(1, 1)] == ["B1,W1", "W1,B1"]
    assert len(list(enumerate_configs(2, 1))) == 5
    assert sorted(str(c) for c in enumerate_configs(0, 2)) == ["W1,W1", "W2"]
    with pytest.raises(ValueError):
        list(enumerate_configs(0, 0))


def _config_count(r, n):
    def parts(m):
        return [(0, 1)] if m == 0 else [(j, comb(m - 1, j - 1)) for j in range(1, m + 1)]
    return sum(cj * ck * comb(j + k, j)
               for j, cj in parts(r) for k, ck in parts(n))


@pytest.mark.parametrize("r,n", [(r, n) for r in range(4) for n in range(6) if r or n])
def test_config_count_formula(r, n):
    configs = [str(c) for c in enumerate_configs(r, n)]
    assert len(configs) == len(set(configs)) == _config_count(r, n)
    assert all(VertexConfig.parse(s).rank == r and VertexConfig.parse(s).length == n
               for s in configs)


def test_vertex_config_parse_and_validate():
    c = VertexConfig.parse("B2,W1,W3")
    assert c.colors == (True, False, False) and c.weights == (2, 1, 3)
    assert c.classes == (B2, W1, KClass(0, 3))
    assert (c.rank, c.length, c.n_black) == (2, 4, 1)
    assert str(c) == "B2,W1,W3"
    for bad in ("", "X1", "B0", "B"):
        with pytest.raises(ValueError):
            VertexConfig.parse(bad)


# -- trees ------------------------------------------------------------

def test_tree_examples():
    assert [t.edges for t in enumerate_trees(VertexConfig.parse("W3"))] == [()]
    assert len(list(enumerate_trees(VertexConfig.parse("B1,W1,B1,W1,W1")))) == 12
    assert list(enumerate_trees(VertexConfig.parse("B1,B1"))) == []
    assert tree_sum(VertexConfig.parse("B5")) == 1
    for w in (1, 2, 5):
        assert tree_sum(VertexConfig.parse(f"B1,B1,W{w}")) == w * w


def test_tree_edges_are_valid():
    c = VertexConfig.parse("W1,B2,W1,B1,W3")
    trees = [t.edges for t in enumerate_trees(c)]
    assert len(trees) == len(set(trees)) == bipartite_tree_count(2, 3)
    for edges in trees:
        assert len(edges) == len(c) - 1
        assert all(i < j and c.colors[i] != c.colors[j] for i, j in edges)


@pytest.mark.parametrize("a,b", [(a, b) for a in range(1, 4) for b in range(1, 7)])
def test_tree_count(a, b):
    c = VertexConfig(tuple([(True, 1)] * a + [(False, 1)] * b))
    trees = {t.edges for t in enumerate_trees(c)}
    assert len(trees) == bipartite_tree_count(a, b)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.tuples(st.booleans(), st.integers(1, 3)), min_size=1, max_size=7))
def test_tree_sum_matches_determinant(vertices):
    c = VertexConfig(tuple(vertices))
    assert tree_sum(c) == signed_tree_sum_by_determinant(c.colors, c.weights)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.booleans(), min_size=1, max_size=6))
def test_tree_enumeration_matches_subsets(colors):
    found = {t.edges for t in enumerate_trees(_config(colors, [1] * len(colors)))}
    assert found == set(brute_spanning_trees(colors))


def test_tree_black_sources():
    c = VertexConfig.parse("B1,W1,B1")
    (tree,) = enumerate_trees(c)
    assert tree.black_sources(c) == 1


def test_far_apart_blacks_tree_sum_vanishes():
    checked = 0
    for l in range(4, 9):
        for a, b in combinations(range(l), 2):
            if b - a < 3:
                continue
            for ws in product((1, 2), repeat=l - 2):
                it = iter(ws)
                colors = [i in (a, b) for i in range(l)]
                weights = [1 if i in (a, b) else next(it) for i in range(l)]
                assert tree_sum(_config(colors, weights)) == 0
                checked += 1
    assert checked > 0


# -- backends ---------------------------------------------------------

def test_backend_selected():
    assert combinatorics.BACKEND in ("cython", "python")


@pytest.mark.skipif(_kernels_c is None, reason="compiled kernels not built")
@settings(max_examples=200, deadline=None)
@given(class_lists)
def test_backends_agree_on_coefficients(vs):
    rs, ns = tuple(v[0] for v in vs), tuple(v[1] for v in vs)
    assert _kernels_c.s_sign(rs, ns) == _kernels_py.s_sign(rs, ns)
    for piece in (0, 1, 2, 3):
        assert _kernels_c.u_sum(rs, ns, piece) == _kernels_py.u_sum(rs, ns, piece)


@pytest.mark.skipif(_kernels_c is None, reason="compiled kernels not built")
@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(st.booleans(), st.integers(1, 10 ** 6)), min_size=1, max_size=7))
def test_backends_agree_on_trees(vertices):
    colors = tuple(b for b, _ in vertices)
    weights = tuple(w for _, w in vertices)
    assert _kernels_c.tree_sum(colors, weights) == _kernels_py.tree_sum(colors, weights)
    assert sorted(map(tuple, _kernels_c.spanning_trees(colors))) == \
        sorted(map(tuple, _kernels_py.spanning_trees(colors)))
