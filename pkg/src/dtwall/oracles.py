"""Brute-force reference computations used to check the fast paths.

Nothing in here imports the series engine or the kernels: plane
partitions are enumerated directly, spanning trees are found by testing
edge subsets, and the coefficient sums walk explicit function tables.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import factorial, inf

PLANE_PARTITION_LIMIT = 12


class OracleBoundError(ValueError):
    pass


def plane_partitions(n: int):
    """Yield plane partitions of ``n`` as tuples of weakly decreasing rows."""

    def rows_under(above, budget):
        # weakly decreasing rows, entrywise <= the row above
        def rec(i, cap, left, acc):
            if acc:
                yield tuple(acc), left
            if i == len(above):
                return
            for h in range(min(cap, above[i], left), 0, -1):
                acc.append(h)
                yield from rec(i + 1, h, left - h, acc)
                acc.pop()

        yield from rec(0, budget, budget, [])

    def build(above, left, acc):
        if left == 0:
            yield tuple(acc)
            return
        for row, rest in rows_under(above, left):
            acc.append(row)
            yield from build(row, rest, acc)
            acc.pop()

    yield from build((n,) * n, n, [])


def plane_partition_count(n: int) -> int:
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > PLANE_PARTITION_LIMIT:
        raise OracleBoundError(f"plane partition oracle capped at {PLANE_PARTITION_LIMIT}")
    return sum(1 for _ in plane_partitions(n))


def sigma2(n: int) -> int:
    """Sum of squared divisors by trial division."""
    if n < 1:
        raise ValueError("sigma2 needs n >= 1")
    return sum(d * d for d in range(1, n + 1) if n % d == 0)


def bipartite_tree_count(a: int, b: int) -> int:
    """Spanning trees of the complete bipartite graph ``K_{a,b}``."""
    if a < 1 or b < 1:
        raise ValueError("need a, b >= 1")
    return a ** (b - 1) * b ** (a - 1)


# -- spanning trees by subset testing ---------------------------------

def brute_spanning_trees(colors) -> list:
    """Spanning trees of the two-colour complete bipartite graph, found by
    testing every ``(l-1)``-subset of opposite-colour pairs."""
    l = len(colors)
    if l == 1:
        return [()]
    pairs = [(i, j) for i in range(l) for j in range(i + 1, l)
             if bool(colors[i]) != bool(colors[j])]
    out = []
    for sub in combinations(pairs, l - 1):
        seen = {0}
        frontier = [0]
        adj = {i: [] for i in range(l)}
        for i, j in sub:
            adj[i].append(j)
            adj[j].append(i)
        while frontier:
            x = frontier.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        if len(seen) == l:
            out.append(sub)
    return out


def determinant(rows) -> Fraction:
    """Exact determinant by Gaussian elimination over the rationals."""
    m = [[Fraction(x) for x in row] for row in rows]
    size = len(m)
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, size):
            f = m[r][col] / m[col][col]
            if f:
                for c in range(col, size):
                    m[r][c] -= f * m[col][c]
    return det


def signed_tree_sum_by_determinant(colors, weights) -> int:
    """Signed tree sum via the weighted matrix-tree theorem.

    Edge ``(i, j)``, ``i < j``, of opposite colours carries weight
    ``-v(i)v(j)`` when ``i`` is black and ``+v(i)v(j)`` otherwise; the sum
    over spanning trees of edge-weight products is any principal cofactor
    of the weighted Laplacian.
    """
    l = len(colors)
    if l == 1:
        return 1
    lap = [[Fraction(0)] * l for _ in range(l)]
    for i in range(l):
        for j in range(i + 1, l):
            if bool(colors[i]) == bool(colors[j]):
                continue
            w = weights[i] * weights[j] * (-1 if colors[i] else 1)
            lap[i][j] -= w
            lap[j][i] -= w
            lap[i][i] += w
            lap[j][j] += w
    minor = [row[1:] for row in lap[1:]]
    d = determinant(minor)
    assert d.denominator == 1
    return int(d)


# -- coefficient sums from explicit function tables -------------------

def _slope(v):
    r, n = v
    return inf if r == 0 else Fraction(n, r)


def _add(vs):
    return (sum(v[0] for v in vs), sum(v[1] for v in vs))


def brute_s(vs) -> int:
    """``s_l`` evaluated literally on rational/infinite slopes."""
    l = len(vs)
    k = 0
    for i in range(l - 1):
        left, right = _add(vs[: i + 1]), _add(vs[i + 1:])
        a = _slope(vs[i]) > _slope(vs[i + 1]) and _slope(left) >= _slope(right)
        b = _slope(vs[i]) <= _slope(vs[i + 1]) and _slope(left) < _slope(right)
        assert not (a and b)
        if not (a or b):
            return 0
        k += b
    return (-1) ** k


def nondecreasing_surjections(l: int, lp: int):
    """Maps ``{0..l-1} -> {0..lp-1}`` as tuples, filtered from all maps."""
    for f in product(range(lp), repeat=l):
        if set(f) == set(range(lp)) and all(f[i] <= f[i + 1] for i in range(l - 1)):
            yield f


def brute_u(vs, piece: int = 0) -> Fraction:
    """``u_l`` by walking every pair of non-decreasing surjections."""
    l = len(vs)
    total = Fraction(0)
    for lp in range(1, l + 1):
        for psi in nondecreasing_surjections(l, lp):
            if any(_slope(vs[i]) != _slope(vs[j])
                   for i in range(l) for j in range(l) if psi[i] == psi[j]):
                continue
            blocks = [_add([vs[i] for i in range(l) if psi[i] == b]) for b in range(lp)]
            ranked = sum(1 for b in blocks if b[0] > 0)
            weight = Fraction(1)
            for b in range(lp):
                weight /= factorial(psi.count(b))
            for lpp in range(1, lp + 1):
                if piece == 1 and (lpp != 1 or ranked != 2):
                    continue
                if piece == 2 and (lpp != 1 or ranked != 1):
                    continue
                if piece == 3 and lpp != 2:
                    continue
                for xi in nondecreasing_surjections(lp, lpp):
                    groups = [[blocks[j] for j in range(lp) if xi[j] == a] for a in range(lpp)]
                    slopes = {_slope(_add(g)) for g in groups}
                    if len(slopes) != 1:
                        continue
                    s = 1
                    for g in groups:
                        s *= brute_s(g)
                    if s:
                        total += s * Fraction((-1) ** (lpp + 1), lpp) * weight
    return total


def surjection_identity_lhs(l: int) -> Fraction:
    """``sum_psi (-1)**(l-l') prod 1/|psi^{-1}(i)|!`` over all non-decreasing
    surjections of ``{1..l}``; equals ``1/l!``."""
    total = Fraction(0)
    for lp in range(1, l + 1):
        for psi in nondecreasing_surjections(l, lp):
            term = Fraction((-1) ** (l - lp))
            for b in range(lp):
                term /= factorial(psi.count(b))
            total += term
    return total
