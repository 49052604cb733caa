"""Pure-Python hot loops; the compiled ``_kernels`` module mirrors this API.

Classes are passed as two parallel integer sequences ``rs`` (rank) and
``ns`` (length). Colours are passed as a sequence of truthy (black) and
falsy (white) flags.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial, lcm

BACKEND = "python"


def slope_cmp(r1: int, n1: int, r2: int, n2: int) -> int:
    """Compare ``n1/r1`` with ``n2/r2``; rank zero is slope infinity."""
    if r1 == 0:
        return 0 if r2 == 0 else 1
    if r2 == 0:
        return -1
    d = n1 * r2 - n2 * r1
    return (d > 0) - (d < 0)


def s_sign(rs, ns) -> int:
    l = len(rs)
    R = sum(rs)
    N = sum(ns)
    pr = pn = 0
    k = 0
    for i in range(l - 1):
        pr += rs[i]
        pn += ns[i]
        left = slope_cmp(rs[i], ns[i], rs[i + 1], ns[i + 1])
        split = slope_cmp(pr, pn, R - pr, N - pn)
        if left > 0:
            if split < 0:
                return 0
        else:
            if split >= 0:
                return 0
            k += 1
    return -1 if k & 1 else 1


def _subsets(items):
    """All subsets of ``items`` in a fixed order (binary counting)."""
    m = len(items)
    for mask in range(1 << m):
        yield [items[t] for t in range(m) if mask >> t & 1]


def u_sum(rs, ns, piece: int = 0) -> Fraction:
    """Nested surjection sum defining ``u_l``.

    ``piece`` 0 sums every term; 1 keeps single-group terms with two
    ranked psi-blocks, 2 single-group terms with one ranked psi-block,
    3 the two-group terms.
    """
    l = len(rs)
    scale_f = factorial(l)
    scale_l = lcm(*range(1, l + 1))
    optional = [i for i in range(1, l)
                if slope_cmp(rs[i - 1], ns[i - 1], rs[i], ns[i]) == 0]
    forced = [i for i in range(1, l) if i not in optional]
    R, N = sum(rs), sum(ns)
    total = 0
    for chosen in _subsets(optional):
        cuts = sorted(forced + chosen)
        bounds = [0, *cuts, l]
        br, bn = [], []
        weight = scale_f
        for a, b in zip(bounds, bounds[1:]):
            br.append(sum(rs[a:b]))
            bn.append(sum(ns[a:b]))
            weight //= factorial(b - a)
        lp = len(br)
        ranked = sum(1 for r in br if r > 0)
        # xi cut points: prefix sums of psi-blocks on the total's ray
        ray = []
        pr = pn = 0
        for j in range(lp - 1):
            pr += br[j]
            pn += bn[j]
            if slope_cmp(pr, pn, R, N) == 0:
                ray.append(j + 1)
        for xcuts in _subsets(ray):
            lpp = len(xcuts) + 1
            if piece == 1 and (lpp != 1 or ranked != 2):
                continue
            if piece == 2 and (lpp != 1 or ranked != 1):
                continue
            if piece == 3 and lpp != 2:
                continue
            gb = [0, *xcuts, lp]
            sgn = 1
            for a, b in zip(gb, gb[1:]):
                sgn *= s_sign(br[a:b], bn[a:b])
                if sgn == 0:
                    break
            if sgn == 0:
                continue
            if lpp % 2 == 0:
                sgn = -sgn
            total += sgn * weight * (scale_l // lpp)
    return Fraction(total, scale_f * scale_l)


def _tree_edges(colors):
    l = len(colors)
    return [(i, j) for i in range(l) for j in range(i + 1, l)
            if bool(colors[i]) != bool(colors[j])]


def _walk_trees(l, edges, visit):
    """Backtrack over edge subsets forming spanning trees of ``l`` vertices."""
    parent = list(range(l))
    size = [1] * l
    need = l - 1
    chosen = []

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    def rec(idx):
        if len(chosen) == need:
            visit(chosen)
            return
        if len(edges) - idx < need - len(chosen):
            return
        i, j = edges[idx]
        ri, rj = find(i), find(j)
        if ri != rj:
            if size[ri] < size[rj]:
                ri, rj = rj, ri
            parent[rj] = ri
            size[ri] += size[rj]
            chosen.append(idx)
            rec(idx + 1)
            chosen.pop()
            size[ri] -= size[rj]
            parent[rj] = rj
        rec(idx + 1)

    rec(0)


def spanning_trees(colors) -> list:
    l = len(colors)
    if l == 0:
        return []
    edges = _tree_edges(colors)
    out = []
    _walk_trees(l, edges, lambda ch: out.append(tuple(edges[t] for t in ch)))
    return out


def tree_sum(colors, weights) -> int:
    l = len(colors)
    if l == 0:
        return 0
    edges = _tree_edges(colors)
    ew = [(-1 if colors[i] else 1) * weights[i] * weights[j] for i, j in edges]
    acc = [0]

    def visit(ch):
        p = 1
        for t in ch:
            p *= ew[t]
        acc[0] += p

    _walk_trees(l, edges, visit)
    return acc[0]
