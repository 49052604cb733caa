"""Classes, slopes, the coefficients ``s_l`` and ``u_l``, vertex
configurations and signed spanning-tree sums.

The inner loops live in a compiled extension (``dtwall._kernels``) when it
was built, otherwise in :mod:`dtwall._kernels_py`. Setting the environment
variable ``DTWALL_PURE=1`` forces the pure-Python kernels.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from itertools import combinations
from math import gcd
from typing import Iterator, Sequence

if os.environ.get("DTWALL_PURE"):
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as kernels

BACKEND = kernels.BACKEND


@dataclass(frozen=True, order=True)
class KClass:
    """A class ``(r, n)`` in the positive cone, ``(0, 0)`` excluded."""

    r: int
    n: int

    def __post_init__(self):
        if self.r < 0 or self.n < 0 or (self.r == 0 and self.n == 0):
            raise ValueError(f"({self.r}, {self.n}) is not a nonzero class "
                             "with nonnegative entries")

    def __add__(self, other: "KClass") -> "KClass":
        return KClass(self.r + other.r, self.n + other.n)


@total_ordering
class Slope:
    """``n/r`` in lowest terms, infinite when ``r == 0``."""

    __slots__ = ("n", "r")

    def __init__(self, r: int, n: int):
        if r == 0:
            self.r, self.n = 0, 1
        else:
            g = gcd(r, n)
            self.r, self.n = r // g, n // g

    @property
    def infinite(self) -> bool:
        return self.r == 0

    def _cmp(self, other: "Slope") -> int:
        return kernels.slope_cmp(self.r, self.n, other.r, other.n)

    def __eq__(self, other):
        if not isinstance(other, Slope):
            return NotImplemented
        return self._cmp(other) == 0

    def __lt__(self, other):
        if not isinstance(other, Slope):
            return NotImplemented
        return self._cmp(other) < 0

    def __hash__(self):
        return hash((self.r, self.n))

    def as_fraction(self) -> Fraction:
        if self.infinite:
            raise ValueError("infinite slope")
        return Fraction(self.n, self.r)

    def __repr__(self):
        return "Slope(inf)" if self.infinite else f"Slope({self.n}/{self.r})"


def slope_of(k: KClass) -> Slope:
    return Slope(k.r, k.n)


def _split(vs) -> tuple:
    rs, ns = [], []
    for v in vs:
        r, n = (v.r, v.n) if isinstance(v, KClass) else v
        if r < 0 or n < 0 or (r == 0 and n == 0):
            raise ValueError(f"({r}, {n}) is not a nonzero class")
        rs.append(r)
        ns.append(n)
    if not rs:
        raise ValueError("need at least one class")
    return tuple(rs), tuple(ns)


def s_coeff(vs: Sequence) -> int:
    """Sign coefficient ``s_l`` of an ordered list of classes: 0 or +-1."""
    rs, ns = _split(vs)
    return kernels.s_sign(rs, ns)


@lru_cache(maxsize=None)
def _u_cached(rs: tuple, ns: tuple, piece: int) -> Fraction:
    return kernels.u_sum(rs, ns, piece)


def u_coeff(vs: Sequence) -> Fraction:
    """Rational coefficient ``u_l`` (the nested surjection sum)."""
    rs, ns = _split(vs)
    return _u_cached(rs, ns, 0)


def u_pieces(vs: Sequence) -> tuple:
    """Split ``u_l`` for two rank-one ranked classes into three parts.

    Returns ``(u1, u2, u3)``: single-group terms keeping the two ranked
    classes in separate blocks, single-group terms merging them, and the
    two-group terms.
    """
    rs, ns = _split(vs)
    ranked = [r for r in rs if r > 0]
    if len(ranked) != 2 or any(r != 1 for r in ranked):
        raise ValueError("u_pieces needs exactly two ranked classes of rank 1")
    return tuple(_u_cached(rs, ns, p) for p in (1, 2, 3))


@dataclass(frozen=True)
class VertexConfig:
    """Ordered list of coloured weights; ``True`` is black (rank part)."""

    vertices: tuple

    def __post_init__(self):
        if not self.vertices:
            raise ValueError("empty configuration")
        norm = []
        for black, w in self.vertices:
            if int(w) < 1:
                raise ValueError("weights must be positive")
            norm.append((bool(black), int(w)))
        object.__setattr__(self, "vertices", tuple(norm))

    @classmethod
    def parse(cls, text: str) -> "VertexConfig":
        """Read ``"B2,W1,W3"`` style strings."""
        out = []
        for tok in text.replace(" ", "").split(","):
            if len(tok) < 2 or tok[0].upper() not in "BW":
                raise ValueError(f"bad vertex token {tok!r}")
            out.append((tok[0].upper() == "B", int(tok[1:])))
        return cls(tuple(out))

    def __str__(self):
        return ",".join(("B" if b else "W") + str(w) for b, w in self.vertices)

    def __len__(self):
        return len(self.vertices)

    @property
    def colors(self) -> tuple:
        return tuple(b for b, _ in self.vertices)

    @property
    def weights(self) -> tuple:
        return tuple(w for _, w in self.vertices)

    @property
    def classes(self) -> tuple:
        return tuple(KClass(w, 0) if b else KClass(0, w) for b, w in self.vertices)

    @property
    def rank(self) -> int:
        return sum(w for b, w in self.vertices if b)

    @property
    def length(self) -> int:
        return sum(w for b, w in self.vertices if not b)

    @property
    def n_black(self) -> int:
        return sum(1 for b, _ in self.vertices if b)


@dataclass(frozen=True)
class TreeGraph:
    """Spanning tree as sorted index pairs ``(i, j)``, ``i < j``.

    Each edge is oriented from ``i`` to ``j``.
    """

    edges: tuple

    def black_sources(self, config: VertexConfig) -> int:
        return sum(1 for i, _ in self.edges if config.vertices[i][0])


def compositions(n: int) -> Iterator[tuple]:
    """Ordered compositions of ``n`` in lexicographic order; ``()`` for 0."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first, *rest)


def enumerate_configs(r: int, n: int) -> Iterator[VertexConfig]:
    """Every configuration with black weights summing to ``r`` and white
    weights summing to ``n``, each once, in a fixed order."""
    if r < 0 or n < 0 or (r == 0 and n == 0):
        raise ValueError("need a nonzero class")
    for bc in compositions(r):
        for wc in compositions(n):
            j, k = len(bc), len(wc)
            for pos in combinations(range(j + k), j):
                black_at = set(pos)
                bi, wi = iter(bc), iter(wc)
                yield VertexConfig(tuple(
                    (True, next(bi)) if t in black_at else (False, next(wi))
                    for t in range(j + k)))


def enumerate_trees(c: VertexConfig) -> Iterator[TreeGraph]:
    for edges in kernels.spanning_trees(c.colors):
        yield TreeGraph(tuple(edges))


@lru_cache(maxsize=None)
def _tree_sum_cached(colors: tuple, weights: tuple) -> int:
    return kernels.tree_sum(colors, weights)


def tree_sum(c: VertexConfig) -> int:
    """Signed weighted spanning-tree sum of a configuration.

    Each tree contributes ``(-1)**(# edges leaving a black vertex)`` times
    the product of ``v(i) v(j)`` over its edges.
    """
    return _tree_sum_cached(c.colors, c.weights)


def clear_caches() -> None:
    _u_cached.cache_clear()
    _tree_sum_cached.cache_clear()
