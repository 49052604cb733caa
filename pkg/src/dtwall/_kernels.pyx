# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops. Same API and semantics as ``_kernels_py``."""
from fractions import Fraction
from math import factorial, lcm

from libc.stdlib cimport malloc, free

BACKEND = "cython"

cdef enum:
    MAXL = 62


cdef inline int _cmp(long long r1, long long n1, long long r2, long long n2) nogil:
    cdef long long d
    if r1 == 0:
        return 0 if r2 == 0 else 1
    if r2 == 0:
        return -1
    d = n1 * r2 - n2 * r1
    return (d > 0) - (d < 0)


def slope_cmp(long long r1, long long n1, long long r2, long long n2):
    return _cmp(r1, n1, r2, n2)


cdef int _s_sign(long long* rs, long long* ns, int l) nogil:
    cdef long long R = 0, N = 0, pr = 0, pn = 0
    cdef int i, k = 0, left, split
    for i in range(l):
        R += rs[i]
        N += ns[i]
    for i in range(l - 1):
        pr += rs[i]
        pn += ns[i]
        left = _cmp(rs[i], ns[i], rs[i + 1], ns[i + 1])
        split = _cmp(pr, pn, R - pr, N - pn)
        if left > 0:
            if split < 0:
                return 0
        else:
            if split >= 0:
                return 0
            k += 1
    return -1 if (k & 1) else 1


def s_sign(rs, ns):
    cdef int l = len(rs), i
    if l > MAXL:
        raise ValueError("too many classes")
    cdef long long ar[MAXL]
    cdef long long an[MAXL]
    for i in range(l):
        ar[i] = rs[i]
        an[i] = ns[i]
    return _s_sign(ar, an, l)


def u_sum(rs, ns, int piece=0):
    cdef int l = len(rs)
    if l == 0 or l > 20:
        raise ValueError("u_sum supports 1..20 classes")
    cdef long long ar[MAXL]
    cdef long long an[MAXL]
    cdef long long br[MAXL]
    cdef long long bn[MAXL]
    cdef int bstart[MAXL + 1]
    cdef int isopt[MAXL]
    cdef int ray[MAXL]
    cdef int gb[MAXL + 1]
    cdef long long R = 0, N = 0, pr, pn
    cdef int i, j, a, nopt = 0, lp, nray, lpp, ranked, sgn, s
    cdef unsigned long mask, xmask
    cdef long long fact[21]
    for i in range(l):
        ar[i] = rs[i]
        an[i] = ns[i]
        R += ar[i]
        N += an[i]
    fact[0] = 1
    for i in range(1, 21):
        fact[i] = fact[i - 1] * i
    for i in range(1, l):
        isopt[i] = _cmp(ar[i - 1], an[i - 1], ar[i], an[i]) == 0
        if isopt[i]:
            nopt += 1
    scale_f = factorial(l)
    scale_l = lcm(*range(1, l + 1))
    total = 0
    cdef long long weight
    for mask in range(1UL << nopt):
        # psi-blocks: forced cuts plus the chosen optional ones
        bstart[0] = 0
        lp = 0
        a = 0
        for i in range(1, l):
            if isopt[i]:
                if (mask >> a) & 1:
                    lp += 1
                    bstart[lp] = i
                a += 1
            else:
                lp += 1
                bstart[lp] = i
        lp += 1
        bstart[lp] = l
        weight = fact[l]
        ranked = 0
        for j in range(lp):
            br[j] = 0
            bn[j] = 0
            for i in range(bstart[j], bstart[j + 1]):
                br[j] += ar[i]
                bn[j] += an[i]
            weight //= fact[bstart[j + 1] - bstart[j]]
            if br[j] > 0:
                ranked += 1
        nray = 0
        pr = 0
        pn = 0
        for j in range(lp - 1):
            pr += br[j]
            pn += bn[j]
            if _cmp(pr, pn, R, N) == 0:
                ray[nray] = j + 1
                nray += 1
        for xmask in range(1UL << nray):
            lpp = 1
            gb[0] = 0
            for j in range(nray):
                if (xmask >> j) & 1:
                    gb[lpp] = ray[j]
                    lpp += 1
            gb[lpp] = lp
            if piece == 1 and (lpp != 1 or ranked != 2):
                continue
            if piece == 2 and (lpp != 1 or ranked != 1):
                continue
            if piece == 3 and lpp != 2:
                continue
            sgn = 1
            for j in range(lpp):
                s = _s_sign(&br[gb[j]], &bn[gb[j]], gb[j + 1] - gb[j])
                sgn *= s
                if sgn == 0:
                    break
            if sgn == 0:
                continue
            if lpp % 2 == 0:
                sgn = -sgn
            total += sgn * weight * (scale_l // lpp)
    return Fraction(total, scale_f * scale_l)


cdef struct TreeState:
    int l
    int need
    int nedges
    int* ei
    int* ej
    long long* ew
    int* parent
    int* size
    int* chosen
    int nchosen


cdef int _find(int* parent, int x) nogil:
    while parent[x] != x:
        x = parent[x]
    return x


cdef object _walk(TreeState* st, int idx, object acc, object sink):
    cdef int i, j, ri, rj, t
    cdef object p
    if st.nchosen == st.need:
        if sink is None:
            p = 1
            for t in range(st.nchosen):
                p = p * st.ew[st.chosen[t]]
            return acc + p
        sink.append(tuple([(st.ei[st.chosen[t]], st.ej[st.chosen[t]])
                           for t in range(st.nchosen)]))
        return acc
    if st.nedges - idx < st.need - st.nchosen:
        return acc
    i = st.ei[idx]
    j = st.ej[idx]
    ri = _find(st.parent, i)
    rj = _find(st.parent, j)
    if ri != rj:
        if st.size[ri] < st.size[rj]:
            ri, rj = rj, ri
        st.parent[rj] = ri
        st.size[ri] += st.size[rj]
        st.chosen[st.nchosen] = idx
        st.nchosen += 1
        acc = _walk(st, idx + 1, acc, sink)
        st.nchosen -= 1
        st.size[ri] -= st.size[rj]
        st.parent[rj] = rj
    return _walk(st, idx + 1, acc, sink)


cdef long long _walk_c(TreeState* st, int idx, long long prod) nogil:
    # caller guarantees |sum| < 2**62 so nothing here can overflow
    cdef int i, j, ri, rj
    cdef long long acc = 0
    if st.nchosen == st.need:
        return prod
    if st.nedges - idx < st.need - st.nchosen:
        return 0
    i = st.ei[idx]
    j = st.ej[idx]
    ri = _find(st.parent, i)
    rj = _find(st.parent, j)
    if ri != rj:
        if st.size[ri] < st.size[rj]:
            ri, rj = rj, ri
        st.parent[rj] = ri
        st.size[ri] += st.size[rj]
        st.nchosen += 1
        acc = _walk_c(st, idx + 1, prod * st.ew[idx])
        st.nchosen -= 1
        st.size[ri] -= st.size[rj]
        st.parent[rj] = rj
    return acc + _walk_c(st, idx + 1, prod)


def _fits_int64(colors, weights):
    blacks = [w for c, w in zip(colors, weights) if c]
    whites = [w for c, w in zip(colors, weights) if not c]
    if not blacks or not whites:
        return True
    a, b = len(blacks), len(whites)
    count = a ** (b - 1) * b ** (a - 1)
    top = max(weights) ** (2 * (len(weights) - 1))
    return count * top < 2 ** 62


cdef object _run(colors, weights, object sink):
    cdef int l = len(colors), i, j, m = 0
    cdef long long total
    if l == 0:
        return 0
    cdef TreeState st
    cdef int cap = l * l
    st.l = l
    st.need = l - 1
    st.nchosen = 0
    st.ei = <int*> malloc(cap * sizeof(int))
    st.ej = <int*> malloc(cap * sizeof(int))
    st.ew = <long long*> malloc(cap * sizeof(long long))
    st.parent = <int*> malloc(l * sizeof(int))
    st.size = <int*> malloc(l * sizeof(int))
    st.chosen = <int*> malloc(l * sizeof(int))
    try:
        for i in range(l):
            st.parent[i] = i
            st.size[i] = 1
            for j in range(i + 1, l):
                if bool(colors[i]) != bool(colors[j]):
                    st.ei[m] = i
                    st.ej[m] = j
                    if weights is not None:
                        st.ew[m] = (-1 if colors[i] else 1) * weights[i] * weights[j]
                    m += 1
        st.nedges = m
        if sink is None and _fits_int64(colors, weights):
            with nogil:
                total = _walk_c(&st, 0, 1)
            return total
        return _walk(&st, 0, 0, sink)
    finally:
        free(st.ei)
        free(st.ej)
        free(st.ew)
        free(st.parent)
        free(st.size)
        free(st.chosen)


def spanning_trees(colors):
    out = []
    if len(colors) == 0:
        return out
    _run(colors, None, out)
    return out


def tree_sum(colors, weights):
    return _run(colors, weights, None)
