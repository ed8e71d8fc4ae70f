# cython: boundscheck=False, wraparound=False, language_level=3
"""Compiled bitset kernels; see _kernels_py.py for the reference versions.

Masks come in as Python ints and are unpacked into fixed-width uint64
word arrays (4 words cover the 256-element carrier cap; line kernels size
the width from the point count)."""

from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    static inline int popcount64(unsigned long long x) {
        return __builtin_popcountll(x);
    }
    static inline int ctz64(unsigned long long x) {
        return __builtin_ctzll(x);
    }
    """
    int popcount64(unsigned long long x) nogil
    int ctz64(unsigned long long x) nogil

ctypedef unsigned long long u64


cdef u64* _pack(object masks, int count, int words):
    cdef u64* buf = <u64*> malloc(count * words * sizeof(u64))
    cdef int i, w
    cdef object m
    for i in range(count):
        m = masks[i]
        for w in range(words):
            buf[i * words + w] = <u64> (m & 0xFFFFFFFFFFFFFFFF)
            m >>= 64
    return buf


def assoc_witness(int n, add_rows):
    cdef int words = (n + 63) // 64
    flat = [add_rows[x][y] for x in range(n) for y in range(n)]
    cdef u64* tab = _pack(flat, n * n, words)
    cdef u64* left = <u64*> malloc(words * sizeof(u64))
    cdef u64* right = <u64*> malloc(words * sizeof(u64))
    cdef int x, y, z, w, w2, i, base
    cdef u64 m
    cdef bint diff
    try:
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    for w in range(words):
                        left[w] = 0
                        right[w] = 0
                    # left: union over s in (x+y) of s+z
                    for w in range(words):
                        m = tab[(x * n + y) * words + w]
                        while m:
                            i = (w << 6) + ctz64(m)
                            base = (i * n + z) * words
                            for w2 in range(words):
                                left[w2] |= tab[base + w2]
                            m &= m - 1
                    # right: union over s in (y+z) of x+s
                    for w in range(words):
                        m = tab[(y * n + z) * words + w]
                        while m:
                            i = (w << 6) + ctz64(m)
                            base = (x * n + i) * words
                            for w2 in range(words):
                                right[w2] |= tab[base + w2]
                            m &= m - 1
                    diff = False
                    for w in range(words):
                        if left[w] != right[w]:
                            diff = True
                            break
                    if diff:
                        return (x, y, z)
        return None
    finally:
        free(tab)
        free(left)
        free(right)


def distrib_witness(int n, add_rows, mul):
    cdef int words = (n + 63) // 64
    flat = [add_rows[x][y] for x in range(n) for y in range(n)]
    cdef u64* tab = _pack(flat, n * n, words)
    cdef int* mtab = <int*> malloc(n * n * sizeof(int))
    cdef u64* left = <u64*> malloc(words * sizeof(u64))
    cdef int u, v, w, i, ww, w2, uv, uw
    cdef u64 m
    cdef bint diff
    for u in range(n):
        row = mul[u]
        for v in range(n):
            mtab[u * n + v] = row[v]
    try:
        for u in range(n):
            for v in range(n):
                uv = mtab[u * n + v]
                for w in range(n):
                    uw = mtab[u * n + w]
                    for w2 in range(words):
                        left[w2] = 0
                    for ww in range(words):
                        m = tab[(v * n + w) * words + ww]
                        while m:
                            i = (ww << 6) + ctz64(m)
                            i = mtab[u * n + i]
                            left[i >> 6] |= (<u64>1) << (i & 63)
                            m &= m - 1
                    diff = False
                    for w2 in range(words):
                        if left[w2] != tab[(uv * n + uw) * words + w2]:
                            diff = True
                            break
                    if diff:
                        return (u, v, w)
        return None
    finally:
        free(tab)
        free(mtab)
        free(left)


def line_pair_witness(line_masks, int lo, int hi):
    cdef int L = len(line_masks)
    if L == 0:
        return None
    bits_py = max(m.bit_length() for m in line_masks)
    cdef int words = (bits_py + 63) // 64 if bits_py else 1
    cdef u64* tab = _pack(list(line_masks), L, words)
    cdef int i, j, w, c
    try:
        for i in range(L):
            for j in range(i + 1, L):
                c = 0
                for w in range(words):
                    c += popcount64(tab[i * words + w] & tab[j * words + w])
                    if c > hi:
                        break
                if c < lo or c > hi:
                    return (i, j, c)
        return None
    finally:
        free(tab)


def coverage_witness(int npoints, line_masks):
    cdef int L = len(line_masks)
    cdef int words = (npoints + 63) // 64
    cdef u64* tab = _pack(list(line_masks), L, words)
    cdef u64* reach = <u64*> malloc(npoints * words * sizeof(u64))
    cdef int i, w, w2, p
    cdef u64 m, missing
    for i in range(npoints * words):
        reach[i] = 0
    try:
        for i in range(L):
            for w in range(words):
                m = tab[i * words + w]
                while m:
                    p = (w << 6) + ctz64(m)
                    for w2 in range(words):
                        reach[p * words + w2] |= tab[i * words + w2]
                    m &= m - 1
        for p in range(npoints):
            for w in range(words):
                missing = ~reach[p * words + w]
                if w == words - 1 and npoints & 63:
                    missing &= ((<u64>1) << (npoints & 63)) - 1
                if (p >> 6) == w:
                    missing &= ~((<u64>1) << (p & 63))
                if missing:
                    return (p, (w << 6) + ctz64(missing))
        return None
    finally:
        free(tab)
        free(reach)
