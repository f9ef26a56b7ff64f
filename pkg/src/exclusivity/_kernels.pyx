# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: Jacobi eigensolver and 64-bit bitset clique search.

Signatures and results mirror ``_fallback`` exactly.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs, copysign
from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, realloc, free

cnp.import_array()

cdef extern from *:
    int popcount64 "__builtin_popcountll"(unsigned long long) noexcept nogil
    int ctz64 "__builtin_ctzll"(unsigned long long) noexcept nogil


cdef double _off_mass(double[:, ::1] a, Py_ssize_t n) noexcept nogil:
    cdef double s = 0.0
    cdef Py_ssize_t i, j
    for i in range(n):
        for j in range(n):
            if i != j:
                s += a[i, j] * a[i, j]
    return sqrt(s)


def jacobi_eigh(a_in, double rel_tol=1e-12, int max_sweeps=100):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] a_arr = np.array(a_in, dtype=np.float64, order="C", copy=True)
    cdef Py_ssize_t n = a_arr.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] v_arr = np.eye(n, dtype=np.float64)
    cdef double[:, ::1] a = a_arr
    cdef double[:, ::1] v = v_arr
    cdef Py_ssize_t p, q, k
    cdef int sweep
    cdef double apq, theta, t, c, s, x, y, off, scale = 0.0, target

    for p in range(n):
        for q in range(n):
            scale += a[p, q] * a[p, q]
    target = rel_tol * sqrt(scale)

    with nogil:
        sweep = 0
        while True:
            off = _off_mass(a, n)
            if off <= target:
                break
            if sweep == max_sweeps:
                sweep = -1
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    if apq == 0.0:
                        continue
                    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                    t = copysign(1.0, theta) / (fabs(theta) + sqrt(theta * theta + 1.0))
                    c = 1.0 / sqrt(t * t + 1.0)
                    s = t * c
                    for k in range(n):
                        x = a[k, p]
                        y = a[k, q]
                        a[k, p] = c * x - s * y
                        a[k, q] = s * x + c * y
                    for k in range(n):
                        x = a[p, k]
                        y = a[q, k]
                        a[p, k] = c * x - s * y
                        a[q, k] = s * x + c * y
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    for k in range(n):
                        x = v[k, p]
                        y = v[k, q]
                        v[k, p] = c * x - s * y
                        v[k, q] = s * x + c * y
            sweep += 1

    w = np.array([a_arr[k, k] for k in range(n)], dtype=np.float64)
    return w, v_arr, sweep, off


cdef struct Buffer:
    uint64_t* data
    Py_ssize_t size
    Py_ssize_t cap


cdef int _push(Buffer* buf, uint64_t value) noexcept nogil:
    cdef uint64_t* grown
    if buf.size == buf.cap:
        buf.cap = buf.cap * 2 if buf.cap else 1024
        grown = <uint64_t*>realloc(buf.data, buf.cap * sizeof(uint64_t))
        if grown == NULL:
            return -1
        buf.data = grown
    buf.data[buf.size] = value
    buf.size += 1
    return 0


cdef struct Best:
    int size
    uint64_t mask


cdef int _bk(const uint64_t* adj, uint64_t r, uint64_t p, uint64_t x, Buffer* out) noexcept nogil:
    cdef uint64_t px, cand, bit, best_nbrs = 0
    cdef int u, v, c, best = -1
    if p == 0 and x == 0:
        return _push(out, r)
    px = p | x
    while px:
        u = ctz64(px)
        px &= px - 1
        c = popcount64(p & adj[u])
        if c > best:
            best = c
            best_nbrs = adj[u]
    cand = p & ~best_nbrs
    while cand:
        v = ctz64(cand)
        bit = (<uint64_t>1) << v
        cand &= cand - 1
        if _bk(adj, r | bit, p & adj[v], x & adj[v], out) != 0:
            return -1
        p &= ~bit
        x |= bit
    return 0


cdef uint64_t _load(adj, uint64_t* dst) except? 0:
    cdef int i, n = len(adj)
    if n > 64:
        raise ValueError("bitset kernels support at most 64 vertices")
    for i in range(n):
        dst[i] = <uint64_t>int(adj[i])
    if n == 64:
        return <uint64_t>0xFFFFFFFFFFFFFFFF
    return ((<uint64_t>1) << n) - 1


def max_cliques(adj):
    cdef uint64_t[64] a
    cdef uint64_t full
    cdef Buffer buf
    cdef int status
    cdef Py_ssize_t i
    if len(adj) == 0:
        return []
    full = _load(adj, a)
    buf.data = NULL
    buf.size = 0
    buf.cap = 0
    with nogil:
        status = _bk(a, 0, full, 0, &buf)
    try:
        if status != 0:
            raise MemoryError("clique buffer allocation failed")
        return [buf.data[i] for i in range(buf.size)]
    finally:
        free(buf.data)


cdef void _mc_search(const uint64_t* adj, Best* best, uint64_t r, int size, uint64_t p) noexcept nogil:
    cdef int[64] verts
    cdef int[64] bounds
    cdef int count = 0, colour = 0, v, i
    cdef uint64_t uncoloured = p, avail, bit, newp
    while uncoloured:
        colour += 1
        avail = uncoloured
        while avail:
            v = ctz64(avail)
            bit = (<uint64_t>1) << v
            avail &= ~bit & ~adj[v]
            uncoloured &= ~bit
            verts[count] = v
            bounds[count] = colour
            count += 1
    for i in range(count - 1, -1, -1):
        if size + bounds[i] <= best.size:
            return
        v = verts[i]
        bit = (<uint64_t>1) << v
        newp = p & adj[v]
        if newp:
            _mc_search(adj, best, r | bit, size + 1, newp)
        elif size + 1 > best.size:
            best.size = size + 1
            best.mask = r | bit
        p &= ~bit


def maximum_clique(adj):
    cdef uint64_t[64] a
    cdef uint64_t full
    cdef Best best
    if len(adj) == 0:
        return 0
    full = _load(adj, a)
    best.size = 0
    best.mask = 0
    with nogil:
        _mc_search(a, &best, 0, 0, full)
    return int(best.mask)
