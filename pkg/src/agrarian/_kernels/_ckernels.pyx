# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled modular kernels over int64 with a 31-bit prime."""

from libc.stdint cimport int64_t
from libc.stdlib cimport malloc, free

PRIME = 2147483647


cdef inline int64_t _mod(int64_t a, int64_t p) nogil:
    a %= p
    if a < 0:
        a += p
    return a


cdef int64_t _powmod(int64_t b, int64_t e, int64_t p) nogil:
    cdef int64_t r = 1
    b = _mod(b, p)
    while e > 0:
        if e & 1:
            r = r * b % p
        b = b * b % p
        e >>= 1
    return r


cdef int64_t* _load(rows, Py_ssize_t m, Py_ssize_t n, int64_t p) except NULL:
    cdef int64_t* A = <int64_t*> malloc(max(m * n, 1) * sizeof(int64_t))
    cdef Py_ssize_t i, j
    if A == NULL:
        raise MemoryError()
    for i in range(m):
        row = rows[i]
        for j in range(n):
            A[i * n + j] = <int64_t> (row[j] % p)
    return A


def rank_mod_p(rows, p=PRIME):
    cdef Py_ssize_t m = len(rows)
    cdef Py_ssize_t n = len(rows[0]) if m else 0
    cdef int64_t pp = p
    cdef int64_t* A = _load(rows, m, n, pp)
    cdef Py_ssize_t r = 0, i, j, k, piv
    cdef int64_t inv, f, tmp
    try:
        with nogil:
            for j in range(n):
                if r == m:
                    break
                piv = -1
                for i in range(r, m):
                    if A[i * n + j] != 0:
                        piv = i
                        break
                if piv < 0:
                    continue
                if piv != r:
                    for k in range(n):
                        tmp = A[r * n + k]
                        A[r * n + k] = A[piv * n + k]
                        A[piv * n + k] = tmp
                inv = _powmod(A[r * n + j], pp - 2, pp)
                for i in range(r + 1, m):
                    f = A[i * n + j]
                    if f != 0:
                        f = f * inv % pp
                        for k in range(j, n):
                            A[i * n + k] = _mod(A[i * n + k] - f * A[r * n + k] % pp, pp)
                r += 1
    finally:
        free(A)
    return r


def det_mod_p(rows, p=PRIME):
    cdef Py_ssize_t n = len(rows)
    cdef int64_t pp = p
    cdef int64_t* A = _load(rows, n, n, pp)
    cdef Py_ssize_t i, j, k, piv
    cdef int64_t det = 1, inv, f, tmp
    try:
        with nogil:
            for j in range(n):
                piv = -1
                for i in range(j, n):
                    if A[i * n + j] != 0:
                        piv = i
                        break
                if piv < 0:
                    det = 0
                    break
                if piv != j:
                    for k in range(n):
                        tmp = A[j * n + k]
                        A[j * n + k] = A[piv * n + k]
                        A[piv * n + k] = tmp
                    det = _mod(-det, pp)
                det = det * A[j * n + j] % pp
                inv = _powmod(A[j * n + j], pp - 2, pp)
                for i in range(j + 1, n):
                    f = A[i * n + j]
                    if f != 0:
                        f = f * inv % pp
                        for k in range(j, n):
                            A[i * n + k] = _mod(A[i * n + k] - f * A[j * n + k] % pp, pp)
    finally:
        free(A)
    return det


def eval_terms_mod_p(coeffs, exponents, point, p=PRIME):
    cdef int64_t pp = p
    cdef int64_t total = 0, term
    cdef Py_ssize_t k, v
    cdef Py_ssize_t nvars = len(point)
    for k in range(len(coeffs)):
        term = <int64_t> (coeffs[k] % p)
        exps = exponents[k]
        for v in range(nvars):
            e = exps[v]
            if e:
                term = term * _powmod(<int64_t> (point[v] % p), e, pp) % pp
        total = (total + term) % pp
    return total
