# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled statevector kernels; see _pykernels for the reference semantics."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

ctypedef double complex cplx
ctypedef long long i64


def apply_matrix(cplx[::1] amps, const cplx[:, :] U, const i64[::1] base, const i64[::1] offsets):
    cdef Py_ssize_t nb = base.shape[0]
    cdef Py_ssize_t d = offsets.shape[0]
    cdef Py_ssize_t b, j, k
    cdef i64 b0
    cdef cplx acc
    cdef cplx *v = <cplx *> malloc(d * sizeof(cplx))
    if v == NULL:
        raise MemoryError()
    try:
        with nogil:
            for b in range(nb):
                b0 = base[b]
                for j in range(d):
                    v[j] = amps[b0 + offsets[j]]
                for j in range(d):
                    acc = 0
                    for k in range(d):
                        acc = acc + U[j, k] * v[k]
                    amps[b0 + offsets[j]] = acc
    finally:
        free(v)


cdef inline void _step(i64 *c, i64 *digit, i64 stride, i64 dim) noexcept nogil:
    # advance the register digit of a flat index without dividing
    c[0] += 1
    if c[0] == stride:
        c[0] = 0
        digit[0] += 1
        if digit[0] == dim:
            digit[0] = 0


def oracle_add(const cplx[::1] amps, const i64[::1] fvals, i64 sx, i64 dx, i64 sy, i64 dy):
    cdef Py_ssize_t n = amps.shape[0]
    out_arr = np.empty(n, dtype=np.complex128)
    cdef cplx[::1] out = out_arr
    cdef Py_ssize_t i
    cdef i64 x = 0, y = 0, cx = 0, cy = 0, ny
    with nogil:
        for i in range(n):
            ny = y + fvals[x]
            ny = ny % dy
            out[i + (ny - y) * sy] = amps[i]
            _step(&cx, &x, sx, dx)
            _step(&cy, &y, sy, dy)
    return out_arr


def marginal(const cplx[::1] amps, i64 s, i64 d):
    probs_arr = np.zeros(d, dtype=np.float64)
    cdef double[::1] probs = probs_arr
    cdef Py_ssize_t i
    cdef i64 digit = 0, c = 0
    cdef cplx a
    with nogil:
        for i in range(amps.shape[0]):
            a = amps[i]
            probs[digit] += a.real * a.real + a.imag * a.imag
            _step(&c, &digit, s, d)
    return probs_arr


def project(cplx[::1] amps, i64 s, i64 d, i64 outcome):
    cdef Py_ssize_t i
    cdef i64 digit = 0, c = 0
    cdef double total = 0.0
    cdef cplx a
    with nogil:
        for i in range(amps.shape[0]):
            if digit != outcome:
                amps[i] = 0
            else:
                a = amps[i]
                total += a.real * a.real + a.imag * a.imag
            _step(&c, &digit, s, d)
    return total
