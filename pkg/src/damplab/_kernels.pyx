# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
# cython: initializedcheck=False
# cython: cdivision=True
"""Compiled hot kernels for 4x4 complex density-matrix work.

Mirrors the API of damplab._kernels_py exactly; the two must stay
interchangeable (tests/test_kernels.py enforces parity).
"""

from libc.math cimport sqrt

import numpy as np

BACKEND_NAME = "cython"


cdef inline double _cabs(double complex z) noexcept nogil:
    return sqrt(z.real * z.real + z.imag * z.imag)


cdef inline double complex _conj(double complex z) noexcept nogil:
    return z.real - 1j * z.imag


cdef void _step(const double complex[:, :, :] ops, double complex src[4][4],
                double complex dst[4][4]) noexcept nogil:
    # dst = sum_k K_k src K_k^dagger
    cdef Py_ssize_t k, i, j, a
    cdef Py_ssize_t nk = ops.shape[0]
    cdef double complex work[4][4]
    cdef double complex acc
    for i in range(4):
        for j in range(4):
            dst[i][j] = 0
    for k in range(nk):
        for i in range(4):
            for j in range(4):
                acc = 0
                for a in range(4):
                    acc = acc + ops[k, i, a] * src[a][j]
                work[i][j] = acc
        for i in range(4):
            for j in range(4):
                acc = 0
                for a in range(4):
                    acc = acc + work[i][a] * _conj(ops[k, j, a])
                dst[i][j] = dst[i][j] + acc


cdef void _eig4(const double complex src[4][4], double w[4]) noexcept nogil:
    # Eigenvalues of the Hermitian part of src via cyclic Jacobi rotations.
    # Deterministic: fixed pair order (0,1),(0,2),(0,3),(1,2),(1,3),(2,3),
    # fixed sweep cap, scale-relative stopping threshold.
    cdef double complex a[4][4]
    cdef double complex phase, tp, tq
    cdef Py_ssize_t i, j, k, p, q, sweep
    cdef double scale, off, mag, tau, t, c, s, thresh, tmp

    for i in range(4):
        for j in range(4):
            a[i][j] = 0.5 * (src[i][j] + _conj(src[j][i]))

    scale = 0
    for i in range(4):
        for j in range(4):
            mag = _cabs(a[i][j])
            if mag > scale:
                scale = mag
    if scale == 0:
        for i in range(4):
            w[i] = 0
        return
    thresh = 5e-16 * scale

    for sweep in range(64):
        off = 0
        for p in range(3):
            for q in range(p + 1, 4):
                mag = _cabs(a[p][q])
                if mag > off:
                    off = mag
        if off <= thresh:
            break
        for p in range(3):
            for q in range(p + 1, 4):
                mag = _cabs(a[p][q])
                if mag <= 1e-300:
                    continue
                phase = a[p][q] / mag
                tau = (a[q][q].real - a[p][p].real) / (2.0 * mag)
                if tau >= 0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                for k in range(4):
                    tp = a[k][p] * c - a[k][q] * s * _conj(phase)
                    tq = a[k][p] * s * phase + a[k][q] * c
                    a[k][p] = tp
                    a[k][q] = tq
                for k in range(4):
                    tp = a[p][k] * c - a[q][k] * s * phase
                    tq = a[p][k] * s * _conj(phase) + a[q][k] * c
                    a[p][k] = tp
                    a[q][k] = tq

    for i in range(4):
        w[i] = a[i][i].real
    for i in range(1, 4):
        tmp = w[i]
        j = i
        while j > 0 and w[j - 1] > tmp:
            w[j] = w[j - 1]
            j -= 1
        w[j] = tmp


cdef void _load(const double complex[:, :] m, double complex buf[4][4]) noexcept nogil:
    cdef Py_ssize_t i, j
    for i in range(4):
        for j in range(4):
            buf[i][j] = m[i, j]


def apply_kraus4(const double complex[:, :] rho, const double complex[:, :, :] ops):
    """One operator-sum step on a 4x4 matrix: sum_k K_k rho K_k^dagger."""
    out_arr = np.empty((4, 4), dtype=np.complex128)
    cdef double complex[:, :] out = out_arr
    cdef double complex src[4][4]
    cdef double complex dst[4][4]
    cdef Py_ssize_t i, j
    _load(rho, src)
    _step(ops, src, dst)
    for i in range(4):
        for j in range(4):
            out[i, j] = dst[i][j]
    return out_arr


def trajectory4(const double complex[:, :] rho, const double complex[:, :, :] ops,
                Py_ssize_t n):
    """All intermediate states of n repeated steps: array (n+1, 4, 4), entry 0 = rho."""
    out_arr = np.empty((n + 1, 4, 4), dtype=np.complex128)
    cdef double complex[:, :, :] out = out_arr
    cdef double complex a[4][4]
    cdef double complex b[4][4]
    cdef Py_ssize_t step, i, j
    _load(rho, a)
    for i in range(4):
        for j in range(4):
            out[0, i, j] = a[i][j]
    for step in range(n):
        if step % 2 == 0:
            _step(ops, a, b)
            for i in range(4):
                for j in range(4):
                    out[step + 1, i, j] = b[i][j]
        else:
            _step(ops, b, a)
            for i in range(4):
                for j in range(4):
                    out[step + 1, i, j] = a[i][j]
    return out_arr


def eigvalsh4(const double complex[:, :] h):
    """Ascending eigenvalues of the Hermitian part of a 4x4 matrix."""
    out_arr = np.empty(4, dtype=np.float64)
    cdef double[:] out = out_arr
    cdef double complex buf[4][4]
    cdef double w[4]
    cdef Py_ssize_t i
    _load(h, buf)
    _eig4(buf, w)
    for i in range(4):
        out[i] = w[i]
    return out_arr


def completeness_residual(const double complex[:, :, :] ops):
    """max entry of |sum_k K_k^dagger K_k - I| for a set of 4x4 operators."""
    cdef double complex acc[4][4]
    cdef double complex v
    cdef Py_ssize_t k, i, j, a
    cdef Py_ssize_t nk = ops.shape[0]
    cdef double worst = 0, mag
    for i in range(4):
        for j in range(4):
            acc[i][j] = 0
    for k in range(nk):
        for i in range(4):
            for j in range(4):
                v = 0
                for a in range(4):
                    v = v + _conj(ops[k, a, i]) * ops[k, a, j]
                acc[i][j] = acc[i][j] + v
    for i in range(4):
        for j in range(4):
            v = acc[i][j]
            if i == j:
                v = v - 1.0
            mag = _cabs(v)
            if mag > worst:
                worst = mag
    return worst
