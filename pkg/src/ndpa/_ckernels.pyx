# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the loops in ``_kernels_py``."""
import numpy as np
cimport numpy as cnp

cnp.import_array()


def laguerre_recurrence(int n, double alpha, x):
    cdef double[::1] xs = np.ascontiguousarray(x, dtype=np.float64).ravel()
    cdef Py_ssize_t size = xs.shape[0], p
    cdef int j
    cdef double a, b, inv
    out_arr = np.ones(size, dtype=np.float64)
    if n == 0:
        return out_arr.reshape(np.shape(x))
    prev_arr = np.ones(size, dtype=np.float64)
    cdef double[::1] cur = out_arr
    cdef double[::1] prev = prev_arr
    cdef double nxt
    for p in range(size):
        cur[p] = 1.0 + alpha - xs[p]
    # degree-outer loop keeps the inner loop free of dependencies
    for j in range(1, n):
        inv = 1.0 / (j + 1)
        a = (2 * j + 1 + alpha) * inv
        b = (j + alpha) * inv
        for p in range(size):
            nxt = (a - xs[p] * inv) * cur[p] - b * prev[p]
            prev[p] = cur[p]
            cur[p] = nxt
    return out_arr.reshape(np.shape(x))


cdef inline void _apply_h(double complex[::1] x, double complex[::1] y,
                          double[::1] k0, double[::1] kp,
                          double w, double s, double complex c) noexcept nogil:
    cdef Py_ssize_t d = x.shape[0], i
    cdef double complex cc = c.conjugate()
    cdef double complex acc
    for i in range(d):
        acc = (w * k0[i] + s) * x[i]
        if i > 0:
            acc = acc + c * kp[i - 1] * x[i - 1]
        if i < d - 1:
            acc = acc + cc * kp[i] * x[i + 1]
        y[i] = -1j * acc


def rk4_tridiag(psi0, k0, kp, omega, shift, coupling, double dt, int record_every):
    cdef double complex[::1] psi = np.array(psi0, dtype=np.complex128)
    cdef double[::1] k0v = np.ascontiguousarray(k0, dtype=np.float64)
    cdef double[::1] kpv = np.ascontiguousarray(kp, dtype=np.float64)
    cdef double[::1] om = np.ascontiguousarray(omega, dtype=np.float64)
    cdef double[::1] sh = np.ascontiguousarray(shift, dtype=np.float64)
    cdef double complex[::1] cp = np.ascontiguousarray(coupling, dtype=np.complex128)
    cdef Py_ssize_t d = psi.shape[0], i, q, j
    cdef Py_ssize_t steps = (om.shape[0] - 1) // 2
    if record_every < 1:
        raise ValueError("record_every must be positive")
    if kpv.shape[0] != d - 1 or k0v.shape[0] != d:
        raise ValueError("k0 and kp must have lengths dim and dim - 1")
    if sh.shape[0] != om.shape[0] or cp.shape[0] != om.shape[0] or om.shape[0] % 2 == 0:
        raise ValueError("coefficient arrays must share an odd length 2*steps + 1")
    rec_arr = np.arange(0, steps + 1, record_every, dtype=np.int64)
    if rec_arr[rec_arr.shape[0] - 1] != steps:
        rec_arr = np.append(rec_arr, np.int64(steps))
    cdef cnp.int64_t[::1] recv = rec_arr
    cdef Py_ssize_t nrec = recv.shape[0], slot = 1
    out_arr = np.empty((nrec, d), dtype=np.complex128)
    cdef double complex[:, ::1] out = out_arr
    cdef double complex[::1] k1 = np.empty(d, dtype=np.complex128)
    cdef double complex[::1] k2 = np.empty(d, dtype=np.complex128)
    cdef double complex[::1] k3 = np.empty(d, dtype=np.complex128)
    cdef double complex[::1] k4 = np.empty(d, dtype=np.complex128)
    cdef double complex[::1] tmp = np.empty(d, dtype=np.complex128)
    cdef double half = 0.5 * dt, sixth = dt / 6.0
    for q in range(d):
        out[0, q] = psi[q]
    with nogil:
        for i in range(steps):
            j = 2 * i
            _apply_h(psi, k1, k0v, kpv, om[j], sh[j], cp[j])
            for q in range(d):
                tmp[q] = psi[q] + half * k1[q]
            _apply_h(tmp, k2, k0v, kpv, om[j + 1], sh[j + 1], cp[j + 1])
            for q in range(d):
                tmp[q] = psi[q] + half * k2[q]
            _apply_h(tmp, k3, k0v, kpv, om[j + 1], sh[j + 1], cp[j + 1])
            for q in range(d):
                tmp[q] = psi[q] + dt * k3[q]
            _apply_h(tmp, k4, k0v, kpv, om[j + 2], sh[j + 2], cp[j + 2])
            for q in range(d):
                psi[q] = psi[q] + sixth * (k1[q] + 2.0 * k2[q] + 2.0 * k3[q] + k4[q])
            if slot < nrec and recv[slot] == i + 1:
                for q in range(d):
                    out[slot, q] = psi[q]
                slot += 1
    return np.asarray(recv), out_arr
