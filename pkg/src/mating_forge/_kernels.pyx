# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch kernels; see ``_kernels_py`` for the reference semantics."""
import numpy as np
cimport numpy as cnp
from libc.math cimport log, ldexp, sqrt, isfinite, NAN
from libc.stdlib cimport malloc, free

cnp.import_array()

cdef double BIG = 1e8

cdef extern from "complex.h" nogil:
    double cabs(double complex)
    double complex csqrt(double complex)
    double complex conj(double complex)
    double creal(double complex)
    double cimag(double complex)


def green_batch(double complex c, z, double esc, int max_iter):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] zz = np.ascontiguousarray(np.asarray(z, dtype=np.complex128).ravel())
    cdef Py_ssize_t n = zz.shape[0], i
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.zeros(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.int8_t, ndim=1] bounded = np.zeros(n, dtype=np.int8)
    cdef double complex w
    cdef int k
    with nogil:
        for i in range(n):
            w = zz[i]
            k = 0
            while cabs(w) <= esc and k < max_iter:
                w = w * w + c
                k += 1
            if cabs(w) <= esc:
                bounded[i] = 1
                continue
            while cabs(w) < BIG:
                w = w * w + c
                k += 1
            out[i] = ldexp(log(cabs(w)) + 0.5 * log(cabs(1.0 + c / (w * w))), -k)
    return out, bounded


def boettcher_batch(double complex c, z, double esc, int max_iter):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] zz = np.ascontiguousarray(np.asarray(z, dtype=np.complex128).ravel())
    cdef Py_ssize_t n = zz.shape[0], i
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(n, dtype=np.complex128)
    cdef cnp.ndarray[cnp.int8_t, ndim=1] status = np.zeros(n, dtype=np.int8)
    cdef int cap = max_iter + 64
    cdef double complex *orb = <double complex *> malloc((cap + 1) * sizeof(double complex))
    cdef double complex w, r
    cdef int k, m
    cdef bint esc_seen
    if orb == NULL:
        raise MemoryError()
    try:
        with nogil:
            for i in range(n):
                w = zz[i]
                orb[0] = w
                m = 0
                esc_seen = cabs(w) > esc
                while cabs(w) < BIG and m < cap:
                    if m >= max_iter and not esc_seen:
                        break
                    w = w * w + c
                    m += 1
                    orb[m] = w
                    if cabs(w) > esc:
                        esc_seen = True
                if cabs(w) < BIG:
                    status[i] = 1
                    out[i] = NAN
                    continue
                for k in range(m - 1, -1, -1):
                    r = csqrt(w)
                    if creal(r * conj(orb[k])) < 0:
                        r = -r
                    w = r
                out[i] = w
    finally:
        free(orb)
    return out, status


cdef inline void _xyz(double complex z, bint at_inf, double *p) nogil:
    cdef double x, y, r2, s
    if at_inf:
        p[0] = 0.0
        p[1] = 0.0
        p[2] = 1.0
        return
    x = creal(z)
    y = cimag(z)
    r2 = x * x + y * y
    s = 1.0 + r2
    p[0] = 2 * x / s
    p[1] = 2 * y / s
    p[2] = (r2 - 1.0) / s


cdef inline double _mindist(double *p, double[:, :] t) nogil:
    cdef Py_ssize_t j
    cdef double best = 1e300, d, dx, dy, dz
    for j in range(t.shape[0]):
        dx = p[0] - t[j, 0]
        dy = p[1] - t[j, 1]
        dz = p[2] - t[j, 2]
        d = sqrt(dx * dx + dy * dy + dz * dz)
        if d < best:
            best = d
    return best


def render_labels(coeffs, z, white, black, int max_iter, double tol):
    cdef double complex a = complex(coeffs[0]), b = complex(coeffs[1]), g = complex(coeffs[2]), d = complex(coeffs[3])
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] zz = np.ascontiguousarray(np.asarray(z, dtype=np.complex128).ravel())
    cdef double[:, :] wt = np.ascontiguousarray(np.asarray(white, dtype=np.float64).reshape(-1, 3))
    cdef double[:, :] bt = np.ascontiguousarray(np.asarray(black, dtype=np.float64).reshape(-1, 3))
    cdef Py_ssize_t n = zz.shape[0], i
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] labels = np.zeros(n, dtype=np.uint8)
    cdef double p[3]
    cdef double complex w, u, num, den, q
    cdef bint at_inf
    cdef int it
    with nogil:
        for i in range(n):
            w = zz[i]
            at_inf = False
            for it in range(max_iter + 1):
                _xyz(w, at_inf, p)
                if wt.shape[0] > 0 and _mindist(p, wt) < tol:
                    labels[i] = 1
                    break
                if bt.shape[0] > 0 and _mindist(p, bt) < tol:
                    labels[i] = 2
                    break
                if it == max_iter:
                    break
                if at_inf:
                    num = a
                    den = g
                else:
                    u = w * w
                    num = a * u + b
                    den = g * u + d
                if den == 0:
                    at_inf = True
                    w = 0
                    continue
                q = num / den
                if not (isfinite(creal(q)) and isfinite(cimag(q))) or cabs(q) > 1e150:
                    at_inf = True
                    w = 0
                else:
                    at_inf = False
                    w = q
    return labels
